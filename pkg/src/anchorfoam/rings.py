"""Exact sparse multivariate polynomial arithmetic over Z and F2.

Polynomials are stored as dicts from exponent tuples to nonzero integer
coefficients.  Every variable has degree 2, so deg(monomial) = 2 * sum(exps).
The monomial order is graded lexicographic in the ring's variable order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import NonExactDivision, NonIntegral

INT = "int"
GF2 = "gf2"


@dataclass(frozen=True)
class RingSpec:
    """A polynomial ring: named variables over Z ('int') or F2 ('gf2')."""

    variables: tuple
    domain: str = INT

    def __post_init__(self):
        # 2 or 3 variables for the foam rings; 1 can arise from partial
        # specialization of a larger ring.
        if not 1 <= len(self.variables) <= 3:
            raise ValueError("expected 1 to 3 variables")
        if self.domain not in (INT, GF2):
            raise ValueError("domain must be 'int' or 'gf2'")

    @property
    def nvars(self):
        return len(self.variables)

    def normalize_coeff(self, c):
        return c % 2 if self.domain == GF2 else c

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {(0,) * self.nvars: 1})

    def const(self, c):
        c = self.normalize_coeff(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, i):
        """Generator x_i, 1-based."""
        exps = [0] * self.nvars
        exps[i - 1] = 1
        return Poly(self, {tuple(exps): 1})

    def monomial(self, exps, coeff=1):
        coeff = self.normalize_coeff(coeff)
        return Poly(self, {tuple(exps): coeff} if coeff else {})

    def linear_form(self, i, j):
        """x_i - x_j (1-based; over F2 this is x_i + x_j)."""
        sign = self.normalize_coeff(-1)
        return self.var(i) + self.monomial(self.var(j).leading_monomial(), sign)

    def elementary_symmetric(self, k):
        """E_k over this ring's variables."""
        n = self.nvars
        if k < 0 or k > n:
            raise ValueError("bad symmetric degree")
        p = self.zero()
        for subset in combinations(range(n), k):
            exps = [0] * n
            for s in subset:
                exps[s] = 1
            p = p + self.monomial(exps)
        return p


RING_SL2 = RingSpec(("a1", "a2"), INT)
RING_SL3_Z = RingSpec(("x1", "x2", "x3"), INT)
RING_SL3_F2 = RingSpec(("x1", "x2", "x3"), GF2)


def _grlex_key(exps):
    return (sum(exps), exps)


class Poly:
    """Immutable sparse polynomial; arithmetic returns new objects."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        norm = {}
        for exps, c in terms.items():
            c = ring.normalize_coeff(c)
            if c:
                norm[exps] = c
        self.ring = ring
        self.terms = norm
        self._hash = None

    # -- basic protocol ------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.const(other)
        return (
            isinstance(other, Poly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, int):
            return self.ring.const(other)
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("mixed rings")
            return other
        return NotImplemented

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exps, c in other.terms.items():
            out[exps] = out.get(exps, 0) + c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self.ring.const(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure queries ----------------------------------------------

    def leading_monomial(self):
        if not self.terms:
            return None
        return max(self.terms, key=_grlex_key)

    def degree(self):
        """Degree with deg(variable) = 2; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(2 * sum(e) for e in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {sum(e) for e in self.terms}
        return len(degs) == 1

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def permuted(self, sigma):
        """Apply x_i -> x_{sigma(i)} for a permutation dict/map on 1..n."""
        n = self.ring.nvars
        out = {}
        for exps, c in self.terms.items():
            new = [0] * n
            for i in range(n):
                new[sigma[i + 1] - 1] = exps[i]
            key = tuple(new)
            out[key] = out.get(key, 0) + c
        return Poly(self.ring, out)

    def is_symmetric(self):
        n = self.ring.nvars
        for a in range(1, n):
            sigma = {i: i for i in range(1, n + 1)}
            sigma[a], sigma[a + 1] = a + 1, a
            if self.permuted(sigma) != self:
                return False
        return True

    # -- output ----------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def text(self):
        """Canonical text form, graded-lex descending, e.g. '-x1^2*x2 + x3^3'."""
        if not self.terms:
            return "0"
        chunks = []
        for k, (exps, c) in enumerate(self.sorted_terms()):
            factors = []
            for name, e in zip(self.ring.variables, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append("%s^%d" % (name, e))
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if k == 0:
                chunks.append(("-" if c < 0 else "") + body)
            else:
                chunks.append((" - " if c < 0 else " + ") + body)
        return "".join(chunks)

    def to_json(self):
        return [{"coeff": c, "exps": list(e)} for e, c in self.sorted_terms()]

    def __repr__(self):
        return "Poly(%s)" % self.text()


def poly_from_json(ring, data):
    terms = {}
    for item in data:
        exps = tuple(item["exps"])
        terms[exps] = terms.get(exps, 0) + item["coeff"]
    return Poly(ring, terms)


def exact_divide(num, den):
    """Return q with q * den == num; raise NonExactDivision otherwise."""
    if num.ring != den.ring:
        raise ValueError("mixed rings")
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = num.ring
    lm_d = den.leading_monomial()
    lc_d = den.terms[lm_d]
    rem = dict(num.terms)
    quo = {}
    while rem:
        lm = max(rem, key=_grlex_key)
        lc = rem[lm]
        qexps = tuple(a - b for a, b in zip(lm, lm_d))
        if any(e < 0 for e in qexps):
            raise NonExactDivision("leading monomial not divisible")
        if ring.domain == GF2:
            qc = lc  # lc_d == 1 in F2
        else:
            if lc % lc_d:
                raise NonExactDivision("leading coefficient not divisible")
            qc = lc // lc_d
        quo[qexps] = quo.get(qexps, 0) + qc
        for e, c in den.terms.items():
            key = tuple(a + b for a, b in zip(qexps, e))
            v = rem.get(key, 0) - ring.normalize_coeff(qc * c)
            v = ring.normalize_coeff(v)
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return Poly(ring, quo)


@dataclass(frozen=True)
class FactoredTerm:
    """sign * prod v_i^dots[i] * prod_{i<j} (v_i - v_j)^pair_exps[(i,j)].

    Pair exponents may be negative (denominators).  Over F2 the sign is
    always +1 and the linear forms read v_i + v_j.
    """

    sign: int
    dots: tuple
    pairs: tuple  # sorted tuple of ((i, j), exponent) with i < j

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @staticmethod
    def make(sign, dots, pair_exps):
        pairs = tuple(sorted((tuple(k), v) for k, v in pair_exps.items() if v))
        for (i, j), _ in pairs:
            if not i < j:
                raise ValueError("pairs must be sorted (i < j)")
        return FactoredTerm(1 if sign >= 0 else -1, tuple(dots), pairs)

    def pair_exp(self, i, j):
        return dict(self.pairs).get((i, j), 0)

    def total_degree(self):
        return 2 * (sum(self.dots) + sum(v for _, v in self.pairs))


def sum_factored(terms, ring):
    """Sum a list of FactoredTerms into a Poly, clearing denominators.

    Expands over the least common denominator of the linear forms and
    performs one exact division; raises NonIntegral when the sum is not
    divisible, which for foam evaluations signals an invalid encoding.
    """
    terms = list(terms)
    if not terms:
        return ring.zero()
    n = ring.nvars
    for t in terms:
        if len(t.dots) != n:
            raise ValueError("dot vector length mismatch")
    all_pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    mins = {}
    for p in all_pairs:
        m = min(t.pair_exp(*p) for t in terms)
        mins[p] = min(m, 0)
    forms = {p: ring.linear_form(*p) for p in all_pairs}
    numerator = ring.zero()
    for t in terms:
        piece = ring.monomial(t.dots, t.sign)
        for p in all_pairs:
            e = t.pair_exp(*p) - mins[p]
            if e:
                piece = piece * forms[p] ** e
        numerator = numerator + piece
    denominator = ring.one()
    for p in all_pairs:
        if mins[p]:
            denominator = denominator * forms[p] ** (-mins[p])
    if denominator == ring.one():
        return numerator
    try:
        return exact_divide(numerator, denominator)
    except NonExactDivision as exc:
        raise NonIntegral("factored sum is not a polynomial") from exc


def specialize(p, assignment):
    """Substitute values for a subset of variables.

    A full assignment yields a scalar (int, or Fraction if any value is
    one); a partial assignment with integer values yields a Poly in the
    remaining variables.
    """
    ring = p.ring
    idx = {}
    for name, val in assignment.items():
        if name not in ring.variables:
            raise ValueError("unknown variable %r" % name)
        idx[ring.variables.index(name)] = val
    remaining = [i for i in range(ring.nvars) if i not in idx]
    if not remaining:
        total = 0
        for exps, c in p.terms.items():
            v = c
            for i, e in enumerate(exps):
                v *= idx[i] ** e
            total += v
        if ring.domain == GF2:
            if isinstance(total, Fraction):
                raise ValueError("rational specialization over F2")
            total %= 2
        return total
    if any(isinstance(v, Fraction) for v in idx.values()):
        raise ValueError("partial specialization requires integer values")
    sub = RingSpec(tuple(ring.variables[i] for i in remaining), ring.domain)
    out = {}
    for exps, c in p.terms.items():
        v = c
        for i, val in idx.items():
            v *= val ** exps[i]
        key = tuple(exps[i] for i in remaining)
        out[key] = out.get(key, 0) + v
    return Poly(sub, out)
