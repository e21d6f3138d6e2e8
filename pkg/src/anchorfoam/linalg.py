"""Exact linear algebra: Smith normal form over Z, fraction-free rank,
kernels and linear solves over polynomial fraction fields."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NonExactDivision, NonIntegral
from .rings import Poly, exact_divide, specialize


@dataclass(frozen=True)
class Matrix:
    """Dense rectangular matrix with int or Poly entries."""

    rows: tuple
    nrows: int
    ncols: int

    @staticmethod
    def make(rows):
        rows = tuple(tuple(r) for r in rows)
        if not rows:
            return Matrix((), 0, 0)
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return Matrix(rows, len(rows), ncols)

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def mul(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = None
                for k in range(self.ncols):
                    term = self.rows[i][k] * other.rows[k][j]
                    acc = term if acc is None else acc + term
                row.append(acc)
            out.append(row)
        return Matrix.make(out)

    def transpose(self):
        return Matrix.make(list(zip(*self.rows)))


# Type aliases used in signatures; both are plain Matrix instances.
IntMatrix = Matrix
PolyMatrix = Matrix


def _xgcd(a, b):
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def smith_normal_form(m):
    """Diagonalize an integer matrix: returns (diag, L, R) with L*M*R = D.

    The diagonal satisfies d1 | d2 | ... with nonnegative entries; L and R
    are unimodular.  diag has length min(nrows, ncols), padded with zeros.
    """
    rows, cols = m.nrows, m.ncols
    d = [list(r) for r in m.rows]
    left = [[int(i == j) for j in range(rows)] for i in range(rows)]
    right = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_combine(i1, i2, a, b, c, e):
        # (row i1, row i2) <- (a*r1 + b*r2, c*r1 + e*r2); ad - bc = +-1
        for mat in (d, left):
            r1, r2 = mat[i1], mat[i2]
            for k in range(len(r1)):
                r1[k], r2[k] = a * r1[k] + b * r2[k], c * r1[k] + e * r2[k]

    def col_combine(j1, j2, a, b, c, e):
        for mat in (d, right):
            for r in mat:
                r[j1], r[j2] = a * r[j1] + b * r[j2], c * r[j1] + e * r[j2]

    def clear_position(t):
        # repeat row/col clearing until column t and row t are zero off-pivot
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    a, b = d[t][t], d[i][t]
                    if a and b % a == 0:
                        row_combine(t, i, 1, 0, -(b // a), 1)
                    else:
                        x, y, g = _xgcd(a, b)
                        row_combine(t, i, x, y, -(b // g), a // g)
                    dirty = True
            for j in range(t + 1, cols):
                if d[t][j]:
                    a, b = d[t][t], d[t][j]
                    if a and b % a == 0:
                        col_combine(t, j, 1, 0, -(b // a), 1)
                    else:
                        x, y, g = _xgcd(a, b)
                        col_combine(t, j, x, y, -(b // g), a // g)
                    dirty = True
            if not dirty:
                return

    t = 0
    size = min(rows, cols)
    while t < size:
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] and (best is None or abs(d[i][j]) < best):
                    best = abs(d[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            row_combine(t, pi, 0, 1, -1, 0)
        if pj != t:
            col_combine(t, pj, 0, 1, -1, 0)
        clear_position(t)
        t += 1

    rank = t
    # enforce the divisibility chain by folding later entries into earlier
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            a, b = d[i][i], d[i + 1][i + 1]
            if a and b % a != 0:
                col_combine(i, i + 1, 1, 1, 0, 1)  # col_i += col_{i+1}
                clear_position(i)
                changed = True
    for i in range(rank):
        if d[i][i] < 0:
            for k in range(cols):
                d[i][k] = -d[i][k]
            for k in range(rows):
                left[i][k] = -left[i][k]
    diag = [d[i][i] for i in range(size)]
    return diag, Matrix.make(left), Matrix.make(right)


def det_bareiss(m):
    """Exact determinant by fraction-free elimination (int or Poly entries)."""
    if m.nrows != m.ncols:
        raise ValueError("determinant of non-square matrix")
    n = m.nrows
    if n == 0:
        return 1
    a = [list(r) for r in m.rows]
    is_poly = isinstance(a[0][0], Poly)
    one = a[0][0].ring.one() if is_poly else 1
    prev = one
    sign = 1
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            swap = next((i for i in range(k + 1, n) if not _is_zero(a[i][k])), None)
            if swap is None:
                return one - one if is_poly else 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = _exact_quot(num, prev)
            a[i][k] = one - one if is_poly else 0
        prev = a[k][k]
    result = a[n - 1][n - 1]
    if sign < 0:
        result = -result
    return result


def _is_zero(x):
    return x.is_zero() if isinstance(x, Poly) else x == 0


def _exact_quot(num, den):
    if isinstance(num, Poly):
        if den == num.ring.one():
            return num
        return exact_divide(num, den)
    if den == 1:
        return num
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("non-exact interior division")
    return q


def _bareiss_echelon(m):
    """Fraction-free row echelon form.

    Returns (echelon rows, pivot column list, pivot values); the pivot
    values are the nonzero leading entries after elimination.
    """
    a = [list(r) for r in m.rows]
    rows = len(a)
    cols = m.ncols
    if rows == 0 or cols == 0:
        return a, [], []
    is_poly = isinstance(m.rows[0][0], Poly)
    one = m.rows[0][0].ring.one() if is_poly else 1
    zero = one - one
    prev = one
    piv_cols = []
    piv_vals = []
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, rows) if not _is_zero(a[i][c])), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                num = a[r][c] * a[i][j] - a[i][c] * a[r][j]
                a[i][j] = _exact_quot(num, prev)
            a[i][c] = zero
        prev = a[r][c]
        piv_cols.append(c)
        piv_vals.append(a[r][c])
        r += 1
        if r == rows:
            break
    return a, piv_cols, piv_vals


def _rank_at_specialization(m, values):
    """Rank of a Poly matrix after substituting integers, over Q."""
    ring = None
    for row in m.rows:
        for x in row:
            if isinstance(x, Poly):
                ring = x.ring
                break
        if ring:
            break
    if ring is None:
        return rank_over_fraction_field(m)
    assignment = dict(zip(ring.variables, values))
    rows = []
    for row in m.rows:
        rows.append([Fraction(specialize(x, assignment)) for x in row])
    rank = 0
    ncols = m.ncols
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        rank += 1
        if r == len(rows):
            break
    return rank


def rank_over_fraction_field(m):
    """Rank over the fraction field via fraction-free elimination.

    Cross-checked against two random integer specializations with distinct
    values per variable: a specialized rank can never exceed the symbolic
    one.
    """
    if m.nrows == 0 or m.ncols == 0:
        return 0
    _, piv_cols, _ = _bareiss_echelon(m)
    rank = len(piv_cols)
    if isinstance(m.rows[0][0], Poly):
        ring = m.rows[0][0].ring
        rng = random.Random(0xA5C3)
        for _ in range(2):
            values = rng.sample(range(2, 98), ring.nvars)
            if _rank_at_specialization(m, values) > rank:
                raise ArithmeticError("specialized rank exceeds symbolic rank")
    return rank


def rank_certificate(m):
    """(rank, pivot values): specializations keeping all pivots nonzero
    realize the symbolic rank."""
    _, piv_cols, piv_vals = _bareiss_echelon(m)
    return len(piv_cols), piv_vals


def _content_normalize(vec):
    """Divide a Poly vector by its integer content and common monomial;
    flip sign so the first nonzero entry has positive leading coefficient."""
    ring = vec[0].ring
    nz = [p for p in vec if not p.is_zero()]
    if not nz:
        return vec
    g = 0
    for p in nz:
        for c in p.terms.values():
            g = gcd(g, abs(c))
    mins = [min(e[i] for p in nz for e in p.terms) for i in range(ring.nvars)]
    divisor = ring.const(g)
    for i, e in enumerate(mins):
        divisor = divisor * ring.var(i + 1) ** e
    out = [exact_divide(p, divisor) if not p.is_zero() else p for p in vec]
    first = next(p for p in out if not p.is_zero())
    if first.terms[first.leading_monomial()] < 0:
        out = [-p for p in out]
    return out


def kernel_basis(m):
    """Basis of the right kernel with polynomial entries (cleared
    denominators, content removed)."""
    if m.nrows == 0 or m.ncols == 0:
        return []
    is_poly = isinstance(m.rows[0][0], Poly)
    if not is_poly:
        raise ValueError("kernel_basis expects Poly entries")
    ring = m.rows[0][0].ring
    ech, piv_cols, piv_vals = _bareiss_echelon(m)
    rank = len(piv_cols)
    free_cols = [c for c in range(m.ncols) if c not in piv_cols]
    basis = []
    for f in free_cols:
        # back-substitute in fraction-free style: x[f] = prod of pivots
        x = [ring.zero()] * m.ncols
        x[f] = ring.one()
        for r in range(rank - 1, -1, -1):
            c = piv_cols[r]
            if c > f:
                continue
            acc = ring.zero()
            for j in range(c + 1, m.ncols):
                if not ech[r][j].is_zero() and not x[j].is_zero():
                    acc = acc + ech[r][j] * x[j]
            # solve ech[r][c] * x[c] + acc = 0 over the fraction field:
            # scale the whole vector by ech[r][c] to stay polynomial
            piv = ech[r][c]
            for j in range(m.ncols):
                if j == c:
                    continue
                x[j] = x[j] * piv
            x[c] = -acc
        basis.append(_content_normalize(_strip_pivot_factors(x, piv_vals)))
    return basis


def _strip_pivot_factors(vec, pivots):
    # back-substitution scales by pivots; divide them back out when the
    # whole vector allows it
    for p in pivots:
        if p.degree() in (None, 0):
            continue
        while True:
            try:
                reduced = [
                    exact_divide(x, p) if not x.is_zero() else x for x in vec
                ]
            except NonExactDivision:
                break
            vec = reduced
    return vec


def solve_fraction_free(gram, rhs):
    """Solve gram * x = rhs exactly (Cramer via Bareiss determinants).

    Requires the coordinates to be polynomials; raises NonIntegral when a
    coordinate does not clear the determinant.
    """
    n = gram.nrows
    if gram.ncols != n or len(rhs) != n:
        raise ValueError("shape mismatch")
    det = det_bareiss(gram)
    if _is_zero(det):
        raise ValueError("singular matrix")
    xs = []
    for j in range(n):
        cols = [
            [rhs[i] if k == j else gram.rows[i][k] for k in range(n)]
            for i in range(n)
        ]
        dj = det_bareiss(Matrix.make(cols))
        try:
            xs.append(_exact_quot(dj, det))
        except (NonExactDivision, ArithmeticError) as exc:
            raise NonIntegral("coordinates do not lie in the ground ring") from exc
    return xs
