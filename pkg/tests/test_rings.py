"""Exact polynomial arithmetic: golden examples and properties."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anchorfoam.errors import NonExactDivision, NonIntegral
from anchorfoam.rings import (
    GF2,
    RING_SL2,
    RING_SL3_F2,
    RING_SL3_Z,
    FactoredTerm,
    Poly,
    RingSpec,
    exact_divide,
    poly_from_json,
    specialize,
    sum_factored,
)


def var(ring, i):
    return ring.var(i)


class TestExactDivide:
    def test_difference_of_squares(self):
        r = RING_SL3_Z
        x1, x2 = r.var(1), r.var(2)
        assert exact_divide(x1 * x1 - x2 * x2, x1 - x2) == x1 + x2

    def test_gf2_linear_forms(self):
        r = RING_SL3_F2
        x1, x2, x3 = r.var(1), r.var(2), r.var(3)
        assert exact_divide((x1 + x2) * (x2 + x3), x1 + x2) == x2 + x3

    def test_sl2_difference_of_squares(self):
        r = RING_SL2
        a1, a2 = r.var(1), r.var(2)
        assert exact_divide(a1 * a1 - a2 * a2, a1 + a2) == a1 - a2

    def test_nonexact_raises(self):
        r = RING_SL2
        a1, a2 = r.var(1), r.var(2)
        with pytest.raises(NonExactDivision):
            exact_divide(a1 * a1 + a2, a1 - a2)

    def test_coefficient_divisibility(self):
        r = RING_SL2
        with pytest.raises(NonExactDivision):
            exact_divide(r.var(1), r.const(2))
        assert exact_divide(4 * r.var(1), r.const(2)) == 2 * r.var(1)


@st.composite
def small_polys(draw, ring=RING_SL2, max_terms=4, zero_ok=True):
    n = ring.nvars
    nterms = draw(st.integers(0 if zero_ok else 1, max_terms))
    terms = {}
    for _ in range(nterms):
        exps = tuple(draw(st.integers(0, 3)) for _ in range(n))
        terms[exps] = draw(st.integers(-5, 5))
    p = Poly(ring, terms)
    if not zero_ok and p.is_zero():
        p = p + ring.one()
    return p


class TestDivisionProperties:
    @given(small_polys(), small_polys(zero_ok=False))
    @settings(max_examples=150, deadline=None)
    def test_roundtrip(self, p, q):
        assert exact_divide(p * q, q) == p

    @given(small_polys(RING_SL3_F2), small_polys(RING_SL3_F2, zero_ok=False))
    @settings(max_examples=100, deadline=None)
    def test_roundtrip_gf2(self, p, q):
        assert exact_divide(p * q, q) == p


class TestSumFactored:
    def test_dotted_sphere_three_terms(self):
        # three admissible colorings of a twice-dotted sphere: signs -,+,-
        # with one power of each linear-form denominator pair touching the
        # coloring's own color
        r = RING_SL3_Z
        terms = [
            FactoredTerm.make(-1, (2, 0, 0), {(1, 2): -1, (1, 3): -1}),
            FactoredTerm.make(+1, (0, 2, 0), {(1, 2): -1, (2, 3): -1}),
            FactoredTerm.make(-1, (0, 0, 2), {(1, 3): -1, (2, 3): -1}),
        ]
        assert sum_factored(terms, r) == r.const(-1)

    def test_torus_two_colorings(self):
        r = RING_SL2
        t = FactoredTerm.make(+1, (0, 0), {})
        assert sum_factored([t, t], r) == r.const(2)

    def test_lone_pole_raises(self):
        r = RING_SL3_Z
        t = FactoredTerm.make(+1, (0, 0, 0), {(1, 2): -1})
        with pytest.raises(NonIntegral):
            sum_factored([t], r)

    def test_empty_sum_is_zero(self):
        assert sum_factored([], RING_SL2).is_zero()

    @given(
        st.lists(
            st.tuples(
                st.sampled_from([1, -1]),
                st.tuples(st.integers(0, 2), st.integers(0, 2)),
                st.integers(0, 2),
            ),
            min_size=1,
            max_size=5,
        ),
        st.randoms(),
    )
    @settings(max_examples=100, deadline=None)
    def test_permutation_invariance(self, raw, rng):
        # nonnegative exponents are always summable; order must not matter
        terms = [
            FactoredTerm.make(s, d, {(1, 2): e}) for (s, d, e) in raw
        ]
        shuffled = list(terms)
        rng.shuffle(shuffled)
        assert sum_factored(terms, RING_SL2) == sum_factored(shuffled, RING_SL2)

    @given(
        st.lists(
            st.tuples(st.sampled_from([1, -1]), st.integers(0, 3)),
            min_size=1,
            max_size=5,
        )
    )
    @settings(max_examples=100, deadline=None)
    def test_homogeneity(self, raw):
        # equal total degree in, homogeneous polynomial out
        target = 4
        terms = []
        for s, d in raw:
            e = target - d
            terms.append(FactoredTerm.make(s, (d, 0), {(1, 2): e}))
        out = sum_factored(terms, RING_SL2)
        assert out.is_homogeneous()
        assert out.is_zero() or out.degree() == 2 * target


class TestSpecialize:
    def test_full_assignment(self):
        r = RING_SL2
        a1, a2 = r.var(1), r.var(2)
        p = a1 * a1 + a1 * a2
        assert specialize(p, {"a1": 1, "a2": 2}) == 3

    def test_e1_at_zero(self):
        r = RING_SL2
        e1 = r.elementary_symmetric(1)
        assert specialize(e1, {"a1": 0, "a2": 0}) == 0

    def test_gf2_product(self):
        r = RING_SL3_F2
        p = r.var(1) * r.var(2) * r.var(3)
        assert specialize(p, {"x1": 1, "x2": 1, "x3": 1}) == 1

    def test_partial(self):
        r = RING_SL3_Z
        p = r.var(1) * r.var(2) + r.var(3)
        q = specialize(p, {"x1": 2})
        assert q.ring.variables == ("x2", "x3")
        assert q == 2 * q.ring.var(1) + q.ring.var(2)

    def test_rational_values(self):
        r = RING_SL2
        p = r.var(1) + r.var(2)
        assert specialize(p, {"a1": Fraction(1, 2), "a2": Fraction(1, 3)}) == Fraction(5, 6)


class TestTextAndJson:
    def test_canonical_text(self):
        r = RING_SL3_Z
        x1, x2, x3 = (r.var(i) for i in (1, 2, 3))
        p = x3 ** 3 - x1 * x1 * x2
        assert p.text() == "-x1^2*x2 + x3^3"
        assert r.zero().text() == "0"
        assert (r.one() + r.one()).text() == "2"

    def test_json_roundtrip(self):
        r = RING_SL2
        p = 3 * r.var(1) ** 2 - r.var(2) + r.const(7)
        assert poly_from_json(r, p.to_json()) == p

    def test_symmetry_check(self):
        r = RING_SL3_Z
        assert r.elementary_symmetric(2).is_symmetric()
        assert not r.var(1).is_symmetric()


class TestRingBasics:
    def test_elementary_symmetric(self):
        r = RING_SL3_Z
        x1, x2, x3 = (r.var(i) for i in (1, 2, 3))
        assert r.elementary_symmetric(1) == x1 + x2 + x3
        assert r.elementary_symmetric(2) == x1 * x2 + x1 * x3 + x2 * x3
        assert r.elementary_symmetric(3) == x1 * x2 * x3

    def test_gf2_coefficients_collapse(self):
        r = RingSpec(("x1", "x2"), GF2)
        p = r.var(1) + r.var(1)
        assert p.is_zero()

    def test_permuted(self):
        r = RING_SL3_Z
        p = r.var(1) ** 2 * r.var(2)
        q = p.permuted({1: 2, 2: 3, 3: 1})
        assert q == r.var(2) ** 2 * r.var(3)
