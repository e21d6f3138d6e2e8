"""Smith normal form, fraction-free rank, kernels, exact solves."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anchorfoam.linalg import (
    Matrix,
    det_bareiss,
    kernel_basis,
    rank_certificate,
    rank_over_fraction_field,
    smith_normal_form,
    solve_fraction_free,
)
from anchorfoam.rings import RING_SL2, RING_SL3_Z, specialize


def fraction_rank(rows):
    """Independent rank oracle: plain Gaussian elimination over Q."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    rank = 0
    r = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        rank += 1
    return rank


def check_snf(rows):
    m = Matrix.make(rows)
    diag, left, right = smith_normal_form(m)
    d = left.mul(m).mul(right)
    for i in range(m.nrows):
        for j in range(m.ncols):
            expect = diag[i] if i == j and i < len(diag) else 0
            assert d[i, j] == expect
    for i in range(len(diag) - 1):
        if diag[i]:
            assert diag[i + 1] % diag[i] == 0
        else:
            assert diag[i + 1] == 0
    assert abs(det_bareiss(left)) == 1
    assert abs(det_bareiss(right)) == 1
    return diag


class TestSmithNormalForm:
    def test_coprime_diagonal(self):
        assert check_snf([[2, 0], [0, 3]]) == [1, 6]

    def test_zero_matrix(self):
        assert check_snf([[0, 0], [0, 0]]) == [0, 0]

    def test_two_by_two(self):
        # derived: d1 = gcd of entries = 2; d1*d2 = |det| = 8
        diag = check_snf([[2, 4], [6, 8]])
        assert diag == [2, 4]

    def test_rectangular(self):
        assert check_snf([[1, 2, 3], [4, 5, 6]]) == [1, 3]

    def test_torsion(self):
        assert check_snf([[2, 0], [0, 2]]) == [2, 2]

    @given(
        st.lists(
            st.lists(st.integers(-30, 30), min_size=1, max_size=4),
            min_size=1,
            max_size=4,
        ).filter(lambda rows: len({len(r) for r in rows}) == 1)
    )
    @settings(max_examples=120, deadline=None)
    def test_random_matrices(self, rows):
        diag = check_snf(rows)
        nonzero = [x for x in diag if x]
        assert len(nonzero) == fraction_rank(rows)
        if nonzero:
            assert nonzero[0] == _gcd_all(rows)


def _gcd_all(rows):
    from math import gcd

    g = 0
    for r in rows:
        for x in r:
            g = gcd(g, abs(x))
    return g


def poly_matrix(ring, rows):
    conv = []
    for r in rows:
        conv.append([x if not isinstance(x, int) else ring.const(x) for x in r])
    return Matrix.make(conv)


class TestSymbolicRank:
    def test_contractible_gram(self):
        r = RING_SL2
        e1 = r.elementary_symmetric(1)
        m = poly_matrix(r, [[0, 1], [1, e1]])
        assert rank_over_fraction_field(m) == 2

    def test_identity(self):
        r = RING_SL2
        m = poly_matrix(r, [[1, 0], [0, 1]])
        assert rank_over_fraction_field(m) == 2

    def test_rank_one_with_kernel(self):
        r = RING_SL3_Z
        f = r.var(1) - r.var(2)
        m = Matrix.make([[f, f], [f, f]])
        assert rank_over_fraction_field(m) == 1
        basis = kernel_basis(m)
        assert len(basis) == 1
        one = r.one()
        assert basis[0] == [one, -one]

    def test_kernel_solves(self):
        r = RING_SL2
        a1, a2 = r.var(1), r.var(2)
        m = Matrix.make([[a1, a2, a1 + a2]])
        for vec in kernel_basis(m):
            img = m.mul(Matrix.make([[v] for v in vec]))
            assert all(img[i, 0].is_zero() for i in range(1))

    def test_rank_matches_good_specialization(self):
        # rank at a specialization avoiding the pivots' zero set equals the
        # symbolic rank (checked for every matrix in this small family)
        r = RING_SL2
        a1, a2 = r.var(1), r.var(2)
        mats = [
            [[a1, a2], [a2, a1]],
            [[a1 - a2, a1 - a2], [a1 - a2, a1 - a2]],
            [[a1, a1 * a2], [a2, a1 * a2]],
            [[r.one(), a1], [a2, a1 * a2]],
        ]
        for rows in mats:
            m = Matrix.make(rows)
            rank, pivots = rank_certificate(m)
            for a, b in [(2, 3), (5, 7), (11, 13)]:
                if all(
                    specialize(p, {"a1": a, "a2": b}) != 0 for p in pivots
                ):
                    spec = [
                        [specialize(x, {"a1": a, "a2": b}) for x in row]
                        for row in rows
                    ]
                    assert fraction_rank(spec) == rank
                    break
            else:
                pytest.fail("no good specialization found")


class TestSolve:
    def test_exact_solve(self):
        r = RING_SL2
        e1 = r.elementary_symmetric(1)
        g = poly_matrix(r, [[0, 1], [1, e1]])
        rhs = [r.one(), r.var(1)]
        x = solve_fraction_free(g, rhs)
        img = g.mul(Matrix.make([[v] for v in x]))
        assert img[0, 0] == rhs[0] and img[1, 0] == rhs[1]

    def test_det(self):
        assert det_bareiss(Matrix.make([[2, 4], [6, 8]])) == -8
        r = RING_SL2
        m = poly_matrix(r, [[0, 1], [1, r.elementary_symmetric(1)]])
        assert det_bareiss(m) == r.const(-1)
