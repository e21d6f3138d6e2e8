"""Acceptance checks: one callable per criterion, shared by the CLI
selftest verb and the test suite.  Each check returns a detail string and
raises on failure."""

from __future__ import annotations

import random
import time
from itertools import product

from .errors import SuiteFailure
from .foams import (
    ORIENTED,
    UNORIENTED,
    admissible_colorings,
    annular_degree,
    evaluate,
    evaluate_oriented,
    evaluate_unoriented,
)
from .generators import (
    closed_surface_foam,
    random_foam,
    random_surface,
    theta_foam,
)
from .homology import BraidWord, build_complex, homology, poincare_items, total_rank
from .linalg import Matrix
from .rings import RING_SL2, RING_SL3_F2, RING_SL3_Z, exact_divide
from .skein import run_suite
from .statespace import (
    SL2,
    cobordism_matrix,
    galpha_matrix,
    gram_matrix,
    standard_generators,
    state_space,
)
from .surfaces import (
    AnchoredSurface,
    CircleConfig,
    Cobordism2,
    Surface2Component,
    bidegree,
    closed_component_surface,
    evaluate_surface,
)


class AcceptanceFailure(AssertionError):
    pass


def _check(ok, message):
    if not ok:
        raise AcceptanceFailure(message)


# -- oracles (independent brute-force constructions) ---------------------------


def complete_homogeneous(ring, degree):
    """Sum of all monomials of the given total degree (brute enumeration)."""
    n = ring.nvars
    total = ring.zero()
    if degree < 0:
        return total
    for exps in product(range(degree + 1), repeat=n):
        if sum(exps) == degree:
            total = total + ring.monomial(exps)
    return total


def schur_bialternant(ring, partition):
    """Schur polynomial via the ratio of alternants (three variables)."""
    delta = (2, 1, 0)
    mu = tuple(p + d for p, d in zip(partition, delta))
    perms = [
        ((1, 2, 3), 1),
        ((2, 3, 1), 1),
        ((3, 1, 2), 1),
        ((2, 1, 3), -1),
        ((1, 3, 2), -1),
        ((3, 2, 1), -1),
    ]

    def alternant(exponents):
        total = ring.zero()
        for perm, sign in perms:
            exps = [0, 0, 0]
            for row, col in enumerate(perm):
                exps[col - 1] = exponents[row]
            total = total + ring.monomial(exps, sign)
        return total

    return exact_divide(alternant(mu), alternant(delta))


# -- criteria -------------------------------------------------------------------


def criterion_1_sl2_golden():
    """Two-color sphere table and the closed genus-family formula."""
    start = time.time()
    r = RING_SL2
    a1, a2 = r.var(1), r.var(2)
    for d in range(5):
        _check(
            evaluate_surface(closed_component_surface(0, d, (2, 2))) == a1 ** d,
            "sphere with labels (2,2) and %d dots" % d,
        )
        _check(
            evaluate_surface(closed_component_surface(0, d, (1, 1))) == a2 ** d,
            "sphere with labels (1,1) and %d dots" % d,
        )
        for labels in ((1, 2), (2, 1)):
            _check(
                evaluate_surface(closed_component_surface(0, d, labels)).is_zero(),
                "mixed-label sphere is nonzero",
            )
    form = r.linear_form(1, 2)
    for g in range(4):
        for d in range(4):
            got = evaluate_surface(closed_component_surface(g, d))
            if g == 0:
                expect = r.zero()
                for s in range(d):  # brute quotient (a1^d - a2^d)/(a1 - a2)
                    expect = expect + a1 ** s * a2 ** (d - 1 - s)
            else:
                expect = (a1 ** d + (-1) ** (g - 1) * a2 ** d) * form ** (g - 1)
            _check(got == expect, "closed genus %d with %d dots" % (g, d))
            for k in range(1, 3):
                got1 = evaluate_surface(
                    closed_component_surface(g, d, (1,) * (2 * k))
                )
                exp1 = a2 ** d * (-form) ** (k + g - 1)
                _check(got1 == exp1, "genus family labels 1 (g=%d)" % g)
                got2 = evaluate_surface(
                    closed_component_surface(g, d, (2,) * (2 * k))
                )
                exp2 = a1 ** d * form ** (k + g - 1)
                _check(got2 == exp2, "genus family labels 2 (g=%d)" % g)
                mixed = evaluate_surface(
                    closed_component_surface(g, d, (1, 2) * k)
                )
                _check(mixed.is_zero(), "mixed genus family not zero")
    elapsed = time.time() - start
    _check(elapsed < 1.0, "golden table took %.2fs" % elapsed)
    return "sphere and genus tables exact (%.2fs)" % elapsed


def criterion_2_sl2_random(count=500, seed=11):
    """Homogeneity and the zero-or-annular-degree-zero disjunction."""
    rng = random.Random(seed)
    for _ in range(count):
        s = random_surface(rng)
        value = evaluate_surface(s)  # NonIntegral would raise here
        qdeg, adeg = bidegree(s)
        if not value.is_zero():
            _check(value.is_homogeneous(), "inhomogeneous evaluation")
            _check(value.degree() == qdeg, "degree differs from -chi+2d+2k")
            _check(adeg == 0, "nonzero evaluation with adeg != 0")
    return "%d random anchored surfaces" % count


def criterion_3_sl2_skein(count=100, seed=5):
    names = (
        "sl2-two-dots",
        "sl2-neck-cutting",
        "sl2-neck-cutting-line",
        "sl2-cup-off-line",
        "sl2-shifted-dots",
    )
    for name in names:
        run_suite(name, count=count, seed=seed)
    return "%d contexts per suite: %s" % (count, ", ".join(names))


def criterion_4_rank_theorem():
    """Rank 2^(n+m), binomial graded rank, exact single-circle Grams."""
    r = RING_SL2
    e1 = r.elementary_symmetric(1)
    cfg = CircleConfig.of("c")
    gram = gram_matrix(standard_generators(cfg, SL2))
    _check(
        gram.rows
        == ((r.zero(), r.one()), (r.one(), e1)),
        "contractible single-circle Gram",
    )
    cfg = CircleConfig.of("e")
    gram = gram_matrix(standard_generators(cfg, SL2))
    _check(
        gram.rows == ((r.one(), r.zero()), (r.zero(), r.one())),
        "essential single-circle Gram",
    )
    checked = 0
    for n in range(5):
        for m in range(5 - n):
            cfg = CircleConfig.of(*(["c"] * n + ["e"] * m))
            result = state_space(cfg, SL2)
            _check(result.rank == 2 ** (n + m), "rank at (n,m)=(%d,%d)" % (n, m))
            expect = {}
            for qs in product((-1, 1), repeat=n):
                for as_ in product((-1, 1), repeat=m):
                    key = (sum(qs), sum(as_))
                    expect[key] = expect.get(key, 0) + 1
            _check(
                result.graded_rank_dict() == expect,
                "graded rank at (n,m)=(%d,%d)" % (n, m),
            )
            checked += 1
    return "%d configurations up to n+m=4" % checked


def _elementary_cases():
    def saddle(c0, c1, bottom, top, others):
        comps = [Surface2Component(bottom=tuple(bottom), top=tuple(top))]
        for b, t in others:
            comps.append(Surface2Component(bottom=(b,), top=(t,)))
        return Cobordism2(tuple(comps), (), c0, c1)

    of = CircleConfig.of
    cases = {
        "A": (of("e", "c"), of("e"), (0, 1), (0,), []),
        "A'": (of("e", "e", "c"), of("e", "e"), (1, 2), (1,), [(0, 0)]),
        "B": (of("e", "e"), of("c"), (0, 1), (0,), []),
        "B'": (of("e", "e", "e"), of("e", "c"), (1, 2), (1,), [(0, 0)]),
        "C": (of("e"), of("e", "c"), (0,), (0, 1), []),
        "C'": (of("e", "e"), of("e", "e", "c"), (1,), (1, 2), [(0, 0)]),
        "D": (of("c"), of("e", "e"), (0,), (0, 1), []),
        "D'": (of("e", "c"), of("e", "e", "e"), (1,), (1, 2), [(0, 0)]),
        "merge": (of("c", "c"), of("c"), (0, 1), (0,), []),
        "split": (of("c"), of("c", "c"), (0,), (0, 1), []),
    }
    return {
        name: (saddle(c0, c1, b, t, o), c0, c1)
        for name, (c0, c1, b, t, o) in cases.items()
    }


def criterion_5_functor_iso():
    """Universal-construction matrices equal the functor formulas."""
    for name, (cob, c0, c1) in _elementary_cases().items():
        universal = cobordism_matrix(cob, c0, c1)
        formula = galpha_matrix(cob, c0, c1)
        _check(universal.rows == formula.rows, "type %s matrices differ" % name)
    return "types A-D, parity variants, contractible merge/split"


def criterion_6_unoriented(count=300, seed=23, suite_count=100):
    r = RING_SL3_F2
    for i in (1, 2, 3):
        j, k = sorted({1, 2, 3} - {i})
        for d in range(4):
            got = evaluate_unoriented(
                closed_surface_foam(UNORIENTED, dots=d, labels=(i, i))
            )
            _check(got == r.var(i) ** d, "unoriented sphere label %d" % i)
        for g in range(3):
            for n in range(1, 3):
                got = evaluate_unoriented(
                    closed_surface_foam(
                        UNORIENTED, genus=g, dots=1, labels=(i,) * (2 * n)
                    )
                )
                expect = r.var(i) * (
                    (r.var(i) + r.var(j)) * (r.var(i) + r.var(k))
                ) ** (n + g - 1)
                _check(got == expect, "unoriented genus family")
    perms = [(1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)]
    for (i, j, k) in perms:
        for dots in ((0, 0, 0), (2, 1, 0), (1, 1, 2)):
            got = evaluate_unoriented(
                theta_foam(UNORIENTED, labels=(i, j, k), dots=dots)
            )
            expect = r.var(i) ** dots[0] * r.var(j) ** dots[1] * r.var(k) ** dots[2]
            _check(got == expect, "anchored pod labels %r" % ((i, j, k),))
    rng = random.Random(seed)
    for _ in range(count):
        foam = random_foam(rng, UNORIENTED)
        value = evaluate_unoriented(foam)  # errors would raise
        if not value.is_zero():
            an = foam.label_counts()
            _check(
                an[1] % 2 == an[2] % 2 == an[3] % 2,
                "nonzero evaluation with non-pre-admissible labels",
            )
    for name in (
        "sl3u-neck-cutting-line",
        "sl3u-dot-relation",
        "sl3u-handle-sum",
        "sl3u-cup-off-line",
        "sl3u-line-past-seam",
    ):
        run_suite(name, count=suite_count, seed=seed)
    return "goldens, %d random foams, five suites x %d" % (count, suite_count)


def criterion_7_oriented(seed=31, equivariance=200, kempe=100, count=300):
    r = RING_SL3_Z
    for d in range(7):
        got = evaluate_oriented(closed_surface_foam(ORIENTED, dots=d))
        _check(
            got == -complete_homogeneous(r, d - 2),
            "oriented sphere with %d dots" % d,
        )
    checked_thetas = 0
    for d1 in range(6):
        for d2 in range(6 - d1):
            for d3 in range(6 - d1 - d2):
                got = evaluate_oriented(
                    theta_foam(ORIENTED, dots=(d1, d2, d3), cyclic="TBM")
                )
                dots = (d1, d2, d3)
                if len(set(dots)) < 3:
                    _check(got.is_zero(), "pod with repeated dots %r" % (dots,))
                else:
                    order = tuple(sorted(dots, reverse=True))
                    # sign of the permutation sorting the dot triple
                    perm = []
                    pool = list(dots)
                    for value in order:
                        idx = pool.index(value)
                        perm.append(idx)
                        pool[idx] = None
                    inversions = sum(
                        1
                        for x in range(3)
                        for y in range(x + 1, 3)
                        if perm[x] > perm[y]
                    )
                    expect = schur_bialternant(
                        r, (order[0] - 2, order[1] - 1, order[2])
                    )
                    if inversions % 2:
                        expect = -expect
                    _check(got == expect, "pod Schur value at %r" % (dots,))
                checked_thetas += 1
    for i in (1, 2, 3):
        for d in range(3):
            got = evaluate_oriented(
                closed_surface_foam(ORIENTED, dots=d, labels=(i, i))
            )
            _check(
                got == (-1) ** i * r.var(i) ** d,
                "anchored oriented sphere label %d" % i,
            )
    run_suite("sl3o-equivariance", count=equivariance, seed=seed)
    run_suite("sl3o-kempe", count=kempe, seed=seed)
    run_suite("sl3o-mv-relations", count=10, seed=seed)
    rng = random.Random(seed)
    for _ in range(count):
        foam = random_foam(rng, ORIENTED)
        value = evaluate_oriented(foam)
        if not foam.anchor_labels:
            _check(value.is_symmetric(), "unanchored evaluation not symmetric")
    run_suite("sl3o-deg-zero", count=count, seed=seed)
    return "%d pod dot triples, %d random foams, sign suites" % (
        checked_thetas,
        count,
    )


def criterion_8_sl3_state_spaces():
    checked = 0
    for theory in (UNORIENTED, ORIENTED):
        for n in range(4):
            for m in range(4 - n):
                cfg = CircleConfig.of(*(["c"] * n + ["e"] * m))
                result = state_space(cfg, theory)
                _check(
                    result.rank == 3 ** (n + m),
                    "%s rank at (n,m)=(%d,%d)" % (theory, n, m),
                )
                expect = {}
                for qs in product((-2, 0, 2), repeat=n):
                    key = (sum(qs), 0)
                    expect[key] = expect.get(key, 0) + 3 ** m
                _check(
                    result.graded_rank_dict() == expect,
                    "%s graded rank at (n,m)=(%d,%d)" % (theory, n, m),
                )
                checked += 1
    return "%d circle configurations, both theories" % checked


def criterion_9_homology(max_letters=6):
    for n in (1, 2, 3):
        cx = build_complex(BraidWord(n, ()))
        table = homology(cx)
        expect = {}
        for labels in product((-1, 1), repeat=n):
            key = (0, 0, sum(labels))
            free, tors = expect.get(key, (0, ()))
            expect[key] = (free + 1, tors)
        _check(table == expect, "identity braid Poincare table at n=%d" % n)
        _check(total_rank(table) == 2 ** n, "total rank at n=%d" % n)
    pairs = [
        (BraidWord(2, (1, -1)), BraidWord(2, ())),
        (BraidWord(3, (1, 2, 1)), BraidWord(3, (2, 1, 2))),
        (BraidWord(3, (1, 1)), BraidWord(3, (2, 1, 1, -2))),
        (BraidWord(3, (1, -2)), BraidWord(3, (-2, 1))),
    ]
    for left, right in pairs:
        hl = homology(build_complex(left))
        hr = homology(build_complex(right))
        _check(hl == hr, "tables differ: %r vs %r" % (left.word, right.word))
        _check(
            homology(build_complex(left), (2, 7))
            == homology(build_complex(right), (2, 7)),
            "rational tables differ: %r vs %r" % (left.word, right.word),
        )
    letters = (1, -1, 2, -2)
    words = 0
    for length in range(1, max_letters + 1):
        for word in product(letters, repeat=length):
            build_complex(BraidWord(3, word))  # asserts d^2 = 0 and degrees
            words += 1
    return "identity tables, invariance pairs, %d words checked" % words


def criterion_10_performance():
    t0 = time.time()
    foam = theta_foam(ORIENTED, dots=(2, 1, 0))
    from .generators import add_bubble

    for f in range(3):
        foam = add_bubble(foam, f, 1, 0)
    foam = add_bubble(foam, 0, 0, 0)
    _check(len(foam.facets) >= 10, "performance case has too few facets")
    evaluate(foam)
    elapsed = time.time() - t0
    _check(elapsed < 1.0, "10-facet evaluation took %.2fs" % elapsed)
    return "10-facet foam evaluated in %.2fs" % elapsed


CRITERIA = (
    ("1 sl2 golden evaluations", criterion_1_sl2_golden),
    ("2 sl2 homogeneity (500 random)", criterion_2_sl2_random),
    ("3 sl2 skein suites", criterion_3_sl2_skein),
    ("4 rank theorem", criterion_4_rank_theorem),
    ("5 functor isomorphism", criterion_5_functor_iso),
    ("6 unoriented sl3", criterion_6_unoriented),
    ("7 oriented sl3", criterion_7_oriented),
    ("8 sl3 circle state spaces", criterion_8_sl3_state_spaces),
    ("9 annular homology", criterion_9_homology),
    ("10 performance", criterion_10_performance),
)


def run_selftest(out=print):
    """Run every acceptance criterion; returns True when all pass."""
    t0 = time.time()
    all_ok = True
    for name, fn in CRITERIA:
        t1 = time.time()
        try:
            detail = fn()
            out("PASS %-32s %6.1fs  %s" % (name, time.time() - t1, detail))
        except Exception as exc:
            all_ok = False
            out("FAIL %-32s %6.1fs  %s" % (name, time.time() - t1, exc))
    out("selftest %s in %.1fs" % ("passed" if all_ok else "FAILED", time.time() - t0))
    return all_ok
