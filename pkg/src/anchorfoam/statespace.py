"""State spaces of circle configurations via the universal construction.

Standard generators are disk-built: dotted/undotted cups over contractible
circles and labeled anchored disks over essential ones.  The Gram matrix
pairs reflected generators against each other through the closed
evaluation; ranks are certified by fraction-free elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import InvariantViolation, NotStandardGenerator
from .foams import ORIENTED, UNORIENTED, Facet, Foam3
from .foams import evaluate as evaluate_foam
from .linalg import Matrix, rank_over_fraction_field
from .surfaces import (
    CONTRACTIBLE,
    ESSENTIAL,
    EMPTY_CONFIG,
    Cobordism2,
    Surface2Component,
    bidegree,
    compose,
    evaluate_surface,
    reflect,
)

SL2 = "sl2"
THEORIES = (SL2, UNORIENTED, ORIENTED)


@dataclass(frozen=True)
class GeneratorFoam:
    """A standard generator of <C>: per-circle factors plus its bidegree.

    factors: per circle either ("cup", dots) or ("disk", label); for the
    two-color theory the actual bounding cobordism is materialized.
    """

    theory: str
    config: object
    factors: tuple
    cobordism: object = None
    qdeg: int = 0
    adeg: int = 0


@dataclass(frozen=True)
class TensorWord:
    factors: tuple  # symbols from {"1","X","v0","v1","v0'","v1'"}
    qdeg: int = 0  # modified quantum degree of the word
    adeg: int = 0


_WORD_BIDEGREE = {
    "1": (-1, 0),
    "X": (1, 0),
    "v0": (0, -1),
    "v1": (0, 1),
    "v0'": (0, -1),
    "v1'": (0, 1),
}


def _essential_positions(config):
    """Circle positions of essential circles, outermost first."""
    pairs = [
        (c.index, pos)
        for pos, c in enumerate(config.circles)
        if c.kind == ESSENTIAL
    ]
    return [pos for _, pos in sorted(pairs)]


def _contractible_positions(config):
    return [
        pos for pos, c in enumerate(config.circles) if c.kind == CONTRACTIBLE
    ]


def _sl2_generator_cobordism(config, factors):
    """Disk-per-circle cobordism from the empty configuration to config.

    Anchor order along the line is outermost-essential first (the deepest
    disk hangs lowest).
    """
    ess = _essential_positions(config)
    anchor_of = {pos: k for k, pos in enumerate(ess)}
    comps = []
    labels = [0] * len(ess)
    for pos, factor in enumerate(factors):
        kind, value = factor
        if kind == "cup":
            comps.append(Surface2Component(dots=value, top=(pos,)))
        else:
            a = anchor_of[pos]
            labels[a] = value
            comps.append(Surface2Component(anchors=(a,), top=(pos,)))
    return Cobordism2(tuple(comps), tuple(labels), EMPTY_CONFIG, config)


def standard_generators(config, theory):
    """Standard generator list for a circle configuration.

    Contractible circles take cups with 0..(N-2) dots, essential circles
    anchored disks with every label; variants run in the order dots then
    labels ascending, with later circles varying fastest.
    """
    if theory not in THEORIES:
        raise InvariantViolation("unknown theory %r" % (theory,))
    ncolors = 2 if theory == SL2 else 3
    choice_lists = []
    for circle in config.circles:
        if circle.kind == CONTRACTIBLE:
            choice_lists.append([("cup", d) for d in range(ncolors)])
        else:
            choice_lists.append([("disk", lab) for lab in range(1, ncolors + 1)])
    gens = []
    for factors in product(*choice_lists):
        if theory == SL2:
            cob = _sl2_generator_cobordism(config, factors)
            q, a = bidegree(cob)
            gens.append(GeneratorFoam(theory, config, factors, cob, q, a))
        else:
            dots = sum(v for kind, v in factors if kind == "cup")
            disks = sum(1 for kind, _ in factors if kind == "disk")
            ndisks = len(factors)
            # deg = 2(dots + anchors - chi) + chi(boundary circles)
            q = 2 * (dots + disks - ndisks)
            gens.append(GeneratorFoam(theory, config, factors, None, q, 0))
    return gens


def _sl3_pair_closure(theory, gen_a, gen_b):
    """Closed foam from a reflected generator glued to another: one sphere
    per circle."""
    facets = []
    labels = []
    signs = []
    for fa, fb in zip(gen_a.factors, gen_b.factors):
        if fa[0] == "cup" and fb[0] == "cup":
            facets.append(Facet(dots=fa[1] + fb[1]))
        elif fa[0] == "disk" and fb[0] == "disk":
            a0 = len(labels)
            facets.append(Facet(anchors=(a0, a0 + 1)))
            labels.extend([fa[1], fb[1]])
            signs.extend([1, -1])
        else:
            raise InvariantViolation("mismatched generator factors")
    return Foam3(
        theory,
        tuple(facets),
        (),
        tuple(labels),
        tuple(signs) if theory == ORIENTED else (),
    )


def pair_generators(gen_a, gen_b):
    """<reflect(gen_a) . gen_b>, the bilinear form on generators."""
    if gen_a.theory != gen_b.theory or gen_a.config != gen_b.config:
        raise InvariantViolation("generators over different configurations")
    if gen_a.theory == SL2:
        closed = compose(gen_b.cobordism, reflect(gen_a.cobordism))
        return evaluate_surface(closed)
    return evaluate_foam(_sl3_pair_closure(gen_a.theory, gen_a, gen_b))


def gram_matrix(gens):
    """Symmetric matrix of pairings over a generator list."""
    n = len(gens)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            value = pair_generators(gens[i], gens[j])
            rows[i][j] = value
            rows[j][i] = value
    return Matrix.make(rows)


@dataclass(frozen=True)
class StateSpaceResult:
    rank: int
    graded_rank: tuple  # sorted ((qdeg, adeg), multiplicity) pairs
    generators: tuple
    gram: Matrix

    def graded_rank_dict(self):
        return dict(self.graded_rank)


def state_space(config, theory):
    """Rank and graded rank of the state space of a circle configuration."""
    gens = standard_generators(config, theory)
    gram = gram_matrix(gens)
    rank = rank_over_fraction_field(gram) if gens else 0
    grading = {}
    for g in gens:
        key = (g.qdeg, g.adeg)
        grading[key] = grading.get(key, 0) + 1
    if rank != len(gens):
        raise InvariantViolation(
            "standard generators are not independent (rank %d of %d)"
            % (rank, len(gens))
        )
    return StateSpaceResult(rank, tuple(sorted(grading.items())), tuple(gens), gram)


def _gram_inverse(config, gram):
    """Inverse of a standard-generator Gram matrix.

    Standard Grams are tensor products of per-circle blocks of unit
    determinant, so the inverse has polynomial entries; the candidate is
    assembled blockwise and verified against the honestly computed Gram.
    """
    from .rings import RING_SL2

    r = RING_SL2
    e1 = r.elementary_symmetric(1)
    inv_cont = ((-e1, r.one()), (r.one(), r.zero()))
    inv_ess = ((r.one(), r.zero()), (r.zero(), r.one()))
    blocks = [
        inv_cont if c.kind == CONTRACTIBLE else inv_ess
        for c in config.circles
    ]
    n = 1 << len(blocks)

    def entry(i, j):
        value = r.one()
        for b in reversed(blocks):
            value = value * b[i & 1][j & 1]
            if value.is_zero():
                return value
            i >>= 1
            j >>= 1
        return value

    inv = Matrix.make([[entry(i, j) for j in range(n)] for i in range(n)])
    prod = gram.mul(inv)
    for i in range(n):
        for j in range(n):
            expect = r.one() if i == j else r.zero()
            if prod[i, j] != expect:
                raise InvariantViolation("Gram block inverse check failed")
    return inv


def cobordism_matrix(cob, c0, c1):
    """Matrix of the induced map <C0> -> <C1> in the standard bases.

    Column j holds the coordinates of cob composed with the j-th generator
    of C0, solved against the Gram matrix of C1; coordinates must clear to
    the ground ring (automatic here since standard Grams have unit
    determinant, which the verified block inverse witnesses).
    """
    if cob.bottom != c0 or cob.top != c1:
        raise InvariantViolation("cobordism boundaries do not match")
    gens0 = standard_generators(c0, SL2)
    gens1 = standard_generators(c1, SL2)
    gram1 = gram_matrix(gens1)
    reflected = [reflect(h.cobordism) for h in gens1]
    pushed = [compose(g.cobordism, cob) for g in gens0]
    pairings = [
        [evaluate_surface(compose(p, h)) for p in pushed] for h in reflected
    ]
    inv = _gram_inverse(c1, gram1)
    return inv.mul(Matrix.make(pairings))


def _circle_bit(circle, factor):
    """Bit encoding of a generator factor matching the saddle tables:
    X and v1/v1' are bit 1."""
    kind, value = factor
    if kind == "cup":
        if value not in (0, 1):
            raise InvariantViolation("cup with more than one dot")
        return value
    primed = circle.index % 2 == 1
    return 1 if (value == 1) != primed else 0


def _is_product_annulus(comp):
    return (
        comp.genus == 0
        and comp.dots == 0
        and not comp.anchors
        and len(comp.bottom) == 1
        and len(comp.top) == 1
    )


def galpha_matrix(cob, c0, c1):
    """Matrix of an elementary annular cobordism under the circle-functor
    formulas, identity on bystander circles.

    Supports cups, caps with up to one dot, dotted cylinders, and the
    merge/split saddles (contractible and essential in every parity).
    Used as the independent route against cobordism_matrix.
    """
    from .homology import (
        _MERGE_CC,
        _SPLIT_CC,
        _merge_ec,
        _merge_ee,
        _split_ec,
        _split_ee,
    )
    from .rings import RING_SL2

    r = RING_SL2
    e1 = r.elementary_symmetric(1)
    e2 = r.elementary_symmetric(2)
    a1, a2 = r.var(1), r.var(2)
    if cob.bottom != c0 or cob.top != c1:
        raise InvariantViolation("cobordism boundaries do not match")
    if cob.anchor_labels:
        raise InvariantViolation("formula matrices cover annular cobordisms")
    events = [c for c in cob.components if not _is_product_annulus(c)]
    if len(events) > 1:
        raise InvariantViolation("more than one elementary event")

    def essential(config, pos):
        return config.circles[pos].kind == ESSENTIAL

    def primed(config, pos):
        return config.circles[pos].index % 2 == 1

    src_event = ()
    tgt_event = ()
    if not events:
        table = {(): [((), r.one())]}
    else:
        ev = events[0]
        src_event = ev.bottom
        tgt_event = ev.top
        if len(ev.bottom) == 2 and len(ev.top) == 1:
            kinds = tuple(essential(c0, p) for p in ev.bottom)
            if kinds == (False, False):
                table = _MERGE_CC
            elif True in kinds and False in kinds:
                ess_pos = ev.bottom[kinds.index(True)]
                src_event = (ess_pos, ev.bottom[kinds.index(False)])
                table = _merge_ec(primed(c0, ess_pos))
            else:
                lo, hi = sorted(ev.bottom, key=lambda p: c0.circles[p].index)
                src_event = (lo, hi)
                table = _merge_ee(primed(c0, lo))
        elif len(ev.bottom) == 1 and len(ev.top) == 2:
            kinds = tuple(essential(c1, p) for p in ev.top)
            if kinds == (False, False):
                table = _SPLIT_CC
            elif True in kinds and False in kinds:
                ess_pos = ev.top[kinds.index(True)]
                tgt_event = (ess_pos, ev.top[kinds.index(False)])
                table = _split_ec(primed(c1, ess_pos))
            else:
                lo, hi = sorted(ev.top, key=lambda p: c1.circles[p].index)
                tgt_event = (lo, hi)
                table = _split_ee(primed(c1, lo))
        elif (len(ev.bottom), len(ev.top)) == (0, 1):
            if ev.dots > 1:
                raise InvariantViolation("cup with more than one dot")
            table = {(): [((ev.dots,), r.one())]}
        elif (len(ev.bottom), len(ev.top)) == (1, 0):
            if ev.dots == 0:
                table = {(0,): [], (1,): [((), r.one())]}
            elif ev.dots == 1:
                table = {(0,): [((), r.one())], (1,): [((), e1)]}
            else:
                raise InvariantViolation("cap with more than one dot")
        elif (len(ev.bottom), len(ev.top)) == (1, 1):
            # dotted cylinder: multiplication by X, iterated
            pos = ev.bottom[0]
            if essential(c0, pos):
                lo, hi = (a2, a1) if primed(c0, pos) else (a1, a2)
                step = {0: [(1, r.one()), (0, lo)], 1: [(1, hi)]}
            else:
                step = {0: [(1, r.one())], 1: [(1, e1), (0, -e2)]}
            table = {(b,): [((b,), r.one())] for b in (0, 1)}
            for _ in range(ev.dots):
                new = {}
                for src, images in table.items():
                    acc = {}
                    for (b,), coeff in images:
                        for nb, c2 in step[b]:
                            acc[(nb,)] = acc.get((nb,), r.zero()) + coeff * c2
                    new[src] = [(k, v) for k, v in acc.items() if not v.is_zero()]
                table = new
        else:
            raise InvariantViolation("component is not an elementary event")

    src_rest = [p for p in range(len(c0.circles)) if p not in src_event]
    tgt_rest = [p for p in range(len(c1.circles)) if p not in tgt_event]
    if len(src_rest) != len(tgt_rest):
        raise InvariantViolation("bystander circle counts differ")
    carry = list(zip(src_rest, tgt_rest))
    for ps, pt in carry:
        cs, ct = c0.circles[ps], c1.circles[pt]
        if cs.kind != ct.kind:
            raise InvariantViolation("bystander circle changed kind")
        if cs.kind == ESSENTIAL and (cs.index - ct.index) % 2:
            raise InvariantViolation("bystander circle changed parity")

    gens0 = standard_generators(c0, SL2)
    gens1 = standard_generators(c1, SL2)
    tgt_index = {}
    for k, g in enumerate(gens1):
        bits = tuple(
            _circle_bit(c1.circles[p], g.factors[p])
            for p in range(len(c1.circles))
        )
        tgt_index[bits] = k
    rows = [
        [r.zero() for _ in range(len(gens0))] for _ in range(len(gens1))
    ]
    for j, g in enumerate(gens0):
        bits = [
            _circle_bit(c0.circles[p], g.factors[p])
            for p in range(len(c0.circles))
        ]
        local = tuple(bits[p] for p in src_event)
        for tgt_local, coeff in table[local]:
            out = [0] * len(c1.circles)
            for ps, pt in carry:
                out[pt] = bits[ps]
            for k, pt in enumerate(tgt_event):
                out[pt] = tgt_local[k]
            i = tgt_index[tuple(out)]
            rows[i][j] = rows[i][j] + coeff
    return Matrix.make(rows)


def phi_map(gen):
    """Tensor word of a standard two-color generator.

    Cups map to 1/X; the essential disk at nesting position j maps to
    v1/v0 (j odd) or v0'/v1' (j even) according to its label, matching
    bidegrees.
    """
    if gen.theory != SL2 or gen.cobordism is None:
        raise NotStandardGenerator("phi_map expects a standard sl2 generator")
    ess = _essential_positions(gen.config)
    nesting = {pos: k + 1 for k, pos in enumerate(ess)}
    symbols = []
    for pos, (kind, value) in enumerate(gen.factors):
        if kind == "cup":
            if value not in (0, 1):
                raise NotStandardGenerator("cup with more than one dot")
            symbols.append("X" if value else "1")
        else:
            j = nesting[pos]
            if j % 2 == 1:
                symbols.append("v1" if value == 1 else "v0")
            else:
                symbols.append("v0'" if value == 1 else "v1'")
    qdeg = sum(_WORD_BIDEGREE[s][0] for s in symbols)
    adeg = sum(_WORD_BIDEGREE[s][1] for s in symbols)
    if (qdeg, adeg) != (gen.qdeg, gen.adeg):
        raise NotStandardGenerator("bidegree mismatch against the word table")
    return TensorWord(tuple(symbols), qdeg, adeg)
