"""Vertex-free anchored SL(3) foams: model, colorings, exact evaluation.

A foam is a list of facets glued along seam circles; every seam has
exactly three facet sides.  Anchor points live on facets, away from
seams, and carry labels in {1,2,3}; oriented foams also carry a cyclic
order of the three sides at each seam and a sign (+1 upward) for each
anchor point.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import (
    AnchoredComponent,
    InternalInconsistency,
    InvariantViolation,
    ParityViolation,
)
from .rings import RING_SL3_F2, RING_SL3_Z, FactoredTerm, sum_factored

UNORIENTED = "sl3u"
ORIENTED = "sl3o"

PAIRS = ((1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class Facet:
    genus: int = 0
    dots: int = 0
    slots: int = 0  # boundary circles, each used by exactly one seam side
    anchors: tuple = ()  # indices into the foam's anchor label list

    def __post_init__(self):
        if self.genus < 0 or self.dots < 0 or self.slots < 0:
            raise InvariantViolation("negative facet data")

    @property
    def euler(self):
        """Euler characteristic of the compact facet."""
        return 2 - 2 * self.genus - self.slots


@dataclass(frozen=True)
class SeamCircle:
    """Three facet sides; the stored order is the cyclic order for
    oriented foams (rotations equivalent, reflections not)."""

    sides: tuple  # ((facet, slot), (facet, slot), (facet, slot))

    def __post_init__(self):
        if len(self.sides) != 3:
            raise InvariantViolation("a seam has exactly three sides")


@dataclass(frozen=True)
class Foam3:
    theory: str
    facets: tuple
    seams: tuple = ()
    anchor_labels: tuple = ()
    anchor_signs: tuple = ()  # oriented only; +1 = upward intersection

    def __post_init__(self):
        if self.theory not in (UNORIENTED, ORIENTED):
            raise InvariantViolation("theory must be sl3u or sl3o")
        used = set()
        for seam in self.seams:
            for f, s in seam.sides:
                if not 0 <= f < len(self.facets):
                    raise InvariantViolation("seam references missing facet")
                if not 0 <= s < self.facets[f].slots:
                    raise InvariantViolation("seam references missing slot")
                if (f, s) in used:
                    raise InvariantViolation("facet slot used twice")
                used.add((f, s))
        expected = {
            (f, s)
            for f, facet in enumerate(self.facets)
            for s in range(facet.slots)
        }
        if used != expected:
            raise InvariantViolation("every facet slot must lie on a seam")
        slots = sorted(a for facet in self.facets for a in facet.anchors)
        if slots != list(range(len(self.anchor_labels))):
            raise InvariantViolation("anchor slots must partition the labels")
        for lab in self.anchor_labels:
            if lab not in (1, 2, 3):
                raise InvariantViolation("anchor label outside {1,2,3}")
        if self.theory == ORIENTED:
            signs = self.anchor_signs or (1,) * len(self.anchor_labels)
            if len(signs) != len(self.anchor_labels):
                raise InvariantViolation("anchor sign count mismatch")
            if any(s not in (1, -1) for s in signs):
                raise InvariantViolation("anchor signs must be +-1")
            object.__setattr__(self, "anchor_signs", tuple(signs))
        elif self.anchor_signs:
            raise InvariantViolation("anchor signs are for oriented foams")

    @property
    def ring(self):
        return RING_SL3_Z if self.theory == ORIENTED else RING_SL3_F2

    def facet_of_anchor(self, a):
        for f, facet in enumerate(self.facets):
            if a in facet.anchors:
                return f
        raise InvariantViolation("anchor %d not on any facet" % a)

    def label_counts(self):
        an = {1: 0, 2: 0, 3: 0}
        for lab in self.anchor_labels:
            an[lab] += 1
        return an

    def components(self):
        """Connected components as lists of facet ids (facets glued at seams)."""
        parent = list(range(len(self.facets)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for seam in self.seams:
            a = find(seam.sides[0][0])
            for f, _ in seam.sides[1:]:
                parent[find(f)] = a
        groups = {}
        for i in range(len(self.facets)):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())


def admissible_colorings(foam):
    """All facet colorings with distinct colors at every seam and colors
    matching anchor labels; deterministic order (facet id, color ascending)."""
    n = len(foam.facets)
    pinned = {}
    for f, facet in enumerate(foam.facets):
        for a in facet.anchors:
            lab = foam.anchor_labels[a]
            if pinned.get(f, lab) != lab:
                return []
            pinned[f] = lab
    seams_of = [[] for _ in range(n)]
    for seam in foam.seams:
        fs = [f for f, _ in seam.sides]
        for f in set(fs):
            seams_of[f].append(fs)
    out = []
    colors = [0] * n

    def ok(f):
        for fs in seams_of[f]:
            assigned = [colors[g] for g in fs if colors[g]]
            if len(assigned) != len(set(assigned)):
                return False
        return True

    def walk(f):
        if f == n:
            out.append(dict(enumerate(colors, start=0)))
            return
        choices = (pinned[f],) if f in pinned else (1, 2, 3)
        for c in choices:
            colors[f] = c
            if ok(f):
                walk(f + 1)
            colors[f] = 0

    walk(0)
    return [Coloring3(foam, tuple(c[i] for i in range(n))) for c in out]


@dataclass(frozen=True)
class Coloring3:
    foam: Foam3
    colors: tuple  # facet id -> color, 1-based colors

    def color(self, f):
        return self.colors[f]

    def bicolored_euler(self, i, j):
        """Euler characteristic of the closed surface of facets colored i, j."""
        return sum(
            facet.euler
            for f, facet in enumerate(self.foam.facets)
            if self.colors[f] in (i, j)
        )

    def bicolored_components(self, i, j):
        """Connected components of the (i,j)-colored surface, as facet id lists."""
        members = [f for f in range(len(self.foam.facets)) if self.colors[f] in (i, j)]
        parent = {f: f for f in members}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for seam in self.foam.seams:
            fs = [f for f, _ in seam.sides if self.colors[f] in (i, j)]
            for g in fs[1:]:
                parent[find(fs[0])] = find(g)
        groups = {}
        for f in members:
            groups.setdefault(find(f), []).append(f)
        return sorted(groups.values())

    def dot_vector(self):
        d = [0, 0, 0]
        for f, facet in enumerate(self.foam.facets):
            d[self.colors[f] - 1] += facet.dots
        return tuple(d)


def _seam_color_triple(foam, coloring, seam):
    return tuple(coloring.colors[f] for f, _ in seam.sides)


def _cyclic_equal(a, b):
    return len(a) == len(b) and any(
        a == b[k:] + b[:k] for k in range(len(b))
    )


def sign_exponent(foam, coloring):
    """The sign exponent s(F,c) mod 2 for oriented foams.

    Computed by two independent formulas (capped surfaces + positive seam
    counts vs uncapped surfaces + negative seams) and cross-asserted.
    """
    if foam.theory != ORIENTED:
        raise InvariantViolation("sign exponent is for oriented foams")
    capped = {1: 0, 2: 0, 3: 0}
    open_chi = {1: 0, 2: 0, 3: 0}
    for f, facet in enumerate(foam.facets):
        c = coloring.colors[f]
        capped[c] += facet.euler + facet.slots
        open_chi[c] += facet.euler
    total_capped = 0
    for i in (1, 2, 3):
        if capped[i] % 2:
            raise InvariantViolation("capped surface has odd Euler characteristic")
        total_capped += i * (capped[i] // 2)
    theta_pos_pairs = 0
    theta_neg = 0
    for seam in foam.seams:
        triple = _seam_color_triple(foam, coloring, seam)
        for (i, j) in PAIRS:
            k = 6 - i - j
            if _cyclic_equal(triple, (i, k, j)):
                theta_pos_pairs += 1
        if not _cyclic_equal(triple, (1, 2, 3)):
            theta_neg += 1
    s1 = (total_capped + theta_pos_pairs) % 2
    open_sum = sum(i * open_chi[i] for i in (1, 2, 3))
    if open_sum % 2:
        raise InvariantViolation("facet Euler sum has odd weighted parity")
    s2 = (open_sum // 2 + theta_neg) % 2
    if s1 != s2:
        raise InternalInconsistency("sign exponent formulas disagree")
    return s1


def _check_pair_parity(foam):
    an = foam.label_counts()
    for (i, j) in PAIRS:
        if (an[i] + an[j]) % 2:
            raise ParityViolation(
                "anchor labels %d and %d have odd total count" % (i, j)
            )


def _sub_foam(foam, facet_ids):
    fmap = {f: k for k, f in enumerate(facet_ids)}
    old_anchor_ids = sorted(
        a for f in facet_ids for a in foam.facets[f].anchors
    )
    amap = {a: k for k, a in enumerate(old_anchor_ids)}
    facets = tuple(
        replace(
            foam.facets[f],
            anchors=tuple(sorted(amap[a] for a in foam.facets[f].anchors)),
        )
        for f in facet_ids
    )
    seams = tuple(
        SeamCircle(tuple((fmap[f], s) for f, s in seam.sides))
        for seam in foam.seams
        if seam.sides[0][0] in fmap
    )
    labels = tuple(foam.anchor_labels[a] for a in old_anchor_ids)
    signs = (
        tuple(foam.anchor_signs[a] for a in old_anchor_ids)
        if foam.theory == ORIENTED
        else ()
    )
    return Foam3(foam.theory, facets, seams, labels, signs)


def _coloring_term(foam, coloring):
    an = foam.label_counts()
    exps = {}
    for (i, j) in PAIRS:
        chi = coloring.bicolored_euler(i, j)
        if chi % 2:
            raise InvariantViolation("bicolored surface with odd Euler number")
        num = an[i] + an[j] - chi
        if num % 2:
            raise ParityViolation("odd anchor pair count for a colorable foam")
        exps[(i, j)] = num // 2
    sign = 1
    if foam.theory == ORIENTED:
        sign = -1 if sign_exponent(foam, coloring) else 1
    return FactoredTerm.make(sign, coloring.dot_vector(), exps)


def _evaluate_connected(foam):
    ring = foam.ring
    colorings = admissible_colorings(foam)
    if not colorings:
        return ring.zero()
    _check_pair_parity(foam)
    return sum_factored([_coloring_term(foam, c) for c in colorings], ring)


def evaluate_unoriented(foam, split_components=True):
    """Evaluation in F2[x1,x2,x3]; a polynomial for every genuine foam."""
    if foam.theory != UNORIENTED:
        raise InvariantViolation("expected an unoriented foam")
    return _evaluate(foam, split_components)


def evaluate_oriented(foam, split_components=True):
    """Evaluation in Z[x1,x2,x3]; symmetric when the foam avoids the line."""
    if foam.theory != ORIENTED:
        raise InvariantViolation("expected an oriented foam")
    value = _evaluate(foam, split_components)
    if not foam.anchor_labels and not value.is_symmetric():
        raise InternalInconsistency("closed unanchored evaluation not symmetric")
    return value


def _evaluate(foam, split_components):
    ring = foam.ring
    if not split_components:
        return _evaluate_connected(foam)
    result = ring.one()
    for component in foam.components():
        value = _evaluate_connected(_sub_foam(foam, component))
        if value.is_zero():
            return ring.zero()
        result = result * value
    return result


def evaluate(foam, split_components=True):
    if foam.theory == ORIENTED:
        return evaluate_oriented(foam, split_components)
    return evaluate_unoriented(foam, split_components)


def kempe_move(foam, coloring, colors, component_index):
    """Swap colors i, j on one component of the bicolored surface.

    The component is selected by index into bicolored_components(i, j) and
    must avoid the anchor line.  For oriented foams the sign jump equals
    half the component's Euler characteristic (asserted).
    """
    i, j = sorted(colors)
    comps = coloring.bicolored_components(i, j)
    if not 0 <= component_index < len(comps):
        raise InvariantViolation("no such bicolored component")
    sigma = comps[component_index]
    if any(foam.facets[f].anchors for f in sigma):
        raise AnchoredComponent("Kempe component meets the anchor line")
    swap = {i: j, j: i}
    new_colors = tuple(
        swap.get(c, c) if f in sigma else c
        for f, c in enumerate(coloring.colors)
    )
    new_coloring = Coloring3(foam, new_colors)
    if new_coloring not in admissible_colorings(foam):
        raise InternalInconsistency("Kempe move broke admissibility")
    if foam.theory == ORIENTED:
        chi = sum(foam.facets[f].euler for f in sigma)
        jump = (sign_exponent(foam, coloring) - sign_exponent(foam, new_coloring)) % 2
        if j - i == 1:
            # adjacent colors: the sign jumps by half the Euler number
            expected = (chi // 2) % 2
        else:
            # swapping the outer colors 1, 3: the jump is the seam count
            expected = sum(
                1
                for seam in foam.seams
                if any(f in sigma for f, _ in seam.sides)
            ) % 2
        if jump != expected:
            raise InternalInconsistency("Kempe sign jump law failed")
    return new_coloring


def annular_degree(foam):
    """Annular degree: (Z/2 x Z/2) for unoriented foams, coordinates in the
    rank-two lattice (basis w1, w2 with w3 = -w1 - w2) for oriented ones."""
    if foam.theory == UNORIENTED:
        u = {1: (1, 0), 2: (0, 1), 3: (1, 1)}
        a = b = 0
        for lab in foam.anchor_labels:
            a ^= u[lab][0]
            b ^= u[lab][1]
        return (a, b)
    w = {1: (1, 0), 2: (0, 1), 3: (-1, -1)}
    a = b = 0
    for lab, s in zip(foam.anchor_labels, foam.anchor_signs):
        a += s * w[lab][0]
        b += s * w[lab][1]
    return (a, b)


def permute_labels(sigma, foam):
    """Relabel anchors by a permutation of {1,2,3}; returns (foam, sign bit).

    The sign bit counts inversions of sigma weighted by half the label
    pair counts.
    """
    if foam.theory != ORIENTED:
        raise InvariantViolation("label permutation sign is for oriented foams")
    an = foam.label_counts()
    eps = 0
    for (i, j) in PAIRS:
        if sigma[i] > sigma[j]:
            pair = an[i] + an[j]
            if pair % 2:
                raise ParityViolation("odd anchor pair count")
            eps += pair // 2
    labels = tuple(sigma[lab] for lab in foam.anchor_labels)
    return replace(foam, anchor_labels=labels), eps % 2


def foam_degree(foam):
    """Degree of the evaluation when nonzero: twice (dots + anchors - chi),
    seam circles contributing nothing."""
    chi = sum(f.euler for f in foam.facets)
    dots = sum(f.dots for f in foam.facets)
    return 2 * (dots + len(foam.anchor_labels) - chi)
