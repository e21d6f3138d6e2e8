"""Anchored surfaces and cobordisms for the two-color theory.

Surfaces are abstract component lists: evaluation depends only on each
component's Euler characteristic, dots, shifted dots and anchor labels,
plus the circle configurations a cobordism bounds.  Anchor points are
ordered globally from bottom to top along the anchor line.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import BoundaryMismatch, InvariantViolation
from .rings import RING_SL2, FactoredTerm, sum_factored

CONTRACTIBLE = "contractible"
ESSENTIAL = "essential"


@dataclass(frozen=True)
class Circle:
    kind: str
    index: int = 0  # nesting depth; radial order for essential (0 = outermost)

    def __post_init__(self):
        if self.kind not in (CONTRACTIBLE, ESSENTIAL):
            raise InvariantViolation("bad circle kind %r" % (self.kind,))


@dataclass(frozen=True)
class CircleConfig:
    circles: tuple = ()

    def __post_init__(self):
        radials = sorted(c.index for c in self.circles if c.kind == ESSENTIAL)
        if radials != list(range(len(radials))):
            raise InvariantViolation("essential radial indices must be 0..m-1")

    @staticmethod
    def of(*kinds):
        """Build a config from 'c'/'e' codes; essentials numbered in order."""
        circles = []
        r = 0
        for k in kinds:
            if k == "c":
                circles.append(Circle(CONTRACTIBLE))
            else:
                circles.append(Circle(ESSENTIAL, r))
                r += 1
        return CircleConfig(tuple(circles))

    @property
    def essential_count(self):
        return sum(1 for c in self.circles if c.kind == ESSENTIAL)

    @property
    def contractible_count(self):
        return len(self.circles) - self.essential_count


EMPTY_CONFIG = CircleConfig()


@dataclass(frozen=True)
class Surface2Component:
    """One connected piece: genus, dots, shifted dots, anchor and circle slots."""

    genus: int = 0
    dots: int = 0
    shifted: tuple = (0, 0)
    anchors: tuple = ()  # indices into the parent anchor label list
    bottom: tuple = ()  # circle positions in the bottom configuration
    top: tuple = ()

    def __post_init__(self):
        if self.genus < 0 or self.dots < 0 or min(self.shifted) < 0:
            raise InvariantViolation("negative decoration count")

    @property
    def boundary_count(self):
        return len(self.bottom) + len(self.top)

    @property
    def euler(self):
        return 2 - 2 * self.genus - self.boundary_count


def _check_components(components, anchor_labels, closed):
    seen = []
    for comp in components:
        seen.extend(comp.anchors)
        if closed and comp.boundary_count:
            raise InvariantViolation("closed surface has a boundary slot")
        if closed and len(comp.anchors) % 2:
            raise InvariantViolation("closed component with odd anchor count")
    if sorted(seen) != list(range(len(anchor_labels))):
        raise InvariantViolation("anchor slots must partition the label list")
    for lab in anchor_labels:
        if lab not in (1, 2):
            raise InvariantViolation("anchor label outside {1,2}")


@dataclass(frozen=True)
class AnchoredSurface:
    components: tuple
    anchor_labels: tuple = ()

    def __post_init__(self):
        _check_components(self.components, self.anchor_labels, closed=True)


@dataclass(frozen=True)
class Cobordism2:
    components: tuple
    anchor_labels: tuple = ()
    bottom: CircleConfig = EMPTY_CONFIG
    top: CircleConfig = EMPTY_CONFIG

    def __post_init__(self):
        _check_components(self.components, self.anchor_labels, closed=False)
        bslots = sorted(p for c in self.components for p in c.bottom)
        tslots = sorted(p for c in self.components for p in c.top)
        if bslots != list(range(len(self.bottom.circles))):
            raise InvariantViolation("bottom slots must match the bottom circles")
        if tslots != list(range(len(self.top.circles))):
            raise InvariantViolation("top slots must match the top circles")

    def to_surface(self):
        if self.bottom.circles or self.top.circles:
            raise InvariantViolation("cobordism is not closed")
        for comp in self.components:
            if len(comp.anchors) % 2:
                raise InvariantViolation("closed component with odd anchor count")
        return AnchoredSurface(self.components, self.anchor_labels)


def total_euler(x):
    return sum(c.euler for c in x.components)


def total_dots(x):
    """Dots counted with shifted dots included (each has degree 2)."""
    return sum(c.dots + sum(c.shifted) for c in x.components)


def bidegree(x):
    """(qdeg, adeg) of a surface or cobordism.

    qdeg = -chi + 2*dots + #anchors; adeg alternates over the anchor order
    with a global sign (-1)^n, n the number of essential bottom circles.
    """
    m = len(x.anchor_labels)
    qdeg = -total_euler(x) + 2 * total_dots(x) + m
    n = x.bottom.essential_count if isinstance(x, Cobordism2) else 0
    adeg = 0
    for i, lab in enumerate(x.anchor_labels, start=1):
        adeg += (-1) ** (i + lab)
    adeg *= (-1) ** n
    return (qdeg, adeg)


def _component_value(comp, labels, ring):
    """Poly value of one closed component (sum of its two colorings)."""
    terms = []
    k2 = len(comp.anchors)
    if k2 % 2:
        raise InvariantViolation("odd anchor count on a closed component")
    k = k2 // 2
    comp_labels = [labels[a] for a in comp.anchors]
    half_chi = comp.euler // 2
    for color in (1, 2):
        if any(lab == color for lab in comp_labels):
            continue
        if comp.shifted[color - 1]:
            continue  # shifted dot of the component's own color kills the term
        other_shift = comp.shifted[2 - color]
        e = k - half_chi + other_shift
        sign = 1 if color == 1 else (-1) ** e
        dots = (comp.dots, 0) if color == 1 else (0, comp.dots)
        terms.append(FactoredTerm.make(sign, dots, {(1, 2): e}))
    return sum_factored(terms, ring)


def evaluate_surface(s):
    """Closed-surface evaluation: a polynomial in the two alpha variables."""
    if isinstance(s, Cobordism2):
        s = s.to_surface()
    ring = RING_SL2
    result = ring.one()
    for comp in s.components:
        value = _component_value(comp, s.anchor_labels, ring)
        if value.is_zero():
            return ring.zero()
        result = result * value
    return result


def reflect(s):
    """Mirror a cobordism through the middle plane.

    Bottom and top boundaries swap and the global anchor order reverses;
    anchor labels are unchanged.
    """
    m = len(s.anchor_labels)
    comps = tuple(
        replace(
            c,
            bottom=c.top,
            top=c.bottom,
            anchors=tuple(m - 1 - a for a in c.anchors),
        )
        for c in s.components
    )
    return Cobordism2(
        comps,
        tuple(reversed(s.anchor_labels)),
        bottom=s.top,
        top=s.bottom,
    )


def compose(bottom, top):
    """Glue two cobordisms along their shared middle configuration."""
    if bottom.top != top.bottom:
        raise BoundaryMismatch("middle circle configurations differ")
    mid = len(bottom.top.circles)
    nodes = [("b", i) for i in range(len(bottom.components))] + [
        ("t", i) for i in range(len(top.components))
    ]
    parent = {n: n for n in nodes}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    def owner(side, comps, attr, pos):
        for i, c in enumerate(comps):
            if pos in getattr(c, attr):
                return (side, i)
        raise InvariantViolation("unclaimed middle circle %d" % pos)

    for pos in range(mid):
        union(
            owner("b", bottom.components, "top", pos),
            owner("t", top.components, "bottom", pos),
        )

    m_bottom = len(bottom.anchor_labels)
    groups = {}
    for n in nodes:
        groups.setdefault(find(n), []).append(n)

    new_components = []
    for members in groups.values():
        chi = 0
        dots = 0
        shifted = [0, 0]
        anchors = []
        new_bottom = []
        new_top = []
        for side, idx in members:
            c = (bottom if side == "b" else top).components[idx]
            chi += c.euler
            dots += c.dots
            shifted[0] += c.shifted[0]
            shifted[1] += c.shifted[1]
            if side == "b":
                anchors.extend(c.anchors)
                new_bottom.extend(c.bottom)
            else:
                anchors.extend(a + m_bottom for a in c.anchors)
                new_top.extend(c.top)
        b_new = len(new_bottom) + len(new_top)
        genus2 = 2 - b_new - chi
        if genus2 < 0 or genus2 % 2:
            raise InvariantViolation("non-orientable gluing (chi parity)")
        new_components.append(
            Surface2Component(
                genus=genus2 // 2,
                dots=dots,
                shifted=tuple(shifted),
                anchors=tuple(sorted(anchors)),
                bottom=tuple(sorted(new_bottom)),
                top=tuple(sorted(new_top)),
            )
        )
    labels = bottom.anchor_labels + top.anchor_labels
    return Cobordism2(tuple(new_components), labels, bottom.bottom, top.top)


def tau(s):
    """Swap the two colors: anchor labels 1<->2 and shifted dots exchanged."""
    labels = tuple(3 - lab for lab in s.anchor_labels)
    comps = tuple(
        replace(c, shifted=(c.shifted[1], c.shifted[0])) for c in s.components
    )
    if isinstance(s, Cobordism2):
        return Cobordism2(comps, labels, s.bottom, s.top)
    return AnchoredSurface(comps, labels)


def tau_poly(p):
    """The coefficient-ring involution swapping the two alpha variables."""
    return p.permuted({1: 2, 2: 1})


def disjoint_union(*surfaces):
    """Disjoint union of closed anchored surfaces (anchors concatenated)."""
    comps = []
    labels = []
    for s in surfaces:
        off = len(labels)
        for c in s.components:
            comps.append(replace(c, anchors=tuple(a + off for a in c.anchors)))
        labels.extend(s.anchor_labels)
    return AnchoredSurface(tuple(comps), tuple(labels))


def closed_component_surface(genus=0, dots=0, labels=(), shifted=(0, 0)):
    """One closed component with the given anchor labels (bottom to top)."""
    comp = Surface2Component(
        genus=genus,
        dots=dots,
        shifted=tuple(shifted),
        anchors=tuple(range(len(labels))),
    )
    return AnchoredSurface((comp,), tuple(labels))
