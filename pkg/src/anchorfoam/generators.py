"""Seeded random families of surfaces, foams, and annular cobordisms.

Foam families are built from embeddable building blocks (closed surfaces,
theta-like pods, double pods, bubbles and wiggles), so every generated
object admits a genuine embedding and the integrality guarantees apply.
"""

from __future__ import annotations

from dataclasses import replace

from .foams import ORIENTED, UNORIENTED, Facet, Foam3, SeamCircle
from .surfaces import (
    AnchoredSurface,
    CircleConfig,
    Cobordism2,
    EMPTY_CONFIG,
    Surface2Component,
    disjoint_union,
)


def random_surface(
    rng,
    max_components=5,
    max_genus=3,
    max_dots=4,
    max_anchor_pairs=3,
    with_shifted=True,
    uniform_labels=False,
):
    """Random closed anchored surface with interleaved anchor order."""
    ncomp = rng.randint(1, max_components)
    comp_anchor_labels = []
    comps = []
    for _ in range(ncomp):
        k = rng.randint(0, max_anchor_pairs)
        if uniform_labels:
            lab = rng.choice((1, 2))
            labels = [lab] * (2 * k)
        else:
            labels = [rng.choice((1, 2)) for _ in range(2 * k)]
        shifted = (
            (rng.randint(0, 1), rng.randint(0, 1)) if with_shifted else (0, 0)
        )
        comps.append(
            {
                "genus": rng.randint(0, max_genus),
                "dots": rng.randint(0, max_dots),
                "shifted": shifted,
                "labels": labels,
            }
        )
        comp_anchor_labels.append(labels)
    # interleave anchors across components in a random global order
    order = []
    for ci, labels in enumerate(comp_anchor_labels):
        order.extend((ci, k) for k in range(len(labels)))
    rng.shuffle(order)
    slot_of = {pair: slot for slot, pair in enumerate(order)}
    labels_global = [0] * len(order)
    components = []
    for ci, data in enumerate(comps):
        anchors = tuple(
            sorted(slot_of[(ci, k)] for k in range(len(data["labels"])))
        )
        for k, lab in enumerate(data["labels"]):
            labels_global[slot_of[(ci, k)]] = lab
        components.append(
            Surface2Component(
                genus=data["genus"],
                dots=data["dots"],
                shifted=data["shifted"],
                anchors=anchors,
            )
        )
    return AnchoredSurface(tuple(components), tuple(labels_global))


# -- foam building blocks ----------------------------------------------------


def closed_surface_foam(theory, genus=0, dots=0, labels=(), signs=None):
    """One closed surface facet crossing the line |labels| times."""
    k = len(labels)
    if signs is None:
        signs = tuple(1 if i % 2 == 0 else -1 for i in range(k))
    return Foam3(
        theory,
        (Facet(genus=genus, dots=dots, anchors=tuple(range(k))),),
        (),
        tuple(labels),
        tuple(signs) if theory == ORIENTED else (),
    )


def theta_foam(
    theory,
    labels=(),
    dots=(0, 0, 0),
    genus=(0, 0, 0),
    cyclic="TBM",
    signs=None,
    anchored_facets=(0, 1, 2),
):
    """Theta-like pod: facets top/middle/bottom glued along one seam.

    labels, when present, sit one per facet listed in anchored_facets.
    cyclic 'TBM' is the standard closed pod; 'TMB' the reflected one.
    """
    anchors = {f: () for f in range(3)}
    for a, f in enumerate(anchored_facets[: len(labels)]):
        anchors[f] = anchors[f] + (a,)
    facets = tuple(
        Facet(genus=genus[f], dots=dots[f], slots=1, anchors=anchors[f])
        for f in range(3)
    )
    order = {"TBM": ((0, 0), (2, 0), (1, 0)), "TMB": ((0, 0), (1, 0), (2, 0))}
    seam = SeamCircle(order[cyclic])
    if theory == ORIENTED and labels:
        signs = signs or (1,) * len(labels)
    else:
        signs = ()
    return Foam3(theory, facets, (seam,), tuple(labels), tuple(signs))


def double_theta_foam(theory, labels=(), dots=(0, 0, 0, 0, 0)):
    """Sphere with two internal disks: facets (cap1, disk1, band, disk2,
    cap2), two seams; up to four axis anchors on the non-band facets."""
    anchored = (0, 1, 3, 4)
    anchors = {f: () for f in range(5)}
    for a, f in enumerate(anchored[: len(labels)]):
        anchors[f] = (a,)
    facets = (
        Facet(dots=dots[0], slots=1, anchors=anchors[0]),  # cap1
        Facet(dots=dots[1], slots=1, anchors=anchors[1]),  # disk1
        Facet(dots=dots[2], slots=2, anchors=anchors[2]),  # band
        Facet(dots=dots[3], slots=1, anchors=anchors[3]),  # disk2
        Facet(dots=dots[4], slots=1, anchors=anchors[4]),  # cap2
    )
    seams = (
        SeamCircle(((0, 0), (2, 0), (1, 0))),
        SeamCircle(((2, 1), (4, 0), (3, 0))),
    )
    signs = ()
    if theory == ORIENTED and labels:
        signs = tuple((1, 1, -1, -1)[: len(labels)])
    return Foam3(theory, facets, seams, tuple(labels), signs)


def add_bubble(foam, facet_id, dots_first=0, dots_second=0):
    """Attach a bubble away from the line: the host facet gains one
    boundary slot and two new disk facets appear at a fresh seam, the
    first directly preceding the second in the cyclic order."""
    host = foam.facets[facet_id]
    facets = list(foam.facets)
    facets[facet_id] = replace(host, slots=host.slots + 1)
    a = len(facets)
    facets.append(Facet(dots=dots_first, slots=1))
    facets.append(Facet(dots=dots_second, slots=1))
    seam = SeamCircle(((facet_id, host.slots), (a, 0), (a + 1, 0)))
    return replace(foam, facets=tuple(facets), seams=foam.seams + (seam,))


def add_membrane(foam, facet_a, facet_b, cyclic_ab=True, dots=0):
    """Stretch a disk membrane between two facets along a fresh seam.

    cyclic order is (a, b, membrane) when cyclic_ab, else (b, a, membrane).
    """
    fa, fb = foam.facets[facet_a], foam.facets[facet_b]
    facets = list(foam.facets)
    facets[facet_a] = replace(fa, slots=fa.slots + 1)
    if facet_a == facet_b:
        raise ValueError("membrane needs two distinct facets")
    facets[facet_b] = replace(facets[facet_b], slots=facets[facet_b].slots + 1)
    m = len(facets)
    facets.append(Facet(dots=dots, slots=1))
    first = (facet_a, fa.slots) if cyclic_ab else (facet_b, fb.slots)
    second = (facet_b, fb.slots) if cyclic_ab else (facet_a, fa.slots)
    seam = SeamCircle((first, second, (m, 0)))
    return replace(foam, facets=tuple(facets), seams=foam.seams + (seam,))


def add_wiggle(foam, facet_id, label):
    """Push a facet across the line and back: two new anchor points with
    the given label and opposite intersection signs."""
    host = foam.facets[facet_id]
    a0 = len(foam.anchor_labels)
    facets = list(foam.facets)
    facets[facet_id] = replace(host, anchors=host.anchors + (a0, a0 + 1))
    labels = foam.anchor_labels + (label, label)
    signs = (
        foam.anchor_signs + (1, -1) if foam.theory == ORIENTED else ()
    )
    return replace(
        foam, facets=tuple(facets), anchor_labels=labels, anchor_signs=signs
    )


def foam_disjoint_union(*foams):
    theory = foams[0].theory
    facets = []
    seams = []
    labels = []
    signs = []
    for f in foams:
        if f.theory != theory:
            raise ValueError("mixed theories")
        foff = len(facets)
        aoff = len(labels)
        for facet in f.facets:
            facets.append(
                replace(facet, anchors=tuple(a + aoff for a in facet.anchors))
            )
        for seam in f.seams:
            seams.append(
                SeamCircle(tuple((fi + foff, s) for fi, s in seam.sides))
            )
        labels.extend(f.anchor_labels)
        signs.extend(f.anchor_signs)
    return Foam3(
        theory,
        tuple(facets),
        tuple(seams),
        tuple(labels),
        tuple(signs) if theory == ORIENTED else (),
    )


def _random_block(rng, theory, allow_anchors=True):
    kind = rng.choice(("surface", "surface", "theta", "theta", "double"))
    if kind == "surface":
        lab = rng.choice((1, 2, 3))
        k = rng.randint(0, 2) if allow_anchors else 0
        foam = closed_surface_foam(
            theory,
            genus=rng.randint(0, 2),
            dots=rng.randint(0, 3),
            labels=(lab,) * (2 * k),
        )
    elif kind == "theta":
        perm = [1, 2, 3]
        rng.shuffle(perm)
        anchored = rng.random() < 0.7 and allow_anchors
        foam = theta_foam(
            theory,
            labels=tuple(perm) if anchored else (),
            dots=tuple(rng.randint(0, 2) for _ in range(3)),
            genus=(rng.randint(0, 1), 0, 0),
            cyclic=rng.choice(("TBM", "TMB")),
        )
    else:
        perm = [1, 2, 3]
        rng.shuffle(perm)
        disk2 = rng.choice([perm[0], perm[1]])
        cap2 = perm[1] if disk2 == perm[0] else perm[0]
        labels = (perm[0], perm[1], disk2, cap2) if allow_anchors else ()
        foam = double_theta_foam(
            theory,
            labels=labels,
            dots=tuple(rng.randint(0, 1) for _ in range(5)),
        )
    if rng.random() < 0.4:
        foam = add_bubble(
            foam, rng.randrange(len(foam.facets)), rng.randint(0, 1), rng.randint(0, 1)
        )
    if allow_anchors and rng.random() < 0.3:
        f = rng.randrange(len(foam.facets))
        foam = add_wiggle(foam, f, rng.choice((1, 2, 3)))
    return foam


def random_foam(rng, theory, max_blocks=2, max_facets=6, allow_anchors=True):
    """Random embeddable anchored foam with at most max_facets facets."""
    while True:
        nblocks = rng.randint(1, max_blocks)
        blocks = [
            _random_block(rng, theory, allow_anchors) for _ in range(nblocks)
        ]
        foam = foam_disjoint_union(*blocks)
        if len(foam.facets) <= max_facets:
            return foam


def random_colorable_foam(rng, theory, **kw):
    from .foams import admissible_colorings

    while True:
        foam = random_foam(rng, theory, **kw)
        if admissible_colorings(foam):
            return foam


# -- random annular cobordisms ------------------------------------------------


def identity_cobordism(config):
    comps = []
    for pos, c in enumerate(config.circles):
        comps.append(Surface2Component(bottom=(pos,), top=(pos,)))
    return Cobordism2(tuple(comps), (), config, config)


def _elementary(config, rng):
    """One random elementary annular cobordism from config; returns
    (cobordism, new config) or None when nothing applies."""
    circles = list(config.circles)
    moves = []
    ncont = sum(1 for c in circles if c.kind == "contractible")
    ess = [(c.index, pos) for pos, c in enumerate(circles) if c.kind == "essential"]
    ess.sort()
    moves.append("cup")
    if ncont:
        moves.append("cap")
        moves.append("split_cc")
        moves.append("split_d")
        if ncont >= 2:
            moves.append("merge_cc")
        if ess:
            moves.append("merge_a")
    if ess:
        moves.append("split_c")
        if len(ess) >= 2:
            moves.append("merge_b")
    move = rng.choice(moves)
    return _apply_move(config, move, rng)


def _apply_move(config, move, rng):
    from .surfaces import Circle, CONTRACTIBLE, ESSENTIAL

    circles = list(config.circles)
    cont_pos = [p for p, c in enumerate(circles) if c.kind == CONTRACTIBLE]
    ess_sorted = sorted(
        (c.index, p) for p, c in enumerate(circles) if c.kind == ESSENTIAL
    )

    def build(new_circles, component_specs):
        new_config = CircleConfig(tuple(new_circles))
        comps = []
        used_bottom = set()
        for spec in component_specs:
            comps.append(spec)
            used_bottom.update(spec.bottom)
        # product annuli over untouched circles
        mapping = _carry_map(config, new_config, component_specs)
        for old_pos, new_pos in mapping:
            comps.append(Surface2Component(bottom=(old_pos,), top=(new_pos,)))
        return Cobordism2(tuple(comps), (), config, new_config), new_config

    if move == "cup":
        new = circles + [Circle(CONTRACTIBLE)]
        spec = Surface2Component(top=(len(circles),))
        return build(new, [spec])
    if move == "cap":
        p = rng.choice(cont_pos)
        new = circles[:p] + circles[p + 1 :]
        dots = rng.randint(0, 1)
        spec = Surface2Component(dots=dots, bottom=(p,))
        return build(new, [spec])
    if move == "merge_cc":
        p, q = sorted(rng.sample(cont_pos, 2))
        new = circles[:q] + circles[q + 1 :]
        spec = Surface2Component(genus=0, bottom=(p, q), top=(p,))
        return build(new, [spec])
    if move == "split_cc":
        p = rng.choice(cont_pos)
        new = circles[: p + 1] + [Circle(CONTRACTIBLE)] + circles[p + 1 :]
        spec = Surface2Component(bottom=(p,), top=(p, p + 1))
        return build(new, [spec])
    if move == "merge_a":
        p = rng.choice(cont_pos)
        _, q = rng.choice(ess_sorted)
        new = circles[:p] + circles[p + 1 :]
        qq = q if q < p else q - 1
        spec = Surface2Component(bottom=(min(p, q), max(p, q)), top=(qq,))
        return build(new, [spec])
    if move == "split_c":
        _, q = rng.choice(ess_sorted)
        new = circles[: q + 1] + [Circle(CONTRACTIBLE)] + circles[q + 1 :]
        spec = Surface2Component(bottom=(q,), top=(q, q + 1))
        return build(new, [spec])
    if move == "merge_b":
        k = rng.randrange(len(ess_sorted) - 1)
        (_, p), (_, q) = ess_sorted[k], ess_sorted[k + 1]
        lo, hi = min(p, q), max(p, q)
        new = []
        for pos, c in enumerate(circles):
            if pos == lo:
                new.append(Circle(CONTRACTIBLE))
            elif pos == hi:
                continue
            elif c.kind == ESSENTIAL and c.index > ess_sorted[k + 1][0]:
                new.append(Circle(ESSENTIAL, c.index - 2))
            else:
                new.append(c)
        spec = Surface2Component(bottom=(lo, hi), top=(lo,))
        return build(new, [spec])
    if move == "split_d":
        p = rng.choice(cont_pos)
        depth = rng.randint(0, len(ess_sorted))
        new = []
        for pos, c in enumerate(circles):
            if c.kind == ESSENTIAL and c.index >= depth:
                new.append(Circle(ESSENTIAL, c.index + 2))
            else:
                new.append(c)
        new[p] = Circle(ESSENTIAL, depth)
        new.insert(p + 1, Circle(ESSENTIAL, depth + 1))
        spec = Surface2Component(bottom=(p,), top=(p, p + 1))
        return build(new, [spec])
    raise AssertionError(move)


def _carry_map(old_config, new_config, specs):
    """Positional correspondence for circles untouched by the event."""
    used_old = set()
    used_new = set()
    for s in specs:
        used_old.update(s.bottom)
        used_new.update(s.top)
    old_left = [p for p in range(len(old_config.circles)) if p not in used_old]
    new_left = [p for p in range(len(new_config.circles)) if p not in used_new]
    if len(old_left) != len(new_left):
        raise AssertionError("carry mismatch")
    # untouched circles keep their relative order and their kinds
    return list(zip(old_left, new_left))


def random_annular_cobordism(rng, start=None, steps=3):
    """(cobordism, C0, C1): a composite of random elementary annular moves."""
    from .surfaces import compose

    config = start if start is not None else CircleConfig.of(
        *rng.choice(["c", "e", "ce", "ee"])
    )
    current = identity_cobordism(config)
    for _ in range(steps):
        step, config = _elementary(config, rng)
        current = compose(current, step)
    return current, current.bottom, current.top
