"""Equivariant annular homology of braid closures.

The cube of resolutions smooths each crossing (0-smoothing of a positive
crossing is the identity smoothing), traces circles through the trace
closure, and applies the circle state-space functor: contractible circles
carry the rank-two Frobenius module with basis {1, X}, essential circles
the anchored-disk basis, alternating between the plain and primed bases
radially from the outermost circle.  Differentials preserve the annular
degree and the shifted quantum degree; homology is extracted at
specializations of the two equivariant parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInconsistency, InvariantViolation
from .linalg import Matrix, smith_normal_form
from .rings import RING_SL2, specialize
from .surfaces import Circle, CircleConfig, CONTRACTIBLE, ESSENTIAL

_R = RING_SL2
_A1 = _R.var(1)
_A2 = _R.var(2)
_E1 = _R.elementary_symmetric(1)
_E2 = _R.elementary_symmetric(2)
_ONE = _R.one()


@dataclass(frozen=True)
class BraidWord:
    strands: int
    word: tuple

    def __post_init__(self):
        if self.strands < 1:
            raise InvariantViolation("need at least one strand")
        for w in self.word:
            if w == 0 or abs(w) >= self.strands:
                raise InvariantViolation("letter %r outside the braid group" % (w,))

    @property
    def positives(self):
        return sum(1 for w in self.word if w > 0)

    @property
    def negatives(self):
        return sum(1 for w in self.word if w < 0)


@dataclass(frozen=True)
class ResCircle:
    kind: str  # "c" | "e"
    ports: frozenset
    winding: int
    radial: int  # radial order for essential circles, 0 = outermost
    key: tuple  # deterministic ordering key


@dataclass(frozen=True)
class Resolution:
    braid: BraidWord
    vertex: tuple
    circles: tuple  # contractible first, then essentials outermost-first

    def circle_config(self):
        circles = []
        for c in self.circles:
            if c.kind == "c":
                circles.append(Circle(CONTRACTIBLE))
            else:
                circles.append(Circle(ESSENTIAL, c.radial))
        return CircleConfig(tuple(circles))


def _is_capcup(letter, bit):
    return bit == 1 if letter > 0 else bit == 0


def resolve(braid, vertex):
    """Resolution at a cube vertex: circles traced through the closure.

    Essential circles (nonzero net signed passes through the closure) must
    wind exactly once; contractible circles wind zero times.
    """
    n = braid.strands
    length = len(braid.word)
    if len(vertex) != length:
        raise InvariantViolation("vertex length differs from word length")

    def pid(level, pos):
        return level * n + (pos - 1)

    edges = []  # (port a, port b, winding when traversed a -> b)
    for t, letter in enumerate(braid.word):
        i = abs(letter)
        if _is_capcup(letter, vertex[t]):
            edges.append((pid(t, i), pid(t, i + 1), 0))
            edges.append((pid(t + 1, i), pid(t + 1, i + 1), 0))
            for p in range(1, n + 1):
                if p not in (i, i + 1):
                    edges.append((pid(t, p), pid(t + 1, p), 0))
        else:
            for p in range(1, n + 1):
                edges.append((pid(t, p), pid(t + 1, p), 0))
    closure_pos = {}
    for p in range(1, n + 1):
        closure_pos[len(edges)] = p
        edges.append((pid(length, p), pid(0, p), 1))

    nports = (length + 1) * n
    incident = [[] for _ in range(nports)]
    for e, (a, b, _) in enumerate(edges):
        incident[a].append(e)
        incident[b].append(e)
    for lst in incident:
        if len(lst) != 2:
            raise InternalInconsistency("port degree is not two")

    seen_edges = [False] * len(edges)
    circles = []
    for start in range(len(edges)):
        if seen_edges[start]:
            continue
        winding = 0
        ports = set()
        closure_positions = []
        e = start
        a, b, _ = edges[e]
        port = a  # traverse e from a to b first
        while True:
            a, b, w = edges[e]
            seen_edges[e] = True
            if port == a:
                winding += w
                nxt = b
            else:
                winding -= w
                nxt = a
            if w:
                closure_positions.append(closure_pos[e])
            ports.add(a)
            ports.add(b)
            e2 = [x for x in incident[nxt] if x != e]
            e = e2[0] if e2 else e
            port = nxt
            if e == start and port == edges[start][0]:
                break
        circles.append((winding, frozenset(ports), closure_positions))

    contractibles = []
    essentials = []
    for winding, ports, cpos in circles:
        if winding == 0:
            contractibles.append((min(ports), ports))
        else:
            if abs(winding) != 1:
                raise InternalInconsistency("essential circle winds more than once")
            essentials.append((min(cpos), ports, winding))
    contractibles.sort()
    essentials.sort()
    out = [
        ResCircle("c", ports, 0, 0, ("c", key))
        for key, ports in contractibles
    ]
    out.extend(
        ResCircle("e", ports, w, radial, ("e", radial))
        for radial, (key, ports, w) in enumerate(essentials)
    )
    return Resolution(braid, tuple(vertex), tuple(out))


# -- factor-level saddle maps ------------------------------------------------
# keys are local source bit tuples; values are lists of (target bits, coeff)

_MERGE_CC = {
    (0, 0): [((0,), _ONE)],
    (0, 1): [((1,), _ONE)],
    (1, 0): [((1,), _ONE)],
    (1, 1): [((1,), _E1), ((0,), -_E2)],
}
_SPLIT_CC = {
    (0,): [((0, 1), _ONE), ((1, 0), _ONE), ((0, 0), -_E1)],
    (1,): [((1, 1), _ONE), ((0, 0), -_E2)],
}


def _merge_ec(primed):
    lo, hi = (_A2, _A1) if primed else (_A1, _A2)
    return {
        (0, 0): [((0,), _ONE)],
        (1, 0): [((1,), _ONE)],
        (0, 1): [((0,), lo)],
        (1, 1): [((1,), hi)],
    }


def _split_ec(primed):
    lo, hi = (_A2, _A1) if primed else (_A1, _A2)
    return {
        (0,): [((0, 1), _ONE), ((0, 0), -hi)],
        (1,): [((1, 1), _ONE), ((1, 0), -lo)],
    }


def _merge_ee(outer_primed):
    lo, hi = (_A2, _A1) if outer_primed else (_A1, _A2)
    return {
        (0, 0): [],
        (1, 1): [],
        (1, 0): [((1,), _ONE), ((0,), -lo)],
        (0, 1): [((1,), _ONE), ((0,), -hi)],
    }


def _split_ee(outer_primed):
    lo, hi = (_A2, _A1) if outer_primed else (_A1, _A2)
    return {
        (0,): [((0, 1), _ONE), ((1, 0), _ONE)],
        (1,): [((0, 1), lo), ((1, 0), hi)],
    }


@dataclass(frozen=True)
class EdgeMap:
    """One cube edge: reindexing of untouched circles plus a local event."""

    source: tuple  # vertex bits
    target: tuple
    crossing: int
    sign: int
    src_involved: tuple  # circle indices in the source resolution
    tgt_involved: tuple
    carry: tuple  # (src_idx, tgt_idx) pairs for untouched circles
    table: dict

    def apply(self, src_bits):
        """src_bits: bit tuple over source circles -> [(tgt bits, coeff)]."""
        local = tuple(src_bits[i] for i in self.src_involved)
        out = []
        for tgt_local, coeff in self.table[local]:
            bits = [0] * (len(self.carry) + len(self.tgt_involved))
            for s, t in self.carry:
                bits[t] = src_bits[s]
            for k, t in enumerate(self.tgt_involved):
                bits[t] = tgt_local[k]
            out.append((tuple(bits), coeff))
        return out


def _local_ports(braid, t):
    n = braid.strands
    i = abs(braid.word[t])

    def pid(level, pos):
        return level * n + (pos - 1)

    return {pid(t, i), pid(t, i + 1), pid(t + 1, i), pid(t + 1, i + 1)}


def _edge_map(braid, res_src, res_tgt, t):
    local = _local_ports(braid, t)
    src_inv = [k for k, c in enumerate(res_src.circles) if c.ports & local]
    tgt_inv = [k for k, c in enumerate(res_tgt.circles) if c.ports & local]
    tgt_lookup = {c.ports: k for k, c in enumerate(res_tgt.circles)}
    carry = []
    for k, c in enumerate(res_src.circles):
        if k in src_inv:
            continue
        j = tgt_lookup.get(c.ports)
        if j is None:
            raise InternalInconsistency("untouched circle lost across an edge")
        if res_tgt.circles[j].kind != c.kind:
            raise InternalInconsistency("untouched circle changed kind")
        if c.kind == "e" and (res_tgt.circles[j].radial - c.radial) % 2:
            raise InternalInconsistency("untouched circle changed parity")
        carry.append((k, j))

    def kinds(res, idx):
        return tuple(res.circles[k].kind for k in idx)

    if len(src_inv) == 2 and len(tgt_inv) == 1:
        ka, kb = kinds(res_src, src_inv)
        if ka == "c" and kb == "c":
            table = _MERGE_CC
        elif {"e", "c"} == {ka, kb}:
            if ka == "c":  # order factors (essential, contractible)
                src_inv = [src_inv[1], src_inv[0]]
            ess = res_src.circles[src_inv[0]]
            table = _merge_ec(ess.radial % 2 == 1)
        else:
            a, b = (res_src.circles[k] for k in src_inv)
            if a.radial > b.radial:
                src_inv = [src_inv[1], src_inv[0]]
                a, b = b, a
            if b.radial != a.radial + 1:
                raise InternalInconsistency("merged essentials not adjacent")
            table = _merge_ee(a.radial % 2 == 1)
    elif len(src_inv) == 1 and len(tgt_inv) == 2:
        ka, kb = kinds(res_tgt, tgt_inv)
        if ka == "c" and kb == "c":
            table = _SPLIT_CC
        elif {"e", "c"} == {ka, kb}:
            if ka == "c":
                tgt_inv = [tgt_inv[1], tgt_inv[0]]
            ess = res_tgt.circles[tgt_inv[0]]
            table = _split_ec(ess.radial % 2 == 1)
        else:
            a, b = (res_tgt.circles[k] for k in tgt_inv)
            if a.radial > b.radial:
                tgt_inv = [tgt_inv[1], tgt_inv[0]]
                a, b = b, a
            if b.radial != a.radial + 1:
                raise InternalInconsistency("split essentials not adjacent")
            table = _split_ee(a.radial % 2 == 1)
    else:
        raise InternalInconsistency("edge changes more than one circle")

    ones_below = sum(1 for s in range(t) if res_src.vertex[s])
    return EdgeMap(
        res_src.vertex,
        res_tgt.vertex,
        t,
        -1 if ones_below % 2 else 1,
        tuple(src_inv),
        tuple(tgt_inv),
        tuple(carry),
        table,
    )


def _word_bidegree(circles, bits):
    qdeg = 0
    adeg = 0
    for c, b in zip(circles, bits):
        if c.kind == "c":
            qdeg += 1 if b else -1
        else:
            adeg += 1 if b else -1
    return qdeg, adeg


@dataclass
class CubeComplex:
    braid: BraidWord
    resolutions: dict  # vertex bits -> Resolution
    edges: dict  # (vertex bits, crossing) -> EdgeMap

    @property
    def _shift(self):
        return 2 * self.braid.negatives - self.braid.positives

    def homological_degree(self, vertex):
        return sum(vertex) - self.braid.negatives

    def generator_bidegree(self, vertex, bits):
        q, a = _word_bidegree(self.resolutions[vertex].circles, bits)
        return q - sum(vertex) + self._shift, a

    def generators(self):
        """{h: [(vertex, bits, qdeg', adeg), ...]} over the whole cube."""
        table = {}
        for vertex, res in self.resolutions.items():
            h = self.homological_degree(vertex)
            k = len(res.circles)
            for mask in range(1 << k):
                bits = tuple((mask >> i) & 1 for i in range(k))
                q, a = self.generator_bidegree(vertex, bits)
                table.setdefault(h, []).append((vertex, bits, q, a))
        for h in table:
            table[h].sort()
        return table

    def differential(self, generators_by_h):
        """{h: sparse dict {(tgt index in h+1, src index in h): Poly}}."""
        index = {}
        for h, gens in generators_by_h.items():
            for i, (vertex, bits, _, _) in enumerate(gens):
                index[(vertex, bits)] = (h, i)
        diff = {h: {} for h in generators_by_h}
        for (vertex, t), edge in self.edges.items():
            h = self.homological_degree(vertex)
            for i, (v, bits, _, _) in enumerate(generators_by_h[h]):
                if v != vertex:
                    continue
                for tgt_bits, coeff in edge.apply(bits):
                    ht, j = index[(edge.target, tgt_bits)]
                    if ht != h + 1:
                        raise InternalInconsistency("edge skips a degree")
                    key = (j, i)
                    acc = diff[h].get(key)
                    value = coeff if edge.sign > 0 else -coeff
                    diff[h][key] = value if acc is None else acc + value
        for h in diff:
            diff[h] = {k: v for k, v in diff[h].items() if not v.is_zero()}
        return diff


def build_complex(braid):
    """Build the resolution cube with all edge maps; asserts d^2 = 0,
    annular-degree preservation, and quantum homogeneity of every edge."""
    length = len(braid.word)
    resolutions = {}
    for mask in range(1 << length):
        vertex = tuple((mask >> i) & 1 for i in range(length))
        resolutions[vertex] = resolve(braid, vertex)
    edges = {}
    for vertex, res in resolutions.items():
        for t in range(length):
            if vertex[t]:
                continue
            tgt = tuple(b if s != t else 1 for s, b in enumerate(vertex))
            edges[(vertex, t)] = _edge_map(braid, res, resolutions[tgt], t)
    cx = CubeComplex(braid, resolutions, edges)
    _check_edge_bidegrees(cx)
    _check_d_squared(cx)
    return cx


def _check_edge_bidegrees(cx):
    for (vertex, t), edge in cx.edges.items():
        src = cx.resolutions[vertex].circles
        tgt = cx.resolutions[edge.target].circles
        for local_src, images in edge.table.items():
            src_bits = [0] * len(src)
            for k, idx in enumerate(edge.src_involved):
                src_bits[idx] = local_src[k]
            q0, a0 = cx.generator_bidegree(vertex, tuple(src_bits))
            for tgt_bits, coeff in edge.apply(tuple(src_bits)):
                q1, a1 = cx.generator_bidegree(edge.target, tgt_bits)
                if a1 != a0:
                    raise InternalInconsistency("edge map changes annular degree")
                if coeff.degree() is None:
                    continue
                if not coeff.is_homogeneous() or q1 + coeff.degree() != q0:
                    raise InternalInconsistency("edge map not quantum homogeneous")


def _check_d_squared(cx):
    length = len(cx.braid.word)
    for vertex, res in cx.resolutions.items():
        free = [t for t in range(length) if not vertex[t]]
        for a_idx in range(len(free)):
            for b_idx in range(a_idx + 1, len(free)):
                t, u = free[a_idx], free[b_idx]
                e1 = cx.edges[(vertex, t)]
                e2 = cx.edges[(e1.target, u)]
                f1 = cx.edges[(vertex, u)]
                f2 = cx.edges[(f1.target, t)]
                k = len(res.circles)
                for mask in range(1 << k):
                    bits = tuple((mask >> i) & 1 for i in range(k))
                    acc = {}
                    for mid_bits, c1 in e1.apply(bits):
                        for out_bits, c2 in e2.apply(mid_bits):
                            coeff = c1 * c2 * (e1.sign * e2.sign)
                            acc[out_bits] = acc.get(out_bits, _R.zero()) + coeff
                    for mid_bits, c1 in f1.apply(bits):
                        for out_bits, c2 in f2.apply(mid_bits):
                            coeff = c1 * c2 * (f1.sign * f2.sign)
                            acc[out_bits] = acc.get(out_bits, _R.zero()) + coeff
                    if any(not v.is_zero() for v in acc.values()):
                        raise InternalInconsistency("d^2 != 0 on a cube face")


def _fraction_rank(rows, ncols):
    if not rows:
        return 0
    m = [list(r) for r in rows]
    rank = 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = Fraction(m[i][c], 1) / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        rank += 1
        if r == len(m):
            break
    return rank


def homology(cx, spec="aps"):
    """Bigraded homology table at a specialization.

    spec = "aps" sets both deformation parameters to zero and reports free
    rank plus torsion over the integers; spec = (r1, r2) uses rational
    values and reports dimensions.  Keys are (homological degree, quantum
    degree, annular degree).
    """
    if spec == "aps":
        assignment = {"a1": 0, "a2": 0}
        integral = True
    else:
        r1, r2 = spec
        assignment = {"a1": Fraction(r1), "a2": Fraction(r2)}
        integral = False
    gens = cx.generators()
    diffs = cx.differential(gens)

    def block_key(q, a):
        # the quantum grading survives only the zero specialization; at
        # generic rational values it degenerates to a filtration, so the
        # rational table is graded by annular degree alone (q reported 0)
        return (q, a) if integral else (0, a)

    blocks = {}
    index_in_block = {}
    for h, lst in gens.items():
        for i, (vertex, bits, q, a) in enumerate(lst):
            key = block_key(q, a)
            blk = blocks.setdefault(key, {})
            pos = len(blk.setdefault(h, []))
            blk[h].append((h, i))
            index_in_block[(h, i)] = pos

    specialized = {}
    for h, entries in diffs.items():
        for (j, i), poly in entries.items():
            val = specialize(poly, assignment)
            if val == 0:
                continue
            vertex, bits, q, a = gens[h][i]
            key = block_key(q, a)
            vt, bt, qt, at = gens[h + 1][j]
            if block_key(qt, at) != key:
                raise InternalInconsistency("differential leaves its block")
            specialized.setdefault(key, {}).setdefault(h, []).append(
                (index_in_block[(h + 1, j)], index_in_block[(h, i)], val)
            )

    table = {}
    for (q, a), blk in blocks.items():
        hs = sorted(blk)
        mats = {}
        for h in hs:
            n_src = len(blk[h])
            n_tgt = len(blk.get(h + 1, []))
            entries = specialized.get((q, a), {}).get(h, [])
            rows = [[0] * n_src for _ in range(n_tgt)]
            for j, i, val in entries:
                rows[j][i] += val
            mats[h] = (rows, n_src, n_tgt)
        for h in hs:
            n_h = len(blk[h])
            rows_out, _, _ = mats[h]
            rank_out = (
                _int_rank(rows_out) if integral else _fraction_rank(rows_out, n_h)
            )
            prev = mats.get(h - 1)
            if prev is None:
                rank_in, torsion = 0, []
            else:
                rows_in, n_prev, _ = prev
                if integral:
                    rank_in, torsion = _snf_rank_torsion(rows_in, n_prev)
                else:
                    rank_in, torsion = _fraction_rank(rows_in, n_prev), []
            free = n_h - rank_out - rank_in
            if free or torsion:
                table[(h, q, a)] = (free, tuple(torsion))
    return table


def _int_rank(rows):
    if not rows or not rows[0]:
        return 0
    return _fraction_rank(rows, len(rows[0]))


def _snf_rank_torsion(rows, ncols):
    if not rows or ncols == 0:
        return 0, []
    m = Matrix.make(rows)
    diag, _, _ = smith_normal_form(m)
    nonzero = [d for d in diag if d]
    return len(nonzero), [d for d in nonzero if d > 1]


def total_rank(table):
    return sum(free for free, _ in table.values())


def poincare_items(table):
    """Sorted (h, qdeg', adeg, free rank, torsion) rows."""
    return [
        (h, q, a, free, tors)
        for (h, q, a), (free, tors) in sorted(table.items())
    ]
