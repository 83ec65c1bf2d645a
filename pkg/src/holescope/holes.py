"""Gons, holes, empty cycles and convexity predicates.

Everything here works from crossing parity alone except the wedge test in
:func:`chord_in_empty_side`, which needs a rotation system.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .drawing import (
    Drawing,
    DrawingError,
    Edge,
    SideClassification,
    classify_sides,
    cycle_edges,
    edge,
)


def _mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Start at the smallest vertex, continue towards its smaller neighbour."""
    cycle = list(cycle)
    i = cycle.index(min(cycle))
    cycle = cycle[i:] + cycle[:i]
    if len(cycle) > 2 and cycle[-1] < cycle[1]:
        cycle = [cycle[0]] + cycle[:0:-1]
    return tuple(cycle)


@dataclass(frozen=True)
class GonCertificate:
    order: tuple[int, ...]
    boundary: tuple[Edge, ...]
    diagonals_verified: bool = True

    @property
    def k(self) -> int:
        return len(self.order)

    @property
    def vertices(self) -> frozenset:
        return frozenset(self.order)


@dataclass(frozen=True)
class HoleRecord:
    gon: GonCertificate
    interior: frozenset

    @property
    def is_hole(self) -> bool:
        return not self.interior


@dataclass(frozen=True)
class CycleWitness:
    cycle: tuple[int, ...]
    plane: bool
    sides: SideClassification | None
    empty: bool
    empty_side_tag: str | None

    def to_document(self) -> dict:
        doc = {"cycle": list(self.cycle), "plane": self.plane, "empty": self.empty,
               "empty_side": self.empty_side_tag}
        if self.sides is not None:
            doc["class_a"] = sorted(self.sides.class_a)
            doc["class_b"] = sorted(self.sides.class_b)
        return doc


@dataclass(frozen=True)
class TriangleRecord:
    vertices: tuple[int, int, int]
    sides: SideClassification
    empty_side: str


@dataclass(frozen=True)
class ConvexityVerdict:
    convex: bool
    counterexample: tuple[int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.convex


# -- cycles ---------------------------------------------------------------------

def _check_cycle(d: Drawing, cycle: Sequence[int]) -> tuple[int, ...]:
    cycle = tuple(cycle)
    if len(cycle) < 3:
        raise DrawingError("cycle needs at least 3 vertices")
    if len(set(cycle)) != len(cycle):
        raise DrawingError("repeated vertex in cycle")
    if any(not 1 <= v <= d.n for v in cycle):
        raise DrawingError("vertex out of range")
    return cycle


def _plane(d: Drawing, cycle: Sequence[int]) -> bool:
    es = cycle_edges(cycle)
    k = len(es)
    for i in range(k):
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            if d.edges_cross(es[i], es[j]):
                return False
    return True


def is_plane_cycle(d: Drawing, cycle: Sequence[int]) -> bool:
    return _plane(d, _check_cycle(d, cycle))


def is_empty_cycle(d: Drawing, cycle: Sequence[int]) -> CycleWitness:
    cycle = _check_cycle(d, cycle)
    if not _plane(d, cycle):
        return CycleWitness(cycle, False, None, False, None)
    sides = classify_sides(d, cycle)
    if not sides.class_a and not sides.class_b:
        tag = "both"
    elif not sides.class_b:
        tag = "b"
    elif not sides.class_a:
        tag = "a"
    else:
        tag = None
    return CycleWitness(cycle, True, sides, tag is not None, tag)


def _cycles_on(quad: Sequence[int]) -> list[tuple[int, ...]]:
    a, b, c, e = quad
    return [(a, b, c, e), (a, b, e, c), (a, c, b, e)]


def cycles_on_subset(s: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Each undirected Hamiltonian cycle on ``s`` once, in canonical form."""
    s = sorted(s)
    first, rest = s[0], s[1:]
    for perm in itertools.permutations(rest):
        if perm[0] < perm[-1]:
            yield (first, *perm)


def empty_cycles(d: Drawing, k: int = 4) -> list[tuple[int, ...]]:
    """All empty k-cycles, canonical and lexicographically sorted."""
    if k < 3 or k > d.n:
        return []
    out = []
    for s in itertools.combinations(d.vertices, k):
        for cyc in cycles_on_subset(s):
            if _plane(d, cyc) and d.side_mask(cyc)[1] == 0:
                out.append(cyc)
    return sorted(out)


# -- triangles ------------------------------------------------------------------

def empty_triangles(d: Drawing) -> list[TriangleRecord]:
    out = []
    for t in itertools.combinations(d.vertices, 3):
        if d.triangle_side(*t) == 0:
            sides = classify_sides(d, t)
            tag = "both" if not sides.class_a else "b"
            out.append(TriangleRecord(t, sides, tag))
    return out


def count_empty_triangles(d: Drawing) -> int:
    return sum(1 for t in itertools.combinations(d.vertices, 3) if d.triangle_side(*t) == 0)


def _separated_from(d: Drawing, t: Sequence[int], w_mask: int) -> int:
    """Off-triangle vertices separated by t from every vertex of ``w_mask``.

    Returns 0 when the vertices of ``w_mask`` do not all lie on one side.
    """
    opp = d.triangle_side(*t)
    tm = _mask(t)
    if w_mask & opp == w_mask:
        return d.all_mask & ~tm & ~opp
    if w_mask & opp == 0:
        return opp
    return 0


def triangle_side_convex(d: Drawing, t: Sequence[int], side_class: Iterable[int]) -> bool:
    """Convexity of one side of triangle t, given by its off-triangle vertices."""
    t = tuple(sorted(t))
    side = frozenset(side_class)
    sides = classify_sides(d, t)
    if side not in (sides.class_a, sides.class_b):
        raise DrawingError("mismatched side_class")
    return _side_convex(d, t, _mask(side))


def _side_convex(d: Drawing, t: Sequence[int], side: int) -> bool:
    a, b, c = t
    table, eid = d.vertex_cross_masks, d._eid
    ea, eb, ec = eid[b][c], eid[a][c], eid[a][b]  # edge opposite a, b, c
    ta, tb, tc = table[ea], table[eb], table[ec]
    s = side
    while s:
        low = s & -s
        u = low.bit_length() - 1
        if (ta[u] | tb[u] | tc[u]) & side:
            return False
        s ^= low
    if ta[a] & side or tb[b] & side or tc[c] & side:
        return False
    return True


def is_convex_drawing(d: Drawing) -> ConvexityVerdict:
    """Every triangle has a side whose vertex pairs are joined inside it."""
    if d.n < 3:
        raise DrawingError("convexity needs n >= 3")
    for t in itertools.combinations(d.vertices, 3):
        opp = d.triangle_side(*t)
        same = d.all_mask & ~_mask(t) & ~opp
        if not (_side_convex(d, t, same) or _side_convex(d, t, opp)):
            return ConvexityVerdict(False, t)
    return ConvexityVerdict(True)


# -- gons -------------------------------------------------------------------------

def _gon_order(d: Drawing, s: Sequence[int]) -> tuple[int, ...] | None:
    k = len(s)
    if k == 3:
        return tuple(s)
    eid, cm = d._eid, d.cross_masks
    pairs = list(itertools.combinations(s, 2))
    within = 0
    for a, b in pairs:
        within |= 1 << eid[a][b]
    adj: dict[int, list[int]] = {v: [] for v in s}
    for a, b in pairs:
        if not cm[eid[a][b]] & within:
            adj[a].append(b)
            adj[b].append(a)
    if any(len(nb) != 2 for nb in adj.values()):
        return None
    start = s[0]
    order = [start]
    prev, cur = start, min(adj[start])
    while cur != start:
        order.append(cur)
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        prev, cur = cur, nxt
        if len(order) > k:
            return None
    if len(order) != k:
        return None
    pos = {v: i for i, v in enumerate(order)}
    chords = [(min(pos[a], pos[b]), max(pos[a], pos[b]), eid[a][b]) for a, b in pairs]
    for (i1, j1, e1), (i2, j2, e2) in itertools.combinations(chords, 2):
        if len({i1, j1, i2, j2}) < 4:
            continue
        interleaved = i1 < i2 < j1 < j2 or i2 < i1 < j2 < j1
        if interleaved != bool(cm[e1] >> e2 & 1):
            return None
    return tuple(order)


def _certificate(order: Sequence[int]) -> GonCertificate:
    order = canonical_cycle(order)
    return GonCertificate(order, tuple(cycle_edges(order)), True)


def is_k_gon(d: Drawing, s: Iterable[int]) -> GonCertificate | None:
    s = sorted(set(s))
    if len(s) < 3:
        raise DrawingError("a gon needs at least 3 vertices")
    order = _gon_order(d, s)
    return None if order is None else _certificate(order)


def _interior_mask(d: Drawing, order: Sequence[int]) -> int:
    gm = _mask(order)
    interior = 0
    for t in itertools.combinations(sorted(order), 3):
        interior |= _separated_from(d, t, gm & ~_mask(t))
    return interior & ~gm


def interior_vertices(d: Drawing, g: GonCertificate) -> frozenset:
    if g.k < 4:
        raise DrawingError("interior vertices undefined for triangles")
    return frozenset(_members(_interior_mask(d, g.order)))


def _gon_search(d: Drawing, k: int, pool: Sequence[int], holes_only: bool) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Lexicographic DFS over k-subsets of ``pool`` that are gons (or holes).

    Every subset of a gon is a gon and every subset of a hole with at least
    three vertices is a hole or an empty triangle, so prefixes failing the
    test are pruned without losing any k-set.
    """
    pool = sorted(pool)
    m = len(pool)

    def ok(prefix: list[int]) -> tuple[int, ...] | None:
        if len(prefix) < 3:
            return tuple(prefix)
        if len(prefix) == 3:
            if holes_only and d.triangle_side(*prefix) != 0:
                return None
            return tuple(prefix)
        order = _gon_order(d, prefix)
        if order is None:
            return None
        if holes_only and _interior_mask(d, order):
            return None
        return order

    def rec(prefix: list[int], start: int):
        need = k - len(prefix)
        for i in range(start, m - need + 1):
            prefix.append(pool[i])
            order = ok(prefix)
            if order is not None:
                if len(prefix) == k:
                    yield tuple(prefix), order
                else:
                    yield from rec(prefix, i + 1)
            prefix.pop()

    if k > m:
        return
    yield from rec([], 0)


def enumerate_k_gons(d: Drawing, k: int, pool: Sequence[int] | None = None) -> Iterator[GonCertificate]:
    if k < 3:
        raise DrawingError("k must be at least 3")
    for _, order in _gon_search(d, k, d.vertices if pool is None else pool, False):
        yield _certificate(order)


def enumerate_k_holes(d: Drawing, k: int) -> list[HoleRecord]:
    """All k-holes (4 <= k <= n) in lexicographic order of vertex sets."""
    if k < 4 or k > d.n:
        raise DrawingError("k-holes need 4 <= k <= n")
    return [
        HoleRecord(_certificate(order), frozenset())
        for _, order in _gon_search(d, k, d.vertices, True)
    ]


def count_four_holes(d: Drawing) -> int:
    count = 0
    for quad in itertools.combinations(d.vertices, 4):
        order = _gon_order(d, quad)
        if order is not None and not _interior_mask(d, order):
            count += 1
    return count


# -- empty 4-triangulations -----------------------------------------------------

def _split_chord(cycle: Sequence[int], chord: Edge) -> tuple[int, int, int, int]:
    """(u, prev, opposite, next) for the chord endpoint u = chord[0] in cycle order."""
    i = cycle.index(chord[0])
    j = cycle.index(chord[1])
    if (j - i) % 4 != 2:
        raise DrawingError("chord must join opposite cycle vertices")
    return cycle[i], cycle[(i - 1) % 4], cycle[(i + 2) % 4], cycle[(i + 1) % 4]


def chord_in_empty_side(d: Drawing, cycle: Sequence[int], chord: Sequence[int]) -> bool:
    """Wedge test: does the chord leave its endpoint into the cycle's empty side?"""
    if d.rotations is None:
        raise DrawingError("rotations required")
    cycle = _check_cycle(d, cycle)
    if len(cycle) != 4:
        raise DrawingError("chord test needs a 4-cycle")
    w = is_empty_cycle(d, cycle)
    if not w.empty:
        raise DrawingError("cycle not empty")
    if w.empty_side_tag == "both":
        return True
    u, left, opp, right = _split_chord(cycle, tuple(chord))
    witness = min(w.sides.class_a | w.sides.class_b)
    far = d.edge_mask([edge(left, opp), edge(opp, right)])
    into_empty = bool(d.crossing_count(u, witness, far) & 1)
    pos = d.rotation_position[u]
    start, stop = pos[left], pos[right]
    span = (stop - start) % (d.n - 1)

    def arc(x: int) -> bool:
        return 0 < (pos[x] - start) % (d.n - 1) < span

    same_wedge = arc(opp) == arc(witness)
    return same_wedge if into_empty else not same_wedge


def _chord_by_parity(d: Drawing, cycle: Sequence[int], chord: Edge) -> bool:
    u, left, opp, right = _split_chord(cycle, chord)
    rest = d.all_mask & ~_mask(cycle)
    first = _separated_from(d, (u, left, opp), 1 << right) & rest
    second = _separated_from(d, (u, opp, right), 1 << left) & rest
    return not first and not second


def is_empty_4_triangulation(d: Drawing, cycle: Sequence[int], route: str = "auto") -> bool:
    """Empty 4-cycle whose empty side is split by a chord into two empty triangles.

    ``route`` picks the chord test: "rotation" (wedge test), "parity" (both
    chord triangles have a vertex-free side away from the remaining cycle
    vertex) or "auto" (rotation when available).
    """
    cycle = _check_cycle(d, cycle)
    if len(cycle) != 4:
        raise DrawingError("4-triangulations need a 4-cycle")
    if not _plane(d, cycle):
        return False
    if d.side_mask(cycle)[1] != 0:
        return False
    if route == "auto":
        route = "rotation" if d.rotations is not None else "parity"
    chords = [edge(cycle[0], cycle[2]), edge(cycle[1], cycle[3])]
    if route == "rotation":
        return any(chord_in_empty_side(d, cycle, c) for c in chords)
    if route == "parity":
        if d.n == 4:
            return True
        return any(_chord_by_parity(d, cycle, c) for c in chords)
    raise ValueError(f"unknown route {route!r}")


def empty_4_triangulations(d: Drawing, route: str = "auto") -> list[tuple[int, ...]]:
    out = []
    for quad in itertools.combinations(d.vertices, 4):
        for cyc in _cycles_on(quad):
            if is_empty_4_triangulation(d, cyc, route):
                out.append(canonical_cycle(cyc))
    return sorted(out)


def triangulation_route_disagreements(d: Drawing) -> list[tuple[int, ...]]:
    """4-cycles on which the wedge test and the parity test disagree."""
    if d.rotations is None:
        return []
    out = []
    for quad in itertools.combinations(d.vertices, 4):
        for cyc in _cycles_on(quad):
            if is_empty_4_triangulation(d, cyc, "rotation") != is_empty_4_triangulation(d, cyc, "parity"):
                out.append(canonical_cycle(cyc))
    return out


def monochromatic_4_triangulations(d: Drawing, coloring: dict[int, str], route: str = "auto") -> list[dict]:
    if set(coloring) != set(d.vertices) or not set(coloring.values()) <= {"A", "B"}:
        raise DrawingError("coloring must map every vertex to 'A' or 'B'")
    out = []
    for quad in itertools.combinations(d.vertices, 4):
        colors = {coloring[v] for v in quad}
        if len(colors) != 1:
            continue
        for cyc in _cycles_on(quad):
            if is_empty_4_triangulation(d, cyc, route):
                out.append({"cycle": list(canonical_cycle(cyc)), "color": colors.pop()})
                break
    return out


# -- minimal gons ---------------------------------------------------------------

def _require_convex(d: Drawing) -> None:
    if not is_convex_drawing(d):
        raise DrawingError("requires convex drawing")


def minimal_k_gon(d: Drawing, k: int, start: GonCertificate | None = None, check_convex: bool = True) -> GonCertificate | None:
    """Descend from ``start`` (default: lexicographically first k-gon).

    Each step replaces the gon by a k-gon inside its closed convex side with
    the fewest interior vertices; the interior count strictly drops.
    """
    if k < 4:
        raise DrawingError("minimal gons need k >= 4")
    if check_convex:
        _require_convex(d)
    if start is None:
        start = next(enumerate_k_gons(d, k), None)
        if start is None:
            return None
    current = start.order
    current_interior = _interior_mask(d, current)
    while current_interior:
        closed = _members(_mask(current) | current_interior)
        best = None
        for vs, order in _gon_search(d, k, closed, False):
            if set(vs) == set(current):
                continue
            count = _interior_mask(d, order).bit_count()
            if best is None or count < best[0]:
                best = (count, order)
        if best is None:
            break
        if best[0] >= current_interior.bit_count():
            raise DrawingError(
                f"gon {sorted(current)} contains gon {sorted(best[1])} without fewer interior vertices"
            )
        current = best[1]
        current_interior = _interior_mask(d, current)
    return _certificate(current)


def is_minimal(d: Drawing, g: GonCertificate) -> bool:
    interior = _interior_mask(d, g.order)
    if not interior:
        return True
    closed = _members(_mask(g.order) | interior)
    return all(set(vs) == set(g.order) for vs, _ in _gon_search(d, g.k, closed, False))


def boundary_triangle_violations(d: Drawing, g: GonCertificate) -> list[dict]:
    """Interior vertices inside the gon-vertex-free side of some v_i v_{i+1} v_{i+2}."""
    out = []
    order, k = g.order, g.k
    gm = _mask(order)
    interior = _interior_mask(d, order)
    for i in range(k):
        t = (order[i], order[(i + 1) % k], order[(i + 2) % k])
        inside = _separated_from(d, sorted(t), gm & ~_mask(t)) & interior
        if inside:
            out.append({"triangle": list(t), "interior": _members(inside)})
    return out


def interior_rotation_violations(d: Drawing, g: GonCertificate) -> list[dict]:
    """Interior vertices around which the gon vertices are not in gon order."""
    if d.rotations is None:
        raise DrawingError("rotations required")
    out = []
    target = canonical_cycle(g.order)
    gs = set(g.order)
    for u in sorted(interior_vertices(d, g)):
        seen = [x for x in d.rotation(u) if x in gs]
        if canonical_cycle(seen) != target:
            out.append({"vertex": u, "rotation": seen})
    return out


def check_inner_side_convexity(d: Drawing, g: GonCertificate, check_convex: bool = True, check_minimal: bool = True) -> list[dict]:
    """Triangles in a minimal gon's closed side whose inner side is not convex."""
    if g.k < 5:
        raise DrawingError("inner-side convexity is stated for k >= 5")
    if check_convex:
        _require_convex(d)
    if check_minimal and not is_minimal(d, g):
        raise DrawingError("gon is not minimal")
    gm = _mask(g.order)
    closed_mask = gm | _interior_mask(d, g.order)
    closed = _members(closed_mask)
    out = []
    for t in itertools.combinations(closed, 3):
        tm = _mask(t)
        outside = gm & ~tm
        if not outside:
            continue
        opp = d.triangle_side(*t)
        if outside & opp == outside:
            inner = d.all_mask & ~tm & ~opp
        elif outside & opp == 0:
            inner = opp
        else:
            out.append({"triangle": list(t), "reason": "gon vertices on both sides"})
            continue
        inner &= closed_mask
        if not _side_convex(d, t, inner):
            out.append({"triangle": list(t), "reason": "inner side not convex"})
    return out


# -- 4-holes on crossed edges ---------------------------------------------------

def uncrossed_edges(d: Drawing) -> list[Edge]:
    cm = d.cross_masks
    return [e for e in itertools.combinations(d.vertices, 2) if not cm[d.eid(*e)]]


def _crossing_edges(d: Drawing, e: Edge) -> list[Edge]:
    bits = d.cross_masks[d.eid(*e)]
    return [f for f in itertools.combinations(d.vertices, 2) if bits >> d.eid(*f) & 1]


def chord_4hole_for_edge(d: Drawing, e: Sequence[int], check_convex: bool = True) -> HoleRecord:
    """A 4-hole having ``e`` as one of its two crossing diagonals."""
    e = edge(*e)
    if check_convex:
        _require_convex(d)
    partners = _crossing_edges(d, e)
    if not partners:
        raise DrawingError("uncrossed edge")
    f = partners[0]
    order = _gon_order(d, sorted({*e, *f}))
    if order is None:
        raise DrawingError(f"{e} x {f} does not span a 4-gon")
    interior = _interior_mask(d, order)
    while interior:
        closed = _mask(order) | interior
        best = None
        for g in partners:
            if g == f or not (_mask(g) & ~closed) == 0:
                continue
            o = _gon_order(d, sorted({*e, *g}))
            if o is None:
                continue
            count = _interior_mask(d, o).bit_count()
            if best is None or count < best[0]:
                best = (count, g, o)
        if best is None or best[0] >= interior.bit_count():
            raise DrawingError(f"no smaller 4-gon on {e} inside {sorted(order)}")
        _, f, order = best
        interior = _interior_mask(d, order)
    return HoleRecord(_certificate(order), frozenset())
