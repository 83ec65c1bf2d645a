"""Crossing-pair model of simple drawings of complete graphs.

A drawing of K_n is stored as the set of its crossing edge pairs plus an
optional rotation system (counterclockwise cyclic order of neighbours at each
vertex).  Sides of plane cycles are recovered by crossing parity: two
off-cycle vertices lie on the same side iff the edge joining them crosses the
cycle an even number of times.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .predicates import ccw_order, orient, segments_cross

Edge = tuple[int, int]
CrossingPair = tuple[Edge, Edge]

FORMAT_VERSION = 1


class DrawingError(ValueError):
    """Raised when drawing data violates an operation's preconditions."""


def edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def crossing_pair(e: Sequence[int], f: Sequence[int]) -> CrossingPair:
    e, f = edge(*e), edge(*f)
    return (e, f) if e <= f else (f, e)


def cycle_edges(cycle: Sequence[int]) -> list[Edge]:
    k = len(cycle)
    return [edge(cycle[i], cycle[(i + 1) % k]) for i in range(k)]


def _rotate_to_min(seq: Sequence[int]) -> tuple[int, ...]:
    if not seq:
        return tuple(seq)
    i = seq.index(min(seq))
    return tuple(seq[i:]) + tuple(seq[:i])


@dataclass(frozen=True)
class Drawing:
    n: int
    crossings: frozenset = frozenset()
    rotations: tuple | None = None
    label: str = ""
    points: tuple | None = field(default=None, compare=True)

    def __post_init__(self):
        object.__setattr__(
            self, "crossings", frozenset(crossing_pair(e, f) for e, f in self.crossings)
        )
        if self.rotations is not None:
            object.__setattr__(
                self, "rotations", tuple(_rotate_to_min(list(r)) for r in self.rotations)
            )
        if self.points is not None:
            object.__setattr__(
                self, "points", tuple((int(x), int(y)) for x, y in self.points)
            )

    # -- indexing caches -------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def all_mask(self) -> int:
        return sum(1 << v for v in self.vertices)

    @cached_property
    def _eid(self) -> list[list[int]]:
        table = [[-1] * (self.n + 1) for _ in range(self.n + 1)]
        for i, (a, b) in enumerate(itertools.combinations(self.vertices, 2)):
            table[a][b] = table[b][a] = i
        return table

    def eid(self, a: int, b: int) -> int:
        return self._eid[a][b]

    def edge_mask(self, edges: Iterable[Edge]) -> int:
        m = 0
        for a, b in edges:
            m |= 1 << self._eid[a][b]
        return m

    @cached_property
    def cross_masks(self) -> list[int]:
        """Per edge id, bitmask over edge ids of the edges crossing it."""
        masks = [0] * (self.n * (self.n - 1) // 2)
        for e, f in self.crossings:
            if not all(1 <= v <= self.n for v in (*e, *f)):
                continue
            i, j = self._eid[e[0]][e[1]], self._eid[f[0]][f[1]]
            if i < 0 or j < 0:
                continue
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return masks

    def edges_cross(self, e: Edge, f: Edge) -> bool:
        return bool(self.cross_masks[self._eid[e[0]][e[1]]] >> self._eid[f[0]][f[1]] & 1)

    def crossing_count(self, a: int, b: int, edge_bits: int) -> int:
        """Number of edges in ``edge_bits`` crossed by edge {a, b}."""
        return (self.cross_masks[self._eid[a][b]] & edge_bits).bit_count()

    @cached_property
    def vertex_cross_masks(self) -> list[list[int]]:
        """``[eid][u]``: bitmask of vertices w such that edge {u, w} crosses edge eid."""
        table = [[0] * (self.n + 1) for _ in range(self.n * (self.n - 1) // 2)]
        for e, f in self.crossings:
            if not all(1 <= v <= self.n for v in (*e, *f)):
                continue
            ie, jf = self._eid[e[0]][e[1]], self._eid[f[0]][f[1]]
            table[ie][f[0]] |= 1 << f[1]
            table[ie][f[1]] |= 1 << f[0]
            table[jf][e[0]] |= 1 << e[1]
            table[jf][e[1]] |= 1 << e[0]
        return table

    def side_mask(self, cycle: Sequence[int]) -> tuple[int, int]:
        """Parity classes of the off-cycle vertices.

        Returns ``(reference, opposite)``: the smallest off-cycle vertex and the
        bitmask of off-cycle vertices on the other side from it.  No
        consistency check; see :func:`classify_sides` for the checked version.
        """
        on = 0
        for v in cycle:
            on |= 1 << v
        rest = self.all_mask & ~on
        if not rest:
            return 0, 0
        ref = (rest & -rest).bit_length() - 1
        table, eid = self.vertex_cross_masks, self._eid
        parity = 0
        k = len(cycle)
        for i in range(k):
            a, b = cycle[i], cycle[(i + 1) % k]
            parity ^= table[eid[a][b]][ref]
        return ref, parity & rest

    @cached_property
    def _triangle_sides(self) -> dict:
        return {}

    def triangle_side(self, a: int, b: int, c: int) -> int:
        """Bitmask of vertices off triangle abc on the other side from the smallest one."""
        key = (a, b, c) if a < b < c else tuple(sorted((a, b, c)))
        cache = self._triangle_sides
        got = cache.get(key)
        if got is None:
            got = cache[key] = self.side_mask(key)[1]
        return got

    # -- rotations ---------------------------------------------------------

    @cached_property
    def rotation_position(self) -> list[dict[int, int]] | None:
        if self.rotations is None:
            return None
        return [{}] + [{u: i for i, u in enumerate(rot)} for rot in self.rotations]

    def rotation(self, v: int) -> tuple[int, ...]:
        if self.rotations is None:
            raise DrawingError("rotations required")
        return self.rotations[v - 1]

    def with_label(self, label: str) -> "Drawing":
        return Drawing(self.n, self.crossings, self.rotations, label, self.points)

    def __repr__(self) -> str:
        rot = "rotations" if self.rotations is not None else "no rotations"
        return f"Drawing(n={self.n}, {len(self.crossings)} crossings, {rot}, label={self.label!r})"


# -- K_4 rotation catalog ----------------------------------------------------

_MATCHINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def _triple_sign(cyclic: Sequence[int]) -> int:
    # +1 iff the 3-cycle lists its sorted elements in increasing cyclic order
    p, q, r = sorted(cyclic)
    return 1 if tuple(_rotate_to_min(list(cyclic))) == (p, q, r) else -1


@lru_cache(maxsize=None)
def k4_catalog() -> dict[tuple[int, int, int, int], int]:
    """Realizable K_4 rotation signatures and the matching that crosses.

    Built by brute force over every 4-point general-position subset of a
    4x4 integer grid under all labelings; the grid is mirror symmetric so
    reflected rotation systems are included.  Keys are the orientation signs
    of the induced rotation at local vertices 0..3; values index into the
    three perfect matchings (-1: plane K_4).
    """
    grid = [(x, y) for x in range(4) for y in range(4)]
    catalog: dict[tuple[int, int, int, int], int] = {}
    for quad in itertools.combinations(grid, 4):
        if any(orient(*t) == 0 for t in itertools.combinations(quad, 3)):
            continue
        for pts in itertools.permutations(quad):
            key = tuple(
                _triple_sign(ccw_order(pts[i], [(j, pts[j]) for j in range(4) if j != i]))
                for i in range(4)
            )
            cross = -1
            for m, ((a, b), (c, d)) in enumerate(_MATCHINGS):
                if segments_cross(pts[a], pts[b], pts[c], pts[d]):
                    cross = m
            if catalog.setdefault(key, cross) != cross:
                raise AssertionError(f"K_4 catalog conflict at {key}")
    return catalog


def k4_signature(d: Drawing, quad: Sequence[int]) -> tuple[int, int, int, int]:
    pos = d.rotation_position
    key = []
    for i, v in enumerate(quad):
        others = [u for u in quad if u != v]
        others.sort(key=lambda u: pos[v][u])
        key.append(_triple_sign([quad.index(u) for u in others]))
    return tuple(key)


def k4_crossing_index(d: Drawing, quad: Sequence[int]) -> int:
    found = -1
    for m, ((a, b), (c, d_)) in enumerate(_MATCHINGS):
        if d.edges_cross(edge(quad[a], quad[b]), edge(quad[c], quad[d_])):
            if found >= 0:
                return -2
            found = m
    return found


# -- validation ----------------------------------------------------------------

def _rotation_violations(d: Drawing) -> list[str]:
    out = []
    if len(d.rotations) != d.n:
        return [f"rotation system has {len(d.rotations)} entries, expected {d.n}"]
    for v in d.vertices:
        rot = d.rotations[v - 1]
        expected = set(d.vertices) - {v}
        if len(rot) != d.n - 1 or set(rot) != expected:
            out.append(f"rotation of {v} is not a permutation of the other vertices")
    return out


def validate(d: Drawing) -> list[str]:
    """All violated drawing invariants, each naming the offending subset."""
    if d.n < 1:
        return [f"vertex count {d.n} < 1"]
    out: list[str] = []
    for e, f in sorted(d.crossings):
        verts = (*e, *f)
        if any(not 1 <= v <= d.n for v in verts):
            out.append(f"vertex out of range in crossing {list(e)} x {list(f)}")
        elif e[0] == e[1] or f[0] == f[1]:
            out.append(f"degenerate edge in crossing {list(e)} x {list(f)}")
        elif e == f:
            out.append(f"edge {list(e)} crosses itself")
        elif len(set(verts)) < 4:
            out.append(f"adjacent edges cross: {list(e)} x {list(f)}")
    if out:
        return out
    per_quad: dict[tuple[int, ...], int] = {}
    for e, f in d.crossings:
        q = tuple(sorted((*e, *f)))
        per_quad[q] = per_quad.get(q, 0) + 1
    for q, c in sorted(per_quad.items()):
        if c > 1:
            out.append(f"K_4 rule: {{{','.join(map(str, q))}}} has {c} crossing pairs")
    if d.rotations is not None:
        rot_out = _rotation_violations(d)
        out.extend(rot_out)
        if not rot_out and not out:
            out.extend(rotation_crossing_conflicts(d))
    return out


def rotation_crossing_conflicts(d: Drawing) -> list[str]:
    """4-subsets whose induced rotations disagree with the K_4 catalog."""
    catalog = k4_catalog()
    out = []
    for quad in itertools.combinations(d.vertices, 4):
        key = k4_signature(d, quad)
        if key not in catalog:
            out.append(f"rotations of {{{','.join(map(str, quad))}}} not realizable")
        elif catalog[key] != k4_crossing_index(d, quad):
            out.append(f"rotation/crossing mismatch on {{{','.join(map(str, quad))}}}")
    return out


# -- parity predicates ---------------------------------------------------------

def crosses(d: Drawing, e: Sequence[int], f: Sequence[int]) -> bool:
    e, f = edge(*e), edge(*f)
    if len({*e, *f}) < 4:
        raise DrawingError("not independent")
    for v in (*e, *f):
        if not 1 <= v <= d.n:
            raise DrawingError(f"vertex {v} out of range")
    return d.edges_cross(e, f)


def separated_by_triangle(d: Drawing, t: Iterable[int], v: int, w: int) -> bool:
    t = tuple(sorted(set(t)))
    if len(t) != 3:
        raise DrawingError("triangle needs three distinct vertices")
    if v in t or w in t:
        raise DrawingError("vertex on triangle")
    if v == w:
        raise DrawingError("v and w must differ")
    return bool(d.crossing_count(v, w, d.edge_mask(cycle_edges(t))) & 1)


@dataclass(frozen=True)
class SideClassification:
    cycle: tuple[int, ...]
    class_a: frozenset
    class_b: frozenset

    @property
    def classes(self) -> tuple[frozenset, frozenset]:
        return self.class_a, self.class_b


def _plane_cycle(d: Drawing, cycle: Sequence[int]) -> bool:
    es = cycle_edges(cycle)
    return not any(
        d.edges_cross(e, f)
        for e, f in itertools.combinations(es, 2)
        if len({*e, *f}) == 4
    )


def classify_sides(d: Drawing, cycle: Sequence[int]) -> SideClassification:
    cycle = tuple(cycle)
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise DrawingError("cycle needs at least 3 distinct vertices")
    if not _plane_cycle(d, cycle):
        raise DrawingError("cycle not plane")
    bits = d.edge_mask(cycle_edges(cycle))
    rest = [v for v in d.vertices if v not in cycle]
    if not rest:
        return SideClassification(cycle, frozenset(), frozenset())
    ref = rest[0]
    parity = {ref: 0}
    for x in rest[1:]:
        parity[x] = d.crossing_count(x, ref, bits) & 1
    for u, w in itertools.combinations(rest[1:], 2):
        if d.crossing_count(u, w, bits) & 1 != parity[u] ^ parity[w]:
            raise DrawingError("invalid drawing data: inconsistent side parity")
    a = frozenset(x for x in rest if parity[x] == 0)
    b = frozenset(x for x in rest if parity[x] == 1)
    return SideClassification(cycle, a, b)


# -- relabeling --------------------------------------------------------------

def relabel(d: Drawing, mapping: dict[int, int], n: int | None = None, label: str | None = None) -> Drawing:
    """Apply a vertex map to crossings, rotations and points."""
    n = d.n if n is None else n
    crossings = frozenset(
        crossing_pair((mapping[a], mapping[b]), (mapping[c], mapping[e]))
        for (a, b), (c, e) in d.crossings
        if all(v in mapping for v in (a, b, c, e))
    )
    rotations = None
    if d.rotations is not None:
        rot = [None] * n
        for v in d.vertices:
            if v in mapping:
                rot[mapping[v] - 1] = tuple(mapping[u] for u in d.rotations[v - 1] if u in mapping)
        rotations = tuple(rot)
    points = None
    if d.points is not None:
        pts = [None] * n
        for v in d.vertices:
            if v in mapping:
                pts[mapping[v] - 1] = d.points[v - 1]
        points = tuple(pts)
    return Drawing(n, crossings, rotations, d.label if label is None else label, points)


def induced_subdrawing(d: Drawing, s: Iterable[int]) -> Drawing:
    """Subdrawing on ``s``, relabeled 1..|s| preserving index order."""
    s = sorted(set(s))
    if len(s) < 2:
        raise DrawingError("induced subdrawing needs at least 2 vertices")
    if s[0] < 1 or s[-1] > d.n:
        raise DrawingError("vertex out of range")
    mapping = {v: i + 1 for i, v in enumerate(s)}
    return relabel(d, mapping, len(s), label=f"{d.label}[{','.join(map(str, s))}]")


def find_isomorphism(d1: Drawing, d2: Drawing) -> dict[int, int] | None:
    """A vertex bijection carrying the crossing pairs of d1 onto those of d2."""
    if d1.n != d2.n or len(d1.crossings) != len(d2.crossings):
        return None
    n = d1.n

    def profile(d: Drawing) -> list[tuple[int, ...]]:
        counts = [0] * (n + 1)
        for e, f in d.crossings:
            for v in (*e, *f):
                counts[v] += 1
        return counts

    p1, p2 = profile(d1), profile(d2)
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int) -> bool:
        assigned = list(mapping)
        for trio in itertools.combinations([u for u in assigned if u != v], 3):
            quad = (*trio, v)
            for (a, b), (c, e) in (
                ((quad[0], quad[1]), (quad[2], quad[3])),
                ((quad[0], quad[2]), (quad[1], quad[3])),
                ((quad[0], quad[3]), (quad[1], quad[2])),
            ):
                x1 = d1.edges_cross(edge(a, b), edge(c, e))
                x2 = d2.edges_cross(
                    edge(mapping[a], mapping[b]), edge(mapping[c], mapping[e])
                )
                if x1 != x2:
                    return False
        return True

    def extend(v: int) -> bool:
        if v > n:
            return True
        for w in range(1, n + 1):
            if w in used or p1[v] != p2[w]:
                continue
            mapping[v] = w
            used.add(w)
            if consistent(v) and extend(v + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if extend(1) else None


# -- serialization -------------------------------------------------------------

def to_document(d: Drawing) -> dict:
    doc = {
        "n": d.n,
        "label": d.label,
        "crossings": [[list(e), list(f)] for e, f in sorted(d.crossings)],
    }
    if d.rotations is not None:
        doc["rotations"] = [list(r) for r in d.rotations]
    if d.points is not None:
        doc["points"] = [list(p) for p in d.points]
    return doc


def from_document(doc: dict) -> Drawing:
    try:
        n = int(doc["n"])
        crossings = [
            (tuple(int(v) for v in e), tuple(int(v) for v in f))
            for e, f in doc["crossings"]
        ]
        rotations = doc.get("rotations")
        if rotations is not None:
            rotations = tuple(tuple(int(v) for v in r) for r in rotations)
        points = doc.get("points")
        if points is not None:
            points = tuple((int(x), int(y)) for x, y in points)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise DrawingError(f"malformed drawing document: {exc!r}") from exc
    return Drawing(n, frozenset(crossings), rotations, str(doc.get("label", "")), points)


def dumps(d: Drawing) -> str:
    return json.dumps(to_document(d)) + "\n"


def loads(text: str) -> Drawing:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DrawingError(f"not a JSON drawing document: {exc}") from exc
    return from_document(doc)


def load(path) -> Drawing:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(d: Drawing, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(d))
