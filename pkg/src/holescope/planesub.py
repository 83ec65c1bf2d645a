"""Plane star-plus-spanning-tree subdrawings and empty 4-cycles through a vertex."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .drawing import Drawing, DrawingError, Edge, edge
from .holes import CycleWitness, canonical_cycle, is_empty_cycle, _plane


@dataclass(frozen=True)
class PlaneSubdrawing:
    center: int
    star_edges: tuple[Edge, ...]
    tree_edges: tuple[Edge, ...]
    faces: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.star_edges + self.tree_edges

    def star_faces_ok(self) -> bool:
        """Every face has the center on its boundary and exactly two star edges."""
        v = self.center
        for face in self.faces:
            k = len(face)
            star = sum(1 for i in range(k) if v in (face[i], face[(i + 1) % k]))
            if face.count(v) != 1 or star != 2:
                return False
        return True


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _connected(n: int, v: int, edges) -> bool:
    parent = list(range(n + 1))
    for a, b in edges:
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            parent[ra] = rb
    roots = {_find(parent, x) for x in range(1, n + 1) if x != v}
    return len(roots) == 1


def _spanning_tree(d: Drawing, v: int, candidates: list[Edge]) -> list[Edge] | None:
    """Backtracking over pairwise non-crossing spanning trees of V - v."""
    n = d.n
    eid, cm = d._eid, d.cross_masks
    ids = {e: eid[e[0]][e[1]] for e in candidates}

    def rec(chosen: list[Edge], comp: list[int], avail: list[Edge]) -> list[Edge] | None:
        if len(chosen) == n - 2:
            return chosen
        if not _connected(n, v, chosen + avail):
            return None
        avail_bits = 0
        for e in avail:
            avail_bits |= 1 << ids[e]
        best = min(avail, key=lambda e: ((cm[ids[e]] & avail_bits).bit_count(), e))
        # include
        a, b = comp[best[0]], comp[best[1]]
        merged = [a if c == b else c for c in comp]
        bits = cm[ids[best]]
        nxt = [
            e for e in avail
            if e != best and not bits >> ids[e] & 1 and merged[e[0]] != merged[e[1]]
        ]
        found = rec(chosen + [best], merged, nxt)
        if found is not None:
            return found
        return rec(chosen, comp, [e for e in avail if e != best])

    comp = list(range(n + 1))
    return rec([], comp, list(candidates))


def trace_faces(p: PlaneSubdrawing, d: Drawing) -> tuple[tuple[int, ...], ...]:
    """Faces of the plane subdrawing on the sphere via the restricted rotation system."""
    if d.rotations is None:
        raise DrawingError("rotations required")
    nbrs: dict[int, set[int]] = {}
    for a, b in p.edges:
        nbrs.setdefault(a, set()).add(b)
        nbrs.setdefault(b, set()).add(a)
    rot = {u: [x for x in d.rotation(u) if x in nbrs[u]] for u in nbrs}
    succ = {u: {r[i]: r[(i + 1) % len(r)] for i in range(len(r))} for u, r in rot.items()}
    seen: set[tuple[int, int]] = set()
    faces = []
    for a, b in sorted(p.edges):
        for dart in ((a, b), (b, a)):
            if dart in seen:
                continue
            walk = []
            cur = dart
            while cur not in seen:
                seen.add(cur)
                walk.append(cur[0])
                u, w = cur
                cur = (w, succ[w][u])
            faces.append(tuple(walk))
    vcount = len(nbrs)
    if vcount - len(p.edges) + len(faces) != 2:
        raise DrawingError("rotation data inconsistent: Euler check failed")
    return tuple(faces)


def find_plane_star_tree(d: Drawing, v: int) -> PlaneSubdrawing:
    if d.rotations is None:
        raise DrawingError("rotations required")
    if d.n < 4:
        raise DrawingError("need n >= 4")
    if not 1 <= v <= d.n:
        raise DrawingError("vertex out of range")
    star = tuple(edge(v, x) for x in d.vertices if x != v)
    star_bits = d.edge_mask(star)
    cm = d.cross_masks
    candidates = [
        e for e in itertools.combinations([x for x in d.vertices if x != v], 2)
        if not cm[d.eid(*e)] & star_bits
    ]
    tree = _spanning_tree(d, v, candidates)
    if tree is None:
        raise DrawingError("no plane star+tree found")
    p = PlaneSubdrawing(v, star, tuple(sorted(tree)))
    return PlaneSubdrawing(v, star, p.tree_edges, trace_faces(p, d))


def _cycle_from_faces(p: PlaneSubdrawing) -> tuple[int, ...] | None:
    v = p.center

    def at_center(face):
        i = face.index(v)
        return face[i:] + face[:i]

    for face in p.faces:
        if len(face) == 4 and len(set(face)) == 4:
            return canonical_cycle(face)
    triangles = [at_center(f) for f in p.faces if len(f) == 3 and v in f]
    for f1, f2 in itertools.combinations(triangles, 2):
        # f1 = v->x->y, f2 = v->y->z share the star edge {v, y}
        for a, b in ((f1, f2), (f2, f1)):
            _, x, y = a
            _, y2, z = b
            if y == y2 and x != z:
                return canonical_cycle((v, x, y, z))
    return None


def scan_empty_4cycle_through(d: Drawing, v: int) -> tuple[int, ...] | None:
    others = [x for x in d.vertices if x != v]
    for a, b, c in itertools.combinations(others, 3):
        for cyc in ((v, a, b, c), (v, a, c, b), (v, b, a, c)):
            if _plane(d, cyc) and d.side_mask(cyc)[1] == 0:
                return canonical_cycle(cyc)
    return None


def empty_4cycle_through(d: Drawing, v: int, method: list | None = None) -> CycleWitness:
    """An empty 4-cycle through v: plane star+tree faces, else exhaustive scan.

    When ``method`` is a list, the route taken ("faces" or "scan") is appended.
    """
    if d.n < 4:
        raise DrawingError("need n >= 4")
    cyc = None
    route = "scan"
    if d.rotations is not None:
        cyc = _cycle_from_faces(find_plane_star_tree(d, v))
        route = "faces"
    if cyc is None:
        cyc = scan_empty_4cycle_through(d, v)
        route = "scan"
    if cyc is None:
        raise DrawingError(f"no empty 4-cycle through {v}")
    w = is_empty_cycle(d, cyc)
    if not w.empty or v not in w.cycle:
        raise DrawingError(f"witness {cyc} does not re-validate")
    if method is not None:
        method.append(route)
    return w
