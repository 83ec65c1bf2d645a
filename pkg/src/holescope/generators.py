"""Closed-form drawing families: convex gons, twisted drawings, T'_n and D_n."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .drawing import Drawing, DrawingError, Edge, crossing_pair, edge, rotation_crossing_conflicts


def convex_gon(k: int) -> Drawing:
    """C_k: {i,l} crosses {j,m} iff i<j<l<m; vertices counterclockwise."""
    if k < 3:
        raise DrawingError("convex_gon needs k >= 3")
    crossings = frozenset(
        crossing_pair((i, l), (j, m)) for i, j, l, m in itertools.combinations(range(1, k + 1), 4)
    )
    rotations = tuple(
        tuple(((i - 1 + s) % k) + 1 for s in range(1, k)) for i in range(1, k + 1)
    )
    return Drawing(k, crossings, rotations, f"C_{k}")


def twisted_rotations(k: int) -> tuple[tuple[int, ...], ...]:
    # cylindrical realization: at i, i+1..k then i-1 down to 1
    return tuple(
        tuple(range(i + 1, k + 1)) + tuple(range(i - 1, 0, -1)) for i in range(1, k + 1)
    )


def twisted(k: int) -> Drawing:
    """T_k: {i,m} crosses {j,l} iff i<j<l<m."""
    if k < 3:
        raise DrawingError("twisted needs k >= 3")
    crossings = frozenset(
        crossing_pair((i, m), (j, l)) for i, j, l, m in itertools.combinations(range(1, k + 1), 4)
    )
    d = Drawing(k, crossings, twisted_rotations(k), f"T_{k}")
    if rotation_crossing_conflicts(d):
        return Drawing(k, crossings, None, f"T_{k}")
    return d


def twisted_prime_crossings(n: int) -> set:
    out = set()
    rest = [v for v in range(1, n + 1) if v != 2]
    for i, j, k, l in itertools.combinations(rest, 4):
        out.add(crossing_pair((i, l), (j, k)))
    out.add(crossing_pair((1, 2), (3, n)))
    out.add(crossing_pair((1, 2), (3, 4)))
    for i in range(5, n + 1):
        out.add(crossing_pair((1, 2), (4, i)))
    out.add(crossing_pair((2, 4), (3, n)))
    for j in range(5, n):
        out.add(crossing_pair((2, j), (1, 3)))
        out.add(crossing_pair((2, j), (3, n)))
        for m in range(j + 1, n + 1):
            out.add(crossing_pair((2, j), (1, m)))
        for i, k in itertools.combinations(range(3, j), 2):
            out.add(crossing_pair((2, j), (i, k)))
    for i, j in itertools.combinations(range(4, n), 2):
        out.add(crossing_pair((2, n), (i, j)))
    return out


def twisted_prime(k: int) -> Drawing:
    """T'_k: T_{k-1} on [k] minus {2} with vertex 2 rerouted; no rotations."""
    if k < 6:
        raise DrawingError("twisted_prime needs k >= 6")
    return Drawing(k, frozenset(twisted_prime_crossings(k)), None, f"T'_{k}")


@dataclass(frozen=True)
class DnStep:
    new_vertex: int
    anchor_index: int
    anchor_edge: Edge
    cell_choice: str
    wedge_neighbor: int
    direction: int


def _dn_build(k: int) -> tuple[Drawing, list[DnStep]]:
    base = convex_gon(5)
    rot = {v: list(base.rotations[v - 1]) for v in base.vertices}
    crossings = set(base.crossings)
    steps: list[DnStep] = []
    for q in range(6, k + 1):
        p = q - 1
        if q % 2 == 0:
            anchor, forbidden = q - 3, q - 2
        else:
            anchor, forbidden = q - 2, q - 4
        rp = rot[p]
        m = len(rp)
        idx = rp.index(anchor)
        after, before = rp[(idx + 1) % m], rp[(idx - 1) % m]
        if forbidden not in (after, before):
            raise DrawingError(
                f"D_{q}: {forbidden} not next to {anchor} in the rotation of {p}"
            )
        s = -1 if after == forbidden else 1
        neighbour = before if s == -1 else after
        winding = [rp[(idx + s * t) % m] for t in range(1, m)]

        crossed_by = {}
        for e, f in crossings:
            crossed_by.setdefault(e, set()).add(f)
            crossed_by.setdefault(f, set()).add(e)
        new = set()
        for j, x in enumerate(winding):
            for y in winding[:j]:
                new.add(crossing_pair((q, x), (p, y)))
        for y in winding:
            new.add(crossing_pair((q, anchor), (p, y)))
        for x in rp:
            for f in crossed_by.get(edge(p, x), ()):
                new.add(crossing_pair((q, x), f))
        crossings |= new

        rp.insert(idx + 1 if s == 1 else idx, q)
        rot[q] = [p if u == q else u for u in rp]
        for x in rp:
            if x == q:
                continue
            rx = rot[x]
            i = rx.index(p)
            rx.insert(i + 1 if s == 1 else i, q)
        steps.append(
            DnStep(q, anchor, edge(anchor, p), f"{p}:{anchor}|{neighbour}", neighbour, s)
        )
    rotations = tuple(tuple(rot[v]) for v in range(1, k + 1))
    cells = ",".join(st.cell_choice for st in steps)
    label = f"D_{k}" + (f" cells {cells}" if cells else "")
    return Drawing(k, frozenset(crossings), rotations, label), steps


def dn_steps(k: int) -> list[DnStep]:
    return _dn_build(k)[1]


def dn_family(k: int) -> Drawing:
    """D_k: C_5 grown by duplicating the newest vertex next to a chosen edge.

    Vertex q is placed beside q-1 in the wedge next to e_q = {i_q, q-1}
    avoiding the edge named by the parity rule; its edges wind around q-1
    away from that wedge and then shadow the corresponding edges of q-1.
    """
    if k < 5 or k % 2 == 0:
        raise DrawingError("dn_family needs odd k >= 5")
    d, _ = _dn_build(k)
    counts = {}
    for e, f in d.crossings:
        quad = tuple(sorted((*e, *f)))
        counts[quad] = counts.get(quad, 0) + 1
    if len(counts) != len(d.crossings) or len(counts) != _binom4(k):
        raise DrawingError(f"D_{k} construction is not crossing-maximal")
    return d


def _binom4(n: int) -> int:
    return n * (n - 1) * (n - 2) * (n - 3) // 24


FAMILIES = {
    "convex": convex_gon,
    "twisted": twisted,
    "twisted-prime": twisted_prime,
    "dn": dn_family,
}
