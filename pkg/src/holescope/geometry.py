"""Integer point sets in general position and their straight-line drawings."""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass

from .drawing import Drawing, DrawingError, crossing_pair
from .predicates import check_coordinate, ccw_order, orient, segments_cross

RANDOM_BOX = 10_000


@dataclass(frozen=True)
class PointConfig:
    points: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple((int(x), int(y)) for x, y in self.points))

    def check(self) -> None:
        if len(self.points) < 3:
            raise DrawingError("need at least 3 points")
        for p in self.points:
            check_coordinate(p)
        if len(set(self.points)) != len(self.points):
            raise DrawingError("duplicate point")
        for i, j, k in itertools.combinations(range(len(self.points)), 3):
            if orient(self.points[i], self.points[j], self.points[k]) == 0:
                raise DrawingError(
                    f"not in general position: points {i + 1},{j + 1},{k + 1} are collinear"
                )


def points_digest(points) -> str:
    text = ";".join(f"{x},{y}" for x, y in points)
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def from_points(p: PointConfig | list, label: str | None = None) -> Drawing:
    """Straight-line drawing: proper segment crossings, counterclockwise rotations."""
    if not isinstance(p, PointConfig):
        p = PointConfig(tuple(p))
    p.check()
    pts = p.points
    n = len(pts)
    crossings = set()
    for (a, b), (c, e) in itertools.combinations(itertools.combinations(range(n), 2), 2):
        if len({a, b, c, e}) == 4 and segments_cross(pts[a], pts[b], pts[c], pts[e]):
            crossings.add(crossing_pair((a + 1, b + 1), (c + 1, e + 1)))
    rotations = tuple(
        tuple(ccw_order(pts[v], [(u + 1, pts[u]) for u in range(n) if u != v]))
        for v in range(n)
    )
    if label is None:
        label = f"P_{n}#{points_digest(pts)}"
    return Drawing(n, frozenset(crossings), rotations, label, pts)


def random_points(n: int, seed: int, box: int = RANDOM_BOX) -> PointConfig:
    """Rejection-sample n integer points in [0, box)^2 in general position."""
    if n < 3:
        raise DrawingError("need n >= 3")
    rng = random.Random(seed)
    pts: list[tuple[int, int]] = []
    while len(pts) < n:
        cand = (rng.randrange(box), rng.randrange(box))
        if cand in pts:
            continue
        if any(orient(a, b, cand) == 0 for a, b in itertools.combinations(pts, 2)):
            continue
        pts.append(cand)
    return PointConfig(tuple(pts))


def random_convex_instance(n: int, seed: int) -> Drawing:
    """Seeded random geometric (hence convex) drawing of K_n."""
    pts = random_points(n, seed)
    return from_points(pts, label=f"R_{n}(seed={seed})")


def parse_points(text: str) -> PointConfig:
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DrawingError(f"line {lineno}: expected 'x y'")
        try:
            pts.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise DrawingError(f"line {lineno}: {exc}") from exc
    return PointConfig(tuple(pts))


def read_points(path) -> PointConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_points(fh.read())
