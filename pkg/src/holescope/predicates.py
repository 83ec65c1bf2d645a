"""Exact integer orientation predicates for straight-line drawings."""

from __future__ import annotations

from functools import cmp_to_key

COORD_LIMIT = 10**6

Point = tuple[int, int]


def check_coordinate(p: Point) -> None:
    x, y = p
    if not (isinstance(x, int) and isinstance(y, int)):
        raise TypeError(f"coordinates must be integers, got {p!r}")
    if abs(x) > COORD_LIMIT or abs(y) > COORD_LIMIT:
        raise ValueError(f"coordinate {p!r} outside |x|,|y| <= {COORD_LIMIT}")


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the turn p -> q -> r: +1 counterclockwise, -1 clockwise, 0 collinear."""
    det = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (det > 0) - (det < 0)


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff the open segments ab and cd meet in a single proper crossing.

    Assumes the four points are in general position; segments sharing an
    endpoint never cross.
    """
    if len({a, b, c, d}) < 4:
        return False
    return (
        orient(a, b, c) * orient(a, b, d) < 0
        and orient(c, d, a) * orient(c, d, b) < 0
    )


def _half(v: Point) -> int:
    # 0 for directions in [0, pi), 1 for [pi, 2pi)
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _cmp_direction(u: Point, v: Point) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def ccw_order(center: Point, others: list[tuple[int, Point]]) -> list[int]:
    """Labels of ``others`` sorted counterclockwise by direction from ``center``."""
    keyed = [
        (label, (p[0] - center[0], p[1] - center[1])) for label, p in others
    ]
    keyed.sort(key=cmp_to_key(lambda s, t: _cmp_direction(s[1], t[1])))
    return [label for label, _ in keyed]
