import pytest

from holescope.drawing import DrawingError, find_isomorphism, validate
from holescope.generators import convex_gon
from holescope.geometry import (
    PointConfig,
    from_points,
    parse_points,
    random_convex_instance,
    random_points,
)
from holescope.holes import is_convex_drawing
from holescope.predicates import segments_cross

SQUARE_PLUS = [(0, 0), (4, 0), (4, 4), (0, 4), (2, 1)]


def test_convex_position_is_convex_gon():
    d = from_points([(0, 0), (3, 0), (3, 3), (0, 3)])
    assert find_isomorphism(d, convex_gon(4)) is not None


def test_square_plus_center_crossings():
    d = from_points(SQUARE_PLUS)
    expected = set()
    for a in range(5):
        for b in range(a + 1, 5):
            for c in range(5):
                for e in range(c + 1, 5):
                    if (a, b) < (c, e) and len({a, b, c, e}) == 4 and segments_cross(
                            SQUARE_PLUS[a], SQUARE_PLUS[b], SQUARE_PLUS[c], SQUARE_PLUS[e]):
                        expected.add(((a + 1, b + 1), (c + 1, e + 1)))
    assert d.crossings == expected
    assert ((1, 3), (2, 4)) in d.crossings
    # 5 is inside triangle 123: edge {4,5} crosses {1,3} only
    assert [p for p in d.crossings if (4, 5) in p] == [((1, 3), (4, 5))]


def test_three_points_no_crossings():
    assert from_points([(0, 0), (1, 0), (0, 1)]).crossings == frozenset()


def test_general_position_checks():
    with pytest.raises(DrawingError, match="collinear"):
        from_points([(0, 0), (1, 1), (2, 2), (0, 5)])
    with pytest.raises(DrawingError, match="duplicate"):
        from_points([(0, 0), (1, 0), (0, 0)])
    with pytest.raises(ValueError):
        PointConfig(((0, 0), (10**7, 0), (0, 1))).check()


def test_random_instance_deterministic_and_convex():
    a = random_convex_instance(5, 1)
    assert a == random_convex_instance(5, 1)
    assert is_convex_drawing(a)
    assert validate(a) == []
    assert a.label == "R_5(seed=1)"


def test_random_points_general_position():
    PointConfig(random_points(25, 7).points).check()


def test_parse_points():
    p = parse_points("# header\n0 0\n4 0  # corner\n\n0 4\n")
    assert p.points == ((0, 0), (4, 0), (0, 4))
    with pytest.raises(DrawingError, match="line 1"):
        parse_points("1 2 3\n")
    with pytest.raises(DrawingError, match="line 2"):
        parse_points("1 2\nx y\n")
