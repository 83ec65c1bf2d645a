import itertools

import pytest

from holescope.drawing import (
    Drawing,
    DrawingError,
    classify_sides,
    crosses,
    dumps,
    find_isomorphism,
    induced_subdrawing,
    k4_catalog,
    loads,
    relabel,
    separated_by_triangle,
    validate,
)
from holescope.generators import convex_gon, twisted, twisted_prime
from holescope.geometry import from_points

from oracles import brute_sides

SQUARE_PLUS = [(0, 0), (4, 0), (4, 4), (0, 4), (2, 1)]


def test_validate_clean_generator():
    assert validate(convex_gon(4)) == []


def test_validate_adjacent_edges():
    d = Drawing(4, frozenset({((1, 2), (2, 3))}))
    problems = validate(d)
    assert len(problems) == 1
    assert problems[0].startswith("adjacent edges cross")


def test_validate_k4_rule():
    d = Drawing(4, frozenset({((1, 3), (2, 4)), ((1, 2), (3, 4))}))
    problems = validate(d)
    assert len(problems) == 1
    assert problems[0].startswith("K_4 rule")


def test_validate_rotation_not_permutation():
    d = Drawing(3, frozenset(), ((2, 2), (1, 3), (1, 2)))
    assert any("permutation" in p for p in validate(d))


def test_validate_rotation_crossing_conflict():
    # convex rotations with twisted crossings
    c = convex_gon(5)
    bad = Drawing(5, twisted(5).crossings, c.rotations, "bad")
    assert validate(bad)


def test_k4_catalog_size():
    # 16 possible signatures, 8 realizable
    assert len(k4_catalog()) == 8


def test_crosses_examples():
    assert crosses(twisted(6), (1, 6), (2, 5))
    assert not crosses(convex_gon(5), (1, 2), (3, 4))
    assert crosses(convex_gon(5), (1, 3), (2, 4))


def test_crosses_rejects_adjacent():
    with pytest.raises(DrawingError):
        crosses(convex_gon(5), (1, 2), (2, 3))


def test_separated_by_triangle_examples():
    assert not separated_by_triangle(convex_gon(5), {1, 2, 3}, 4, 5)
    d = from_points(SQUARE_PLUS)
    assert separated_by_triangle(d, {1, 2, 3}, 5, 4)
    with pytest.raises(DrawingError):
        separated_by_triangle(convex_gon(5), {1, 2, 3}, 4, 4)


def test_classify_sides_examples():
    s = classify_sides(convex_gon(5), (1, 2, 3, 4))
    assert s.class_a == {5} and s.class_b == set()
    s = classify_sides(twisted(6), (1, 2, 6, 5))
    assert {frozenset(s.class_a), frozenset(s.class_b)} == {frozenset({3, 4}), frozenset()}
    s = classify_sides(convex_gon(4), (1, 2, 3, 4))
    assert not s.class_a and not s.class_b


def test_classify_sides_matches_brute_force():
    for d in (twisted(8), convex_gon(8), from_points(SQUARE_PLUS)):
        for cyc in itertools.permutations(range(1, min(d.n, 5) + 1), 3):
            s = classify_sides(d, cyc)
            a, b = brute_sides(d, cyc)
            assert (set(s.class_a), set(s.class_b)) == (a, b)


def test_classify_sides_rejects_crossing_cycle():
    with pytest.raises(DrawingError, match="not plane"):
        classify_sides(twisted(6), (1, 2, 5, 6))


def test_induced_subdrawing_examples():
    sub = induced_subdrawing(twisted_prime(7), [1, 3, 4, 5, 6, 7])
    assert find_isomorphism(sub, twisted(6)) is not None
    for s in itertools.combinations(range(1, 7), 4):
        assert find_isomorphism(induced_subdrawing(convex_gon(6), s), convex_gon(4)) is not None
    with pytest.raises(DrawingError):
        induced_subdrawing(convex_gon(5), [1])


def test_isomorphism_distinguishes():
    assert find_isomorphism(convex_gon(5), twisted(5)) is None


def test_relabel_roundtrip():
    d = twisted(6)
    perm = {1: 3, 2: 1, 3: 2, 4: 6, 5: 4, 6: 5}
    back = {v: k for k, v in perm.items()}
    assert relabel(relabel(d, perm), back).crossings == d.crossings


def test_json_roundtrip_byte_identical():
    for d in (convex_gon(6), twisted(7), twisted_prime(6), from_points(SQUARE_PLUS)):
        text = dumps(d)
        assert dumps(loads(text)) == text
        assert loads(text) == d


def test_loads_rejects_garbage():
    with pytest.raises(DrawingError):
        loads("{not json")
    with pytest.raises(DrawingError):
        loads('{"n": 4}')
