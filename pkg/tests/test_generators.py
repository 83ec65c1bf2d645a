import itertools
from math import comb

import pytest

from holescope.drawing import DrawingError, find_isomorphism, induced_subdrawing, validate
from holescope.generators import (
    FAMILIES,
    convex_gon,
    dn_family,
    dn_steps,
    twisted,
    twisted_prime,
)
from holescope.holes import uncrossed_edges

from oracles import as_sets, convex_rule_crossings, twisted_rule_crossings


def test_convex_gon_examples():
    assert convex_gon(4).crossings == {((1, 3), (2, 4))}
    assert len(convex_gon(5).crossings) == 5
    assert convex_gon(3).crossings == frozenset()


@pytest.mark.parametrize("n", range(4, 13))
def test_convex_gon_matches_rule(n):
    assert as_sets(convex_gon(n).crossings) == convex_rule_crossings(n)
    assert validate(convex_gon(n)) == []


def test_twisted_examples():
    expected = {((1, 5), (2, 4)), ((1, 5), (2, 3)), ((1, 5), (3, 4)),
                ((1, 4), (2, 3)), ((2, 5), (3, 4))}
    assert twisted(5).crossings == expected
    assert twisted(4).crossings == {((1, 4), (2, 3))}


@pytest.mark.parametrize("n", range(4, 13))
def test_twisted_matches_rule(n):
    d = twisted(n)
    assert as_sets(d.crossings) == twisted_rule_crossings(n)
    assert len(d.crossings) == comb(n, 4)
    assert d.rotations is not None
    assert validate(d) == []


@pytest.mark.parametrize("n", range(6, 13))
def test_twisted_prime(n):
    d = twisted_prime(n)
    assert len(d.crossings) == comb(n, 4)
    assert (2, 3) in uncrossed_edges(d)
    assert validate(d) == []


@pytest.mark.parametrize("n", range(6, 10))
def test_twisted_prime_contains_smaller_twisted(n):
    sub = induced_subdrawing(twisted_prime(n), [v for v in range(1, n + 1) if v != 2])
    assert find_isomorphism(sub, twisted(n - 1)) is not None


def test_dn_starts_from_convex_pentagon():
    assert dn_family(5).crossings == convex_gon(5).crossings


@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_dn_crossing_maximal(n):
    d = dn_family(n)
    per_quad = {}
    for e, f in d.crossings:
        q = tuple(sorted((*e, *f)))
        per_quad[q] = per_quad.get(q, 0) + 1
    assert len(d.crossings) == comb(n, 4)
    assert set(per_quad) == set(itertools.combinations(range(1, n + 1), 4))
    assert validate(d) == []


@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_dn_last_three_share_rotation(n):
    d = dn_family(n)
    last = (n - 2, n - 1, n)
    seen = []
    for v in last:
        r = [x for x in d.rotation(v) if x not in last]
        i = r.index(1)
        seen.append(r[i:] + r[:i])
    assert seen[0] == seen[1] == seen[2]


def test_dn_steps_recorded():
    steps = dn_steps(9)
    assert [s.new_vertex for s in steps] == [6, 7, 8, 9]
    assert "cells" in dn_family(9).label


@pytest.mark.parametrize("n", [4, 6, 3])
def test_dn_rejects_bad_n(n):
    with pytest.raises(DrawingError):
        dn_family(n)


def test_family_registry():
    assert set(FAMILIES) == {"convex", "twisted", "twisted-prime", "dn"}
