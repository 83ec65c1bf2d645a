"""Acceptance gate A1-A12, each with its own wall-clock budget."""

import itertools
import time
from math import comb

import pytest

from conftest import ACCEPTANCE_LINES
from holescope.cli import main
from holescope.generators import dn_family, twisted, twisted_prime
from holescope.geometry import random_convex_instance
from holescope.harness import (
    SAMPLED_OK,
    build_corpus,
    default_corpus_spec,
    dn_characterization,
    run_claims,
)
from holescope.holes import (
    _gon_search,
    check_inner_side_convexity,
    chord_4hole_for_edge,
    count_empty_triangles,
    count_four_holes,
    empty_cycles,
    enumerate_k_gons,
    interior_vertices,
    is_convex_drawing,
    is_empty_4_triangulation,
    is_empty_cycle,
    is_k_gon,
    is_minimal,
    minimal_k_gon,
    uncrossed_edges,
)
from holescope.planesub import empty_4cycle_through, find_plane_star_tree

from oracles import geometric_holes, hull, inside_polygon


@pytest.fixture(scope="module")
def corpus():
    return build_corpus(default_corpus_spec())


class Gate:
    def __init__(self, name, budget_s):
        self.name, self.budget = name, budget_s

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        took = time.perf_counter() - self.start
        ok = exc_type is None and took < self.budget
        ACCEPTANCE_LINES.append(
            f"{self.name}: {'PASS' if ok else 'FAIL'} ({took:.2f}s, budget {self.budget}s)"
        )
        if exc_type is None:
            assert took < self.budget, f"{self.name} took {took:.2f}s"
        return False


def test_a1_twisted_empty_triangles():
    with Gate("A1 empty triangles of T_n = 2n-4, n=4..12", 5):
        for n in range(4, 13):
            assert count_empty_triangles(twisted(n)) == 2 * n - 4


def test_a2_twisted_no_five_gon():
    with Gate("A2 T_n has no 5-gon and {1,2,n-1,n} is a 4-hole, n=5..12", 10):
        for n in range(5, 13):
            d = twisted(n)
            for s in itertools.combinations(d.vertices, 5):
                assert is_k_gon(d, s) is None
            g = is_k_gon(d, {1, 2, n - 1, n})
            assert g is not None and interior_vertices(d, g) == set()


def test_a3_twisted_prime_crossings():
    with Gate("A3 T'_n crossing count = C(n,4), n=6..12", 1):
        for n in range(6, 13):
            assert len(twisted_prime(n).crossings) == comb(n, 4)


def test_a4_twisted_prime_no_empty_triangulation():
    with Gate("A4 T'_n has no empty 4-triangulation, n=6..11", 60):
        for n in range(6, 12):
            d = twisted_prime(n)
            checked = 0
            for quad in itertools.combinations(d.vertices, 4):
                a, b, c, e = quad
                for cyc in ((a, b, c, e), (a, b, e, c), (a, c, b, e)):
                    checked += 1
                    assert not is_empty_4_triangulation(d, cyc)
            assert checked == 3 * comb(n, 4)


def test_a5_empty_4cycle_through_every_vertex(corpus):
    with Gate("A5 empty 4-cycle through every vertex, >= n/4 distinct", 120):
        assert len(corpus) >= 78
        for item in corpus:
            d = item.drawing
            cycles = set()
            for v in d.vertices:
                w = empty_4cycle_through(d, v)
                assert v in w.cycle and is_empty_cycle(d, w.cycle).empty
                cycles.add(w.cycle)
            assert 4 * len(cycles) >= d.n


def test_a6_chords_and_four_hole_bound(corpus):
    with Gate("A6 crossed edges are 4-hole chords; 4-holes >= n^2/4-5n/4+1", 180):
        randoms = [i.drawing for i in corpus if i.family == "random-convex"]
        assert len(randoms) >= 50 and all(d.n <= 30 for d in randoms)
        for d in randoms:
            assert is_convex_drawing(d)
            for e in itertools.combinations(d.vertices, 2):
                if d.cross_masks[d.eid(*e)]:
                    h = chord_4hole_for_edge(d, e, check_convex=False)
                    assert h.is_hole and set(e) <= h.gon.vertices
            n = d.n
            assert 4 * count_four_holes(d) >= n * n - 5 * n + 4


def _starts(d, k, limit=3):
    out = []
    for lo in sorted({1, d.n // 3 + 1, 2 * d.n // 3 + 1}):
        for vs, _ in _gon_search(d, k, [v for v in d.vertices if v >= lo], False):
            out.append(is_k_gon(d, vs))
            break
    return out[:limit]


def test_a7_minimal_gons(corpus):
    with Gate("A7 minimal 4-gons are holes; minimal 5/6-gons inner-side convex", 180):
        convex_items = [i.drawing for i in corpus if i.family in ("convex", "random-convex")]
        checked = 0
        for d in convex_items:
            for k in (4, 5, 6):
                if k > d.n:
                    continue
                for start in _starts(d, k):
                    m = minimal_k_gon(d, k, start=start, check_convex=False)
                    if k == 4:
                        assert interior_vertices(d, m) == set()
                    else:
                        assert check_inner_side_convexity(d, m, check_convex=False,
                                                          check_minimal=False) == []
                    checked += 1
            # one full minimality check per drawing keeps the descent honest
            if d.n >= 5:
                assert is_minimal(d, minimal_k_gon(d, 5, check_convex=False))
        assert checked > 150


def test_a8_dn_characterization():
    with Gate("A8 D_n crossing-maximal; empty 4-cycle sets match the characterization", 60):
        for n in (5, 7, 9, 11):
            d = dn_family(n)
            per_quad = {}
            for e, f in d.crossings:
                q = tuple(sorted((*e, *f)))
                per_quad[q] = per_quad.get(q, 0) + 1
            assert len(per_quad) == comb(n, 4) and set(per_quad.values()) == {1}
            found = {frozenset(c) for c in empty_cycles(d, 4)}
            assert found == dn_characterization(n)
            paired = [s for s in found
                      if all(v % 2 == 1 and v + 1 in s for v in sorted(s)[::2])]
            assert len(paired) == comb(n // 2, 2)


def test_a9_star_tree_witnesses(corpus):
    with Gate("A9 star+tree witnesses: 2n-3 edges, n-1 faces, crossing-free", 30):
        for item in corpus:
            d = item.drawing
            if d.rotations is None:
                continue
            for v in d.vertices:
                p = find_plane_star_tree(d, v)
                assert len(p.edges) == 2 * d.n - 3
                assert len(p.faces) == d.n - 1
                assert p.star_faces_ok()
                for e, f in itertools.combinations(p.edges, 2):
                    if len({*e, *f}) == 4:
                        assert not d.edges_cross(e, f)


def test_a10_uncrossed_edges(corpus):
    with Gate("A10 uncrossed edges <= 2n-2 on every corpus drawing", 5):
        for item in corpus:
            assert len(uncrossed_edges(item.drawing)) <= 2 * item.n - 2


def test_a11_sampled_six_holes():
    with Gate("A11 (sampled) 20 random 30-point sets each have a 6-hole", 300):
        spec = default_corpus_spec()
        spec["families"], spec["random_convex"] = [], []
        results = [r for r in run_claims(spec, ["C11"], include_sampled=True)]
        assert len(results) == 20
        for r in results:
            assert r.verdict == SAMPLED_OK
            seed = int(r.corpus_item.split("seed=")[1].rstrip(")"))
            pts = random_convex_instance(30, seed).points
            hole = r.witness_or_counterexample["six_hole"]
            poly = hull([pts[v - 1] for v in hole])
            assert len(poly) == 6
            assert not any(inside_polygon(poly, pts[j]) for j in range(30) if j + 1 not in hole)


def test_a12_verify_report_deterministic(tmp_path, capsys):
    with Gate("A12 verify --claims all twice gives byte-identical reports", 600):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["verify", "--claims", "all", "--report", str(a)]) == 0
        assert main(["verify", "--claims", "all", "--report", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()
