"""Claim registry: run every checkable statement over a corpus of drawings."""

from __future__ import annotations

import itertools
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from math import comb
from typing import Callable

from . import __version__
from .drawing import Drawing, DrawingError, edge, validate
from .generators import FAMILIES, dn_family
from .geometry import from_points, random_convex_instance, read_points
from .holes import (
    _gon_search,
    _interior_mask,
    _members,
    boundary_triangle_violations,
    check_inner_side_convexity,
    chord_4hole_for_edge,
    count_empty_triangles,
    count_four_holes,
    empty_4_triangulations,
    empty_cycles,
    enumerate_k_gons,
    enumerate_k_holes,
    interior_rotation_violations,
    interior_vertices,
    is_convex_drawing,
    is_k_gon,
    minimal_k_gon,
    monochromatic_4_triangulations,
    triangulation_route_disagreements,
    uncrossed_edges,
)
from .planesub import empty_4cycle_through, find_plane_star_tree

SCHEMA_VERSION = 1

PASS, FAIL, SKIP = "pass", "fail", "skip"
SAMPLED_OK = "consistent (sampled)"
SAMPLED_OPEN = "inconclusive (sampled)"


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    corpus_item: str
    verdict: str
    witness_or_counterexample: dict = field(default_factory=dict)
    runtime_ms: int = 0

    def to_document(self, timings: bool = False) -> dict:
        doc = {
            "claim_id": self.claim_id,
            "corpus_item": self.corpus_item,
            "verdict": self.verdict,
            "witness_or_counterexample": self.witness_or_counterexample,
        }
        if timings:
            doc["runtime_ms"] = self.runtime_ms
        return doc


@dataclass(frozen=True)
class CorpusItem:
    family: str
    n: int
    drawing: Drawing
    seed: int | None = None

    @property
    def label(self) -> str:
        return self.drawing.label.split(" ")[0]

    @property
    def convex_known(self) -> bool:
        return self.family in ("convex", "random-convex", "points")


# -- corpus ---------------------------------------------------------------------

def default_corpus_spec() -> dict:
    text = resources.files("holescope").joinpath("data/default_corpus.json").read_text()
    return json.loads(text)


def load_corpus_spec(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CorpusError(f"cannot read corpus {path}: {exc}") from exc


def parse_range(value) -> list[int]:
    if isinstance(value, int):
        return [value]
    if isinstance(value, list):
        return [int(v) for v in value]
    if isinstance(value, str):
        if ".." in value:
            lo, hi = value.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(v) for v in value.split(",")]
    raise CorpusError(f"bad range {value!r}")


def build_corpus(spec: dict) -> list[CorpusItem]:
    items: list[CorpusItem] = []
    try:
        for entry in spec.get("families", []):
            fam = entry["family"]
            if fam not in FAMILIES:
                raise CorpusError(f"unknown family {fam!r}")
            for n in parse_range(entry["n"]):
                items.append(CorpusItem(fam, n, FAMILIES[fam](n)))
        for entry in spec.get("random_convex", []):
            n, seed = int(entry["n"]), int(entry["seed"])
            items.append(CorpusItem("random-convex", n, random_convex_instance(n, seed), seed))
        for path in spec.get("point_files", []):
            d = from_points(read_points(path))
            items.append(CorpusItem("points", d.n, d))
    except (KeyError, TypeError, DrawingError) as exc:
        raise CorpusError(f"invalid corpus spec: {exc}") from exc
    return items


# -- claims -----------------------------------------------------------------------

def _result(cid, item, ok, payload):
    return cid, item.label, PASS if ok else FAIL, payload


def claim_c1(item: CorpusItem):
    if item.family != "twisted":
        return None
    count = count_empty_triangles(item.drawing)
    return _result("C1", item, count == 2 * item.n - 4,
                   {"empty_triangles": count, "expected": 2 * item.n - 4})


def claim_c2(item: CorpusItem):
    if item.family != "twisted" or item.n < 5:
        return None
    d, n = item.drawing, item.n
    five = next(enumerate_k_gons(d, 5), None)
    quad = {1, 2, n - 1, n}
    g = is_k_gon(d, quad)
    interior = sorted(interior_vertices(d, g)) if g else None
    payload = {"five_gon": list(five.order) if five else None,
               "four_hole": sorted(quad), "gon": g is not None, "interior": interior}
    return _result("C2", item, five is None and g is not None and not interior, payload)


def claim_c3(item: CorpusItem):
    if item.family != "twisted-prime":
        return None
    count = len(item.drawing.crossings)
    return _result("C3", item, count == comb(item.n, 4),
                   {"crossings": count, "expected": comb(item.n, 4)})


def claim_c4(item: CorpusItem):
    if item.family != "twisted-prime":
        return None
    found = empty_4_triangulations(item.drawing, route="parity")
    payload = {"cycles_checked": 3 * comb(item.n, 4), "route": "parity",
               "empty_4_cycles": len(empty_cycles(item.drawing, 4))}
    if found:
        payload["counterexample"] = [list(c) for c in found[:5]]
    return _result("C4", item, not found, payload)


def _plane_sub_problems(d: Drawing, v: int) -> list[str]:
    p = find_plane_star_tree(d, v)
    n = d.n
    problems = []
    if len(p.edges) != 2 * n - 3:
        problems.append(f"{len(p.edges)} edges")
    if len(p.faces) != n - 1:
        problems.append(f"{len(p.faces)} faces")
    for e, f in itertools.combinations(p.edges, 2):
        if len({*e, *f}) == 4 and d.edges_cross(e, f):
            problems.append(f"{list(e)} x {list(f)} cross")
    if not p.star_faces_ok():
        problems.append("face without exactly two star edges")
    return problems


def claim_c5(item: CorpusItem):
    d = item.drawing
    if d.n < 4:
        return None
    cycles = set()
    routes = []
    problems = {}
    for v in d.vertices:
        try:
            w = empty_4cycle_through(d, v, routes)
        except DrawingError as exc:
            return "C5", item.label, FAIL, {"vertex": v, "error": str(exc)}
        cycles.add(w.cycle)
        if d.rotations is not None:
            bad = _plane_sub_problems(d, v)
            if bad:
                problems[str(v)] = bad
    count = len(cycles)
    ok = 4 * count >= d.n and not problems
    payload = {"distinct_empty_4_cycles": count, "bound": f"n/4={d.n / 4:g}",
               "route": sorted(set(routes)), "witness": list(min(cycles))}
    if d.rotations is not None:
        payload["star_tree"] = {"edges": 2 * d.n - 3, "faces": d.n - 1, "problems": problems}
    return _result("C5", item, ok, payload)


def _four_hole_bound_ok(n: int, count: int) -> bool:
    # count >= ceil(n^2/4 - 5n/4 + 1)  <=>  4*count >= n^2 - 5n + 4
    return 4 * count >= n * n - 5 * n + 4


def claim_c6(item: CorpusItem):
    if not item.convex_known:
        return None
    d = item.drawing
    if not is_convex_drawing(d):
        return "C6", item.label, SKIP, {"reason": "not convex"}
    failures = []
    crossed = 0
    for e in itertools.combinations(d.vertices, 2):
        if not d.cross_masks[d.eid(*e)]:
            continue
        crossed += 1
        try:
            chord_4hole_for_edge(d, e, check_convex=False)
        except DrawingError as exc:
            failures.append({"edge": list(e), "error": str(exc)})
    holes = count_four_holes(d)
    n = d.n
    ok = not failures and _four_hole_bound_ok(n, holes)
    payload = {"crossed_edges": crossed, "four_holes": holes,
               "bound": -(-(n * n - 5 * n + 4) // 4)}
    if failures:
        payload["counterexample"] = failures[:5]
    return _result("C6", item, ok, payload)


def _starts(d: Drawing, k: int) -> list:
    out = []
    seen = set()
    for lo in sorted({1, d.n // 3 + 1, 2 * d.n // 3 + 1}):
        pool = [v for v in d.vertices if v >= lo]
        for vs, order in _gon_search(d, k, pool, False):
            if vs not in seen:
                seen.add(vs)
                out.append(is_k_gon(d, vs))
            break
    return out


def claim_c7(item: CorpusItem):
    if not item.convex_known:
        return None
    d = item.drawing
    if not is_convex_drawing(d):
        return "C7", item.label, SKIP, {"reason": "not convex"}
    problems = []
    checked = []
    for k in (4, 5, 6):
        if k > d.n:
            continue
        for start in _starts(d, k):
            g = minimal_k_gon(d, k, start=start, check_convex=False)
            checked.append(list(g.order))
            interior = sorted(interior_vertices(d, g))
            if k == 4 and interior:
                problems.append({"gon": list(g.order), "interior": interior,
                                 "reason": "minimal 4-gon is not a 4-hole"})
            bad = boundary_triangle_violations(d, g)
            if bad:
                problems.append({"gon": list(g.order), "boundary_triangles": bad})
            if k >= 5:
                bad = check_inner_side_convexity(d, g, check_convex=False, check_minimal=False)
                if bad:
                    problems.append({"gon": list(g.order), "inner_side": bad[:5]})
    payload = {"minimal_gons": checked}
    if problems:
        payload["counterexample"] = problems[:5]
    return _result("C7", item, not problems, payload)


def dn_characterization(n: int) -> set[frozenset]:
    """Vertex sets of the empty 4-cycles of D_n predicted by the construction."""
    out = set()
    half = (n - 1) // 2
    for i, j in itertools.combinations(range(1, half + 1), 2):
        out.add(frozenset((2 * i - 1, 2 * i, 2 * j - 1, 2 * j)))
    for i in range(1, n - 2):
        out.add(frozenset((i, n - 2, n - 1, n)))
    for k in range(1, n):
        if 2 * k > n - 3:
            break
        for x in (n - 2, n - 1):
            out.add(frozenset((2 * k - 1, 2 * k, x, n)))
    return out


def claim_c8(item: CorpusItem):
    if item.family != "dn":
        return None
    d, n = item.drawing, item.n
    per_quad = {}
    for e, f in d.crossings:
        q = tuple(sorted((*e, *f)))
        per_quad[q] = per_quad.get(q, 0) + 1
    maximal = len(per_quad) == comb(n, 4) and all(c == 1 for c in per_quad.values())
    found = {frozenset(c) for c in empty_cycles(d, 4)}
    expected = dn_characterization(n)
    main = comb(n // 2, 2)
    main_found = sum(1 for s in found if _paired(s))
    payload = {"crossing_maximal": maximal, "empty_4_cycles": len(found),
               "expected": len(expected), "main_term": main_found,
               "main_term_expected": main, "linear_terms": len(found) - main_found}
    if found != expected:
        payload["unexpected"] = sorted(sorted(s) for s in found - expected)[:10]
        payload["missing"] = sorted(sorted(s) for s in expected - found)[:10]
    return _result("C8", item, maximal and found == expected and main_found == main, payload)


def _paired(s: frozenset) -> bool:
    vs = sorted(s)
    return all(vs[i] % 2 == 1 and vs[i + 1] == vs[i] + 1 for i in (0, 2))


def claim_c9(item: CorpusItem):
    if not item.convex_known or item.drawing.rotations is None:
        return None
    d = item.drawing
    sizes = (4, 5) if d.n <= 16 else (4,)
    checked = 0
    problems = []
    for k in sizes:
        if k > d.n:
            continue
        for g in enumerate_k_gons(d, k):
            if not _interior_mask(d, g.order):
                continue
            checked += 1
            bad = interior_rotation_violations(d, g)
            if bad:
                problems.append({"gon": list(g.order), "violations": bad})
    payload = {"gons_with_interior": checked, "gon_sizes": list(sizes)}
    if problems:
        payload["counterexample"] = problems[:5]
    return _result("C9", item, not problems, payload)


def claim_c10(item: CorpusItem):
    d = item.drawing
    count = len(uncrossed_edges(d))
    return _result("C10", item, count <= 2 * d.n - 2, {"uncrossed": count, "bound": 2 * d.n - 2})


ITEM_CLAIMS: dict[str, Callable] = {
    "C1": claim_c1, "C2": claim_c2, "C3": claim_c3, "C4": claim_c4,
    "C5": claim_c5, "C6": claim_c6, "C7": claim_c7, "C8": claim_c8,
    "C9": claim_c9, "C10": claim_c10,
}
SAMPLED_CLAIMS = ("C11", "C12")
ALL_CLAIMS = tuple(ITEM_CLAIMS) + SAMPLED_CLAIMS


def find_six_hole(d: Drawing):
    for vs, order in _gon_search(d, 6, d.vertices, True):
        return list(is_k_gon(d, vs).order)
    return None


def sampled_c11(n: int, seed: int):
    d = random_convex_instance(n, seed)
    hole = find_six_hole(d)
    verdict = SAMPLED_OK if hole is not None else FAIL
    return "C11", d.label, verdict, {"six_hole": hole, "note": "sampled, not a proof"}


def sampled_c12(n: int, seed: int):
    d = random_convex_instance(n, seed)
    rng = random.Random(seed)
    coloring = {v: rng.choice("AB") for v in d.vertices}
    found = monochromatic_4_triangulations(d, coloring)
    verdict = SAMPLED_OK if found else SAMPLED_OPEN
    payload = {"coloring": "".join(coloring[v] for v in d.vertices),
               "witness": found[0] if found else None, "count": len(found),
               "note": "sampled, not a proof"}
    return "C12", d.label, verdict, payload


# -- runner -----------------------------------------------------------------------

def parse_claims(text: str | None) -> list[str]:
    if text is None or text.strip().lower() == "all":
        return list(ALL_CLAIMS)
    out = []
    for part in text.split(","):
        cid = part.strip().upper()
        if cid not in ALL_CLAIMS:
            raise CorpusError(f"unknown claim id {part.strip()!r}")
        out.append(cid)
    return out


_WORKER_CORPUS: list[CorpusItem] = []
_WORKER_INVALID: dict[int, str] = {}


def _init_worker(spec: dict) -> None:
    global _WORKER_CORPUS, _WORKER_INVALID
    _WORKER_CORPUS = build_corpus(spec)
    _WORKER_INVALID = {}


def _run_task(task: tuple) -> ClaimResult | None:
    kind = task[0]
    start = time.perf_counter()
    if kind == "item":
        _, cid, idx, invalid = task
        item = _WORKER_CORPUS[idx]
        if invalid:
            out = (cid, item.label, SKIP, {"reason": f"validation failed: {invalid}"})
        else:
            out = ITEM_CLAIMS[cid](item)
    else:
        _, cid, n, seed = task
        out = (sampled_c11 if cid == "C11" else sampled_c12)(n, seed)
    if out is None:
        return None
    ms = int((time.perf_counter() - start) * 1000)
    return ClaimResult(*out, runtime_ms=ms)


def thread_budget() -> int:
    raw = os.environ.get("HOLESCOPE_THREADS")
    try:
        limit = int(raw) if raw else 1
    except ValueError:
        limit = 1
    return max(1, min(limit, os.cpu_count() or 1))


def run_claims(spec: dict | None = None, claims=None, include_sampled: bool = False,
               threads: int | None = None) -> list[ClaimResult]:
    """Evaluate the selected claims; results are ordered by claim then corpus item."""
    spec = default_corpus_spec() if spec is None else spec
    selected = parse_claims(claims) if claims is None or isinstance(claims, str) else list(claims)
    for cid in selected:
        if cid not in ALL_CLAIMS:
            raise CorpusError(f"unknown claim id {cid!r}")
    corpus = build_corpus(spec)
    invalid = {}
    for i, item in enumerate(corpus):
        problems = validate(item.drawing)
        if problems:
            invalid[i] = problems[0]
    tasks = []
    for cid in selected:
        if cid in ITEM_CLAIMS:
            tasks.extend(("item", cid, i, invalid.get(i)) for i in range(len(corpus)))
        elif include_sampled:
            block = spec.get("sampled", {}).get("six_hole" if cid == "C11" else "monochromatic", {})
            tasks.extend(("sampled", cid, int(block.get("n", 30)), int(s)) for s in block.get("seeds", []))
    threads = thread_budget() if threads is None else threads
    global _WORKER_CORPUS
    if threads <= 1:
        _WORKER_CORPUS = corpus
        results = [_run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(threads, initializer=_init_worker, initargs=(spec,)) as pool:
            results = list(pool.map(_run_task, tasks, chunksize=4))
    return [r for r in results if r is not None]


def summarize(results: list[ClaimResult]) -> dict:
    out: dict[str, dict[str, int]] = {}
    for r in results:
        out.setdefault(r.claim_id, {})
        out[r.claim_id][r.verdict] = out[r.claim_id].get(r.verdict, 0) + 1
    return out


def any_failed(results: list[ClaimResult]) -> bool:
    return any(r.verdict == FAIL for r in results)


def report_document(spec: dict, results: list[ClaimResult], timings: bool = False,
                    census: list | None = None) -> dict:
    doc = {
        "tool": "holescope",
        "version": __version__,
        "schema": SCHEMA_VERSION,
        "corpus": spec,
        "summary": summarize(results),
        "results": [r.to_document(timings) for r in results],
    }
    if census is not None:
        doc["census"] = census
    return doc


def dumps_report(doc: dict) -> str:
    return json.dumps(doc, indent=1) + "\n"
