"""holescope command line: generate, analyze, verify, census."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .drawing import DrawingError, dumps, load, validate
from .generators import FAMILIES
from .geometry import from_points, random_convex_instance, read_points
from .harness import (
    CorpusError,
    any_failed,
    default_corpus_spec,
    dumps_report,
    load_corpus_spec,
    parse_claims,
    parse_range,
    report_document,
    run_claims,
    summarize,
)
from .holes import (
    count_empty_triangles,
    empty_4_triangulations,
    empty_cycles,
    empty_triangles,
    enumerate_k_gons,
    enumerate_k_holes,
    is_convex_drawing,
    triangulation_route_disagreements,
    uncrossed_edges,
)
from .planesub import empty_4cycle_through

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

GENERATE_FAMILIES = ("convex", "twisted", "twisted-prime", "dn", "from-points", "random-convex")


class UsageError(Exception):
    pass


def _write_csv(rows: list[dict], fields: list[str], path) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    text = buf.getvalue()
    if path and path != "-":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def _vs(cycle) -> str:
    return " ".join(str(v) for v in cycle)


# -- generate ---------------------------------------------------------------------

def cmd_generate(args) -> int:
    fam = args.family
    if fam == "from-points":
        if not args.from_points:
            raise UsageError("--from-points FILE is required for family from-points")
        d = from_points(read_points(args.from_points))
    elif fam == "random-convex":
        if args.n is None or args.seed is None:
            raise UsageError("random-convex needs --n and --seed")
        d = random_convex_instance(args.n, args.seed)
    else:
        if args.n is None:
            raise UsageError("--n is required")
        try:
            d = FAMILIES[fam](args.n)
        except DrawingError as exc:
            raise UsageError(str(exc)) from exc
    text = dumps(d)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"{d.label}: {len(d.crossings)} crossings -> {args.output}")
    else:
        sys.stdout.write(text)
        print(f"{d.label}: {len(d.crossings)} crossings", file=sys.stderr)
    return EXIT_OK


# -- analyze ----------------------------------------------------------------------

def _analysis(args, d) -> tuple[dict, list[dict], list[str], tuple]:
    """Returns (json document, csv rows, csv fields, cycle to highlight)."""
    what = args.analysis
    doc = {"drawing": d.label, "n": d.n, "analysis": what}
    rows: list[dict] = []
    fields = ["vertices"]
    highlight: tuple = ()
    if what == "validate":
        problems = validate(d)
        doc.update(valid=not problems, problems=problems)
        rows = [{"problem": p} for p in problems]
        fields = ["problem"]
    elif what in ("holes", "gons"):
        k = args.k
        if k < 4 or k > d.n:
            raise UsageError(f"--k must be in 4..{d.n}")
        if what == "holes":
            found = [h.gon.order for h in enumerate_k_holes(d, k)]
        else:
            found = [g.order for g in enumerate_k_gons(d, k)]
        doc.update(k=k, count=len(found), cycles=[list(c) for c in found])
        rows = [{"vertices": _vs(sorted(c)), "order": _vs(c)} for c in found]
        fields = ["vertices", "order"]
        highlight = found[0] if found else ()
    elif what == "empty-triangles":
        tris = [t.vertices for t in empty_triangles(d)]
        doc.update(count=len(tris), expected_twisted=2 * d.n - 4, triangles=[list(t) for t in tris])
        rows = [{"vertices": _vs(t)} for t in tris]
        highlight = tris[0] if tris else ()
    elif what == "convexity":
        verdict = is_convex_drawing(d)
        t = verdict.counterexample
        doc.update(convex=verdict.convex, counterexample=list(t) if t else None)
        rows = [{"convex": verdict.convex, "counterexample": _vs(t) if t else ""}]
        fields = ["convex", "counterexample"]
        highlight = tuple(t) if t else ()
    elif what == "empty4":
        targets = [args.through] if args.through is not None else list(d.vertices)
        out = []
        for v in targets:
            if not 1 <= v <= d.n:
                raise UsageError(f"--through {v} out of range")
            route: list[str] = []
            w = empty_4cycle_through(d, v, route)
            out.append({"vertex": v, "route": route[0], "witness": w.to_document()})
            rows.append({"vertex": v, "cycle": _vs(w.cycle), "route": route[0]})
        doc.update(results=out)
        fields = ["vertex", "cycle", "route"]
        highlight = out[0]["witness"]["cycle"] if out else ()
    elif what == "empty-cycles":
        k = args.k
        if k < 3 or k > d.n:
            raise UsageError(f"--k must be in 3..{d.n}")
        cycles = empty_cycles(d, k)
        doc.update(k=k, count=len(cycles), cycles=[list(c) for c in cycles])
        rows = [{"vertices": _vs(sorted(c)), "order": _vs(c)} for c in cycles]
        fields = ["vertices", "order"]
        highlight = cycles[0] if cycles else ()
    elif what == "triangulations":
        found = empty_4_triangulations(d)
        route = "rotation" if d.rotations is not None else "parity (rotation-free)"
        doc.update(route=route, count=len(found), cycles=[list(c) for c in found])
        if d.rotations is not None:
            doc["route_disagreements"] = [list(c) for c in triangulation_route_disagreements(d)]
        rows = [{"vertices": _vs(sorted(c)), "order": _vs(c)} for c in found]
        fields = ["vertices", "order"]
        highlight = found[0] if found else ()
    elif what == "summary":
        doc.update(
            crossings=len(d.crossings),
            uncrossed_edges=len(uncrossed_edges(d)),
            empty_triangles=count_empty_triangles(d),
            empty_4_cycles=len(empty_cycles(d, 4)),
            convex=bool(is_convex_drawing(d)),
        )
        rows = [{k: v for k, v in doc.items() if k not in ("analysis",)}]
        fields = list(rows[0])
    return doc, rows, fields, tuple(highlight)


def _print_text(doc: dict) -> None:
    what = doc["analysis"]
    head = f"{doc['drawing']} ({what})"
    if what == "validate":
        print(f"{head}: {'valid' if doc['valid'] else 'INVALID'}")
        for p in doc["problems"]:
            print(f"  {p}")
    elif what == "convexity":
        if doc["convex"]:
            print(f"{head}: convex")
        else:
            print(f"{head}: not convex, counterexample triangle {_vs(doc['counterexample'])}")
    elif what == "empty4":
        for r in doc["results"]:
            print(f"through {r['vertex']}: {_vs(r['witness']['cycle'])} [{r['route']}]")
    elif what == "summary":
        for k, v in doc.items():
            if k not in ("analysis", "drawing"):
                print(f"{k}: {v}")
    else:
        items = doc.get("cycles", doc.get("triangles", []))
        extra = f" k={doc['k']}" if "k" in doc else ""
        print(f"{head}{extra}: {doc['count']}")
        for c in items:
            print(f"  {{{', '.join(str(v) for v in sorted(c))}}}  order {_vs(c)}")
        if doc.get("route_disagreements"):
            print(f"  route disagreements: {doc['route_disagreements']}")


def cmd_analyze(args) -> int:
    d = load(args.drawing)
    if args.svg and d.points is None:
        raise UsageError("no coordinates: --svg needs a geometric drawing")
    if args.analysis != "validate":
        problems = validate(d)
        if problems:
            raise UsageError(f"invalid drawing: {problems[0]}")
    doc, rows, fields, highlight = _analysis(args, d)
    if args.json:
        sys.stdout.write(json.dumps(doc, indent=1) + "\n")
    else:
        _print_text(doc)
    if args.csv:
        _write_csv(rows, fields, args.csv)
    if args.svg:
        from .plotting import draw_straight_line

        draw_straight_line(d, args.svg, highlight)
    if args.analysis == "validate" and not doc["valid"]:
        return EXIT_FAIL
    return EXIT_OK


# -- verify -----------------------------------------------------------------------

def cmd_verify(args) -> int:
    claims = parse_claims(args.claims)
    spec = load_corpus_spec(args.corpus) if args.corpus else default_corpus_spec()
    results = run_claims(spec, claims, include_sampled=args.include_sampled)
    doc = report_document(spec, results, timings=args.timings)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(dumps_report(doc))
    summary = summarize(results)
    for cid in claims:
        counts = summary.get(cid)
        if counts is None:
            note = "not run (sampled claims need --include-sampled)" if cid in ("C11", "C12") else "no applicable items"
            print(f"{cid}: {note}")
            continue
        print(f"{cid}: " + ", ".join(f"{v}={c}" for v, c in sorted(counts.items())))
    for r in results:
        if r.verdict == "fail":
            print(f"FAIL {r.claim_id} {r.corpus_item}: {json.dumps(r.witness_or_counterexample)}")
    if args.csv:
        rows = [{"claim_id": r.claim_id, "corpus_item": r.corpus_item, "verdict": r.verdict}
                for r in results]
        _write_csv(rows, ["claim_id", "corpus_item", "verdict"], args.csv)
    if args.figure:
        from .plotting import plot_verdicts

        plot_verdicts(summary, args.figure)
    return EXIT_FAIL if any_failed(results) else EXIT_OK


# -- census -----------------------------------------------------------------------

CENSUS_QUANTITIES = ("empty-cycles", "holes", "gons", "empty-triangles", "uncrossed", "crossings")


def census_rows(quantity: str, family: str, ns: list[int], k: int = 4) -> list[dict]:
    rows = []
    for n in ns:
        if family == "dn" and (n < 5 or n % 2 == 0):
            continue
        d = FAMILIES[family](n)
        if quantity == "empty-cycles":
            value = len(empty_cycles(d, k)) if k <= n else 0
        elif quantity == "holes":
            value = len(enumerate_k_holes(d, k)) if k <= n else 0
        elif quantity == "gons":
            value = sum(1 for _ in enumerate_k_gons(d, k)) if k <= n else 0
        elif quantity == "empty-triangles":
            value = count_empty_triangles(d)
        elif quantity == "uncrossed":
            value = len(uncrossed_edges(d))
        else:
            value = len(d.crossings)
        rows.append({"family": family, "n": n, "label": d.label.split(" ")[0], "count": value})
    return rows


def cmd_census(args) -> int:
    if args.family not in FAMILIES:
        raise UsageError(f"unknown family {args.family!r}")
    try:
        ns = parse_range(args.n)
    except (CorpusError, ValueError) as exc:
        raise UsageError(f"bad --n {args.n!r}") from exc
    if args.k < 3 and args.quantity in ("empty-cycles", "holes", "gons"):
        raise UsageError("--k must be at least 3")
    if args.quantity in ("holes", "gons") and args.k < 4:
        raise UsageError("--k must be at least 4 for holes and gons")
    rows = census_rows(args.quantity, args.family, ns, args.k)
    if not rows:
        raise UsageError("empty range")
    text = _write_csv(rows, ["family", "n", "label", "count"], args.csv)
    if not args.csv or args.csv == "-":
        sys.stdout.write(text)
    else:
        print(f"{len(rows)} rows -> {args.csv}")
    if args.plot:
        from .plotting import plot_census

        plot_census(rows, "n", "count", args.plot, f"{args.quantity} ({args.family})")
    if args.report:
        spec = {"census": {"quantity": args.quantity, "family": args.family, "n": args.n, "k": args.k}}
        doc = report_document(spec, [], census=rows)
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(dumps_report(doc))
    return EXIT_OK


# -- main -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holescope", description=__doc__)
    p.add_argument("--version", action="version", version=f"holescope {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a drawing as JSON")
    g.add_argument("--family", required=True, choices=GENERATE_FAMILIES)
    g.add_argument("--n", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--from-points", metavar="FILE")
    g.add_argument("-o", "--output", metavar="FILE")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", help="run an analysis on a drawing file")
    a.add_argument("analysis", choices=("validate", "summary", "holes", "gons", "empty-triangles",
                                        "convexity", "empty4", "empty-cycles", "triangulations"))
    a.add_argument("drawing", metavar="FILE")
    a.add_argument("--k", type=int, default=4)
    a.add_argument("--through", type=int, metavar="V")
    a.add_argument("--json", action="store_true", help="print JSON instead of text")
    a.add_argument("--csv", metavar="FILE")
    a.add_argument("--svg", metavar="FILE", help="straight-line figure (geometric drawings only)")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="check claims over a corpus")
    v.add_argument("--claims", default="all", help="comma list such as C1,C4, or 'all'")
    v.add_argument("--corpus", metavar="FILE", help="corpus spec JSON (default: bundled corpus)")
    v.add_argument("--report", metavar="FILE")
    v.add_argument("--include-sampled", action="store_true", help="also run sampled claims C11, C12")
    v.add_argument("--timings", action="store_true", help="record runtime_ms in the report")
    v.add_argument("--csv", metavar="FILE")
    v.add_argument("--figure", metavar="FILE")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("census", help="tabulate a count against n for one family")
    c.add_argument("quantity", choices=CENSUS_QUANTITIES)
    c.add_argument("--family", required=True)
    c.add_argument("--n", required=True, help="range such as 5..11 or list 5,7,9")
    c.add_argument("--k", type=int, default=4)
    c.add_argument("--csv", metavar="FILE")
    c.add_argument("--plot", metavar="FILE")
    c.add_argument("--report", metavar="FILE")
    c.set_defaults(func=cmd_census)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CorpusError, DrawingError, OSError, json.JSONDecodeError) as exc:
        print(f"holescope: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
