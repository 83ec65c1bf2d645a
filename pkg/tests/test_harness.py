import json

import pytest

from holescope.drawing import Drawing
from holescope.harness import (
    ALL_CLAIMS,
    ClaimResult,
    CorpusError,
    CorpusItem,
    build_corpus,
    claim_c10,
    default_corpus_spec,
    dn_characterization,
    dumps_report,
    parse_claims,
    parse_range,
    report_document,
    run_claims,
)
from holescope.holes import uncrossed_edges


def test_parse_range():
    assert parse_range("5..8") == [5, 6, 7, 8]
    assert parse_range([5, 7]) == [5, 7]
    assert parse_range("4,6") == [4, 6]
    assert parse_range(9) == [9]
    with pytest.raises(CorpusError):
        parse_range(None)


def test_parse_claims():
    assert parse_claims("all") == list(ALL_CLAIMS)
    assert parse_claims("c1, C4") == ["C1", "C4"]
    with pytest.raises(CorpusError, match="unknown claim"):
        parse_claims("C99")


def test_default_corpus_shape():
    spec = default_corpus_spec()
    items = build_corpus(spec)
    fams = [i.family for i in items]
    assert fams.count("convex") == 9 and fams.count("twisted") == 9
    assert fams.count("twisted-prime") == 6 and fams.count("dn") == 4
    randoms = [i for i in items if i.family == "random-convex"]
    assert len(randoms) == 50
    assert {i.n for i in randoms} <= set(range(8, 31))
    assert len(spec["sampled"]["six_hole"]["seeds"]) == 20


def test_unknown_family_rejected():
    with pytest.raises(CorpusError):
        build_corpus({"families": [{"family": "spiral", "n": "4..6"}]})


def test_c4_twisted_prime_6():
    spec = {"families": [{"family": "twisted-prime", "n": 6}]}
    [r] = run_claims(spec, ["C4"])
    assert r.verdict == "pass"
    assert r.witness_or_counterexample["cycles_checked"] == 45


def test_corrupted_item_is_skipped(monkeypatch):
    bad = Drawing(5, frozenset({((1, 2), (2, 3))}), None, "BAD_5")
    import holescope.harness as h

    real = h.build_corpus

    def with_bad(spec):
        return real(spec) + [CorpusItem("points", 5, bad)]

    monkeypatch.setattr(h, "build_corpus", with_bad)
    results = run_claims({"families": []}, ["C10"])
    assert len(results) == 1
    assert results[0].verdict == "skip"
    assert "validation failed" in results[0].witness_or_counterexample["reason"]


def test_fail_carries_recheckable_counterexample():
    # a drawing with too many uncrossed edges cannot be simple; C10 must fail
    # and the payload must agree with the predicate
    d = Drawing(6, frozenset(), None, "EMPTY_6")
    out = claim_c10(CorpusItem("points", 6, d))
    assert out[2] == "fail"
    assert out[3]["uncrossed"] == len(uncrossed_edges(d)) == 15


def test_dn_characterization_counts():
    assert [len(dn_characterization(n)) for n in (5, 7, 9, 11)] == [5, 11, 18, 26]


def test_sampled_claims_need_flag():
    spec = default_corpus_spec()
    spec["families"], spec["random_convex"] = [], []
    assert run_claims(spec, ["C11"]) == []
    spec["sampled"]["six_hole"]["seeds"] = [2000]
    [r] = run_claims(spec, ["C11"], include_sampled=True)
    assert r.verdict == "consistent (sampled)"


def test_report_is_deterministic_without_timings():
    spec = {"families": [{"family": "twisted", "n": "4..6"}]}
    a = dumps_report(report_document(spec, run_claims(spec, ["C1", "C10"])))
    b = dumps_report(report_document(spec, run_claims(spec, ["C1", "C10"])))
    assert a == b
    doc = json.loads(a)
    assert list(doc) == ["tool", "version", "schema", "corpus", "summary", "results"]
    assert "runtime_ms" not in doc["results"][0]


def test_parallel_matches_serial():
    spec = {"families": [{"family": "twisted", "n": "4..7"}, {"family": "dn", "n": [5, 7]}]}
    serial = run_claims(spec, ["C1", "C5", "C8"], threads=1)
    parallel = run_claims(spec, ["C1", "C5", "C8"], threads=2)
    strip = lambda rs: [r.to_document() for r in rs]  # noqa: E731
    assert strip(serial) == strip(parallel)


def test_claim_result_document():
    r = ClaimResult("C1", "T_4", "pass", {"x": 1}, 12)
    assert "runtime_ms" not in r.to_document()
    assert r.to_document(timings=True)["runtime_ms"] == 12
