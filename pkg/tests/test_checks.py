import pytest

from monext import io
from monext.checks import REGISTRY, registry_ids, run_all
from monext.corpus import build_corpus, empty_corpus
from monext.extension import s3_extension

EXPECTED_GROUPS = {
    "S2": 12, "S3": 3, "S4": 7, "S5": 9, "S6": 10, "S7": 11, "A": 3,
}


def test_registry_ids_unique_and_grouped():
    ids = registry_ids()
    assert len(ids) == len(set(ids))
    counts = {}
    for i in ids:
        counts[i.split("-")[0]] = counts.get(i.split("-")[0], 0) + 1
    assert counts == EXPECTED_GROUPS
    for named in ("S2-short-five", "S5-self-central", "S7-cofibration", "A-mono-char"):
        assert named in ids


def test_small_corpus_all_pass(small_corpus):
    results = run_all(small_corpus)
    bad = [(r.id, r.counterexample) for r in results if r.status != "pass"]
    assert bad == []


def test_worker_count_does_not_change_results(small_corpus):
    ids = ["S2-retraction-4", "S5-self-central", "S6-functor", "A-mono-char"]
    serial = [r.as_dict(timing=False) for r in run_all(small_corpus, ids)]
    parallel = [r.as_dict(timing=False) for r in run_all(small_corpus, ids, workers=2)]
    assert serial == parallel
    assert [r["id"] for r in serial] == ids


def test_empty_corpus_has_no_failures():
    results = run_all(empty_corpus())
    assert {r.status for r in results} == {"empty"}


def corrupted_s3():
    doc = io.emit_extension(s3_extension(), schreier=True)
    q = doc["schreier"]["q"]
    x = next(i for i, v in enumerate(q) if v != 0 and i not in doc["k"])
    q[x] = (q[x] + 1) % 3
    return io.parse_extension(doc)


def test_corrupted_retraction_is_caught():
    C = empty_corpus()
    C.extensions.append(corrupted_s3())
    results = {r.id: r for r in run_all(C)}
    assert results["S2-retraction-4"].status == "fail"
    assert "cached retraction" in results["S2-retraction-4"].counterexample["problem"]


def test_exception_becomes_counterexample():
    from monext.checks import StatementCheck, run_check

    def boom(corpus):
        yield "first", None
        raise ValueError("bad instance")
    r = run_check(StatementCheck("X-test", "t", "s", boom), empty_corpus())
    assert r.status == "fail" and r.instances == 1
    assert "ValueError" in r.counterexample["problem"]
