import json

import pytest

from qdsym import harness
from qdsym.harness import CLAIMS, ClaimReport, RunManifest, diff_baseline, emit, run
from qdsym.modarith import SizeGuardError
from qdsym.symspace import Status

SMALL = RunManifest(k_range=(2, 4), count_k_range=(2, 10), v_range=(1, 3))


@pytest.fixture(scope="module")
def small_reports():
    return run(SMALL)


def test_registry_complete(default_reports):
    produced = {r.claim_id for r in default_reports}
    assert produced == set(CLAIMS)


def test_empty_k_range_gives_empty_report():
    assert run(RunManifest(k_range=(5, 4))) == []
    for fmt in ("json", "markdown", "table"):
        assert emit([], fmt) == ""


def test_unknown_format():
    with pytest.raises(ValueError, match="unknown format"):
        emit([], "yaml")


def test_size_guard():
    with pytest.raises(SizeGuardError, match="max k = 25"):
        run(RunManifest(k_range=(2, 26), max_k=25))
    with pytest.raises(SizeGuardError, match="max k = 200"):
        run(RunManifest(k_range=(2, 3), count_k_range=(2, 201)))


def test_sorted_by_claim_then_params(small_reports):
    keys = [r.sort_key() for r in small_reports]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_claim_filter():
    reports = run(RunManifest(k_range=(2, 3), claims=("invol.*",), count_k_range=(2, 5)))
    assert {r.claim_id for r in reports} == {
        "invol.R2-count", "invol.Nr-bound", "invol.C4k-witness", "invol.C4k-classes",
        "invol.classes-sum", "invol.aut2-sum", "invol.Q-subset-R", "invol.R-neq-Q",
    }


def test_r2_count_exact_to_200():
    reports = run(RunManifest(k_range=(2, 2), claims=("invol.R2-count",), count_k_range=(2, 200)))
    assert len(reports) == 199
    assert {r.status for r in reports} == {Status.EXACT}


def test_known_mismatches_are_reported(default_reports):
    def status(claim, **params):
        (rep,) = [r for r in default_reports if r.claim_id == claim and r.params == params]
        return rep.status

    assert status("aut.eq1-valid", k=6, r=7, s=11) is Status.MISMATCH
    assert status("aut.order-vs-canonical", k=4, r=3, s=0) is Status.MISMATCH
    assert status("space.HQ", k=6, r=17, s=8) is Status.MISMATCH
    assert status("invol.C4k-classes", k=5) is Status.MISMATCH
    assert status("invol.C4k-witness", k=48) is Status.EXACT
    assert status("space.Q", k=8, r=3, s=12) is Status.MOD_N_MATCH
    assert status("example.sets", k=6, r=5, s=3, item="H") is Status.MISMATCH


def test_json_emit_is_ndjson(small_reports):
    text = emit(small_reports, "json")
    rows = [json.loads(line) for line in text.splitlines()]
    assert len(rows) == len(small_reports)
    assert set(rows[0]) == {"claim_id", "params", "status", "adapter", "lhs", "rhs"}
    assert "elapsed" in json.loads(emit(small_reports[:1], "json", timings=True).splitlines()[0])


def test_seed_only_touches_sampled_checks():
    a = run(RunManifest(k_range=(2, 3), count_k_range=(2, 3), seed=1))
    b = run(RunManifest(k_range=(2, 3), count_k_range=(2, 3), seed=2))
    assert [r.baseline_row() for r in a] == [r.baseline_row() for r in b]


def test_markdown_counts_mismatches(small_reports):
    text = emit(small_reports, "markdown")
    assert text.startswith("# Verification summary")
    mismatches = sum(1 for r in small_reports if r.claim_id == "aut.eq1-valid" and r.status is Status.MISMATCH)
    assert f"### aut.eq1-valid ({mismatches} mismatches)" in text
    table = emit(small_reports, "table")
    assert table.splitlines()[0].split()[:2] == ["claim", "EXACT"]


def test_baseline_roundtrip_and_drift(small_reports, tmp_path):
    path = tmp_path / "baseline.json"
    with pytest.raises(harness.BaselineMissing, match="--bless"):
        diff_baseline(small_reports, path)
    harness.bless(small_reports, path)
    assert diff_baseline(small_reports, path).ok

    flipped = [ClaimReport(r.claim_id, r.params, r.status, r.lhs, r.rhs, r.adapter) for r in small_reports]
    target = next(i for i, r in enumerate(flipped) if r.status is Status.MISMATCH)
    flipped[target].status = Status.EXACT
    diff = diff_baseline(flipped, path)
    assert not diff.ok and len(diff.changed) == 1
    assert "MISMATCH/- -> EXACT/-" in diff.describe()

    diff = diff_baseline(small_reports[1:], path)
    assert diff.missing and not diff.changed
