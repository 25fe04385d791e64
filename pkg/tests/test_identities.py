import json

import pytest

from kshift import cache
from kshift.errors import ParameterError
from kshift.identities import (
    CHECKS,
    VerificationReport,
    _run_cases,
    check_cauchy_family,
    check_conjectures,
    check_coproducts,
    check_dual_expansions,
    check_flip,
    check_gq_to_gp,
    check_onerow_series,
    check_overlap_matrix,
    check_skew_expansions,
    check_symmetrization,
    run_check,
    run_manifest,
)


def test_gq_to_gp_small_sweep():
    report = check_gq_to_gp(max_size=4, nvars=3, max_deg=7)
    assert report.status == "PASS"
    assert report.cases == 3 * 7  # three sub-checks per strict partition


def test_gq_to_gp_parameter_errors():
    with pytest.raises(ParameterError):
        check_gq_to_gp(max_size=6, nvars=2, max_deg=9)
    with pytest.raises(ParameterError):
        check_gq_to_gp(max_size=6, nvars=3, max_deg=5)


def test_overlap_matrix():
    report = check_overlap_matrix(max_part=5)
    assert report.status == "PASS"
    with pytest.raises(ParameterError):
        check_overlap_matrix(max_part=9)


def test_skew_expansions_small():
    report = check_skew_expansions(max_size=4, nvars=3, max_deg=7)
    assert report.status == "PASS"


def test_flip_small():
    report = check_flip(max_size=5, nvars=2, max_deg=6)
    assert report.status == "PASS"


def test_coproducts_small():
    report = check_coproducts(max_size=3, nx=2, ny=2, max_deg=5)
    assert report.status == "PASS"


def test_cauchy_small():
    report = check_cauchy_family(max_size=1, nx=2, ny=2, max_deg=3)
    assert report.status == "PASS"


def test_dual_expansions():
    report = check_dual_expansions(max_size=5)
    assert report.status == "PASS"


def test_symmetrization():
    report = check_symmetrization(trials=3, seed=1)
    assert report.status == "PASS"
    assert report.cases > 0


def test_onerow_series_check():
    report = check_onerow_series(max_power=3, nvars=2, max_deg=5)
    assert report.status == "PASS"


def test_conjectures_small():
    report = check_conjectures(max_size=3, nvars=3, max_deg=3, skew_max_size=2, length_cap_size=1)
    assert report.status == "MATCH"
    assert all(f["verdict"] == "MATCH" for f in report.findings)


def test_reports_are_deterministic():
    r1 = check_dual_expansions(max_size=4)
    r2 = check_dual_expansions(max_size=4)
    assert r1.to_json() == r2.to_json()
    r3 = check_flip(max_size=4, nvars=2, max_deg=6, jobs=2)
    r4 = check_flip(max_size=4, nvars=2, max_deg=6, jobs=1)
    assert r3.to_json() == r4.to_json()


def test_reports_identical_with_cache_disabled():
    was = cache.CACHE.enabled
    try:
        a = check_onerow_series(max_power=2, nvars=2, max_deg=4).to_json()
        cache.CACHE.configure(enabled=False)
        cache.CACHE.clear_memory()
        b = check_onerow_series(max_power=2, nvars=2, max_deg=4).to_json()
    finally:
        cache.CACHE.configure(enabled=was)
    assert a == b


def test_failure_reporting_and_witness():
    cases = [("b",), ("a",), ("c",)]

    def worker(case):
        ok = case[0] != "b" and case[0] != "c"
        return ok, None if ok else {"detail": case[0]}

    report = _run_cases("demo", {}, cases, worker)
    assert report.status == "FAIL"
    assert report.cases == 3
    # the witness is the smallest failing case in sorted order
    assert report.witness["case"] == "('b',)"
    obj = json.loads(report.to_json())
    assert set(obj) == {"id", "params", "status", "cases", "witness"}


def test_run_check_and_registry():
    report = run_check("overlap-matrix", max_part=4)
    assert report.status == "PASS"
    with pytest.raises(ParameterError):
        run_check("no-such-check")
    with pytest.raises(ParameterError):
        run_check("overlap-matrix", bogus=1)
    assert set(CHECKS) >= {
        "gq-to-gp",
        "skew-expansions",
        "overlap-matrix",
        "flip",
        "coproducts",
        "cauchy",
        "dual-expansions",
        "symmetrization",
        "onerow-series",
        "conjectures",
    }


def test_run_manifest():
    records = [
        {"id": "overlap-matrix", "params": {"max_part": 3}},
        {"id": "onerow-series", "params": {"max_power": 2, "nvars": 1, "max_deg": 4}},
        {"id": "missing", "params": {}},
    ]
    reports = run_manifest(records)
    assert [r.status for r in reports] == ["PASS", "PASS", "ERROR"]


def test_witness_reverification():
    # a FAIL witness must reproduce: re-run the single instance it names
    report = check_onerow_series(max_power=2, nvars=2, max_deg=4)
    assert report.status == "PASS" and report.witness is None
