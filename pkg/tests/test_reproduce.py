"""Mechanics of the reproduce runner: registry, isolation, and report formats."""

import time

from signlab import reproduce
from signlab.reproduce import (
    CHECKS,
    Check,
    CheckResult,
    ReproduceContext,
    ReproduceReport,
    run_check,
    run_suite,
)


def _instant(ctx):
    return CheckResult(True, "fine")


def _boom(ctx):
    raise RuntimeError("deliberate failure")


def _hang(ctx):
    time.sleep(60)
    return CheckResult(True, "never")


def make_check(fn, check_id="probe"):
    return Check(
        check_id=check_id,
        anchor="probe-anchor",
        expected="fine",
        budget_secs=5.0,
        fn=fn,
    )


# --- the registry ----------------------------------------------------------------

def test_registry_has_nine_distinct_checks():
    assert len(CHECKS) == 9
    ids = [c.check_id for c in CHECKS]
    anchors = [c.anchor for c in CHECKS]
    assert len(set(ids)) == 9
    assert len(set(anchors)) == 9
    for c in CHECKS:
        assert c.budget_secs > 0
        # Machine lines split on spaces, so no field may contain one.
        assert " " not in c.check_id
        assert " " not in c.anchor
        assert " " not in c.expected


# --- process isolation -------------------------------------------------------------
# The fork-based worker resolves its check from the module registry, so the
# probes below are installed there for the duration of one test.

def run_probe(monkeypatch, fn, timeout_secs):
    check = make_check(fn)
    monkeypatch.setitem(reproduce._BY_ID, check.check_id, check)
    return run_check(check, ReproduceContext(), timeout_secs=timeout_secs)


def test_run_check_success(monkeypatch):
    out = run_probe(monkeypatch, _instant, timeout_secs=30.0)
    assert out.status == "PASS"
    assert out.computed == "fine"
    assert out.wall_secs >= 0.0


def test_run_check_child_exception_is_a_fail(monkeypatch):
    out = run_probe(monkeypatch, _boom, timeout_secs=30.0)
    assert out.status == "FAIL"
    assert out.computed == "error:RuntimeError"
    assert "deliberate failure" in out.detail


def test_run_check_timeout_kills_the_worker(monkeypatch):
    start = time.perf_counter()
    out = run_probe(monkeypatch, _hang, timeout_secs=1.0)
    elapsed = time.perf_counter() - start
    assert out.status == "FAIL"
    assert out.computed == "timeout(1s)"
    assert elapsed < 30.0


# --- reports --------------------------------------------------------------------------

def test_machine_text_shape_and_determinism():
    report = run_suite(ReproduceContext(), only="gates")
    text = report.machine_text()
    lines = text.splitlines()
    assert len(lines) == 1
    fields = lines[0].split(" ")
    assert len(fields) == 5
    assert fields[0] == "gates-sign-degree"
    assert fields[1] == "PASS"
    assert fields[2] == fields[3]
    assert fields[4] == "or-and-sign-degree-one"
    again = run_suite(ReproduceContext(), only="gates")
    assert again.machine_text() == text


def test_human_text_summary_counts():
    report = run_suite(ReproduceContext(), only="gates")
    human = report.human_text()
    assert "1/1 checks passed" in human
    assert report.all_passed
    assert report.exit_code == 0


def test_failing_outcome_reports_reason_and_exit_code():
    report = run_suite(
        ReproduceContext(corrupt_witness=True), only="composition-alpha2"
    )
    assert not report.all_passed
    assert report.exit_code == 1
    assert "FAIL" in report.human_text()
    assert "reason:" in report.human_text()
    machine = report.machine_text()
    assert machine.startswith("composition-alpha2 FAIL ")


def test_empty_selection_is_a_vacuous_pass():
    report = run_suite(ReproduceContext(), only="zzz")
    assert report.outcomes == ()
    assert report.machine_text() == ""
    assert report.all_passed
    assert report.exit_code == 0


def test_suite_seed_is_recorded():
    report = run_suite(ReproduceContext(seed=7), only="zzz")
    assert isinstance(report, ReproduceReport)
    assert report.seed == 7
