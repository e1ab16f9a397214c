"""Acceptance criteria: the nine headline checks, each within its time budget.

Every test runs one registered end-to-end check in-process, compares the
computed summary string against the pinned expectation, enforces the wall
clock budget, and prints an explicit pass/fail line.
"""

import time

import pytest

from signlab.boolfn import and_function, or_function
from signlab.degreelp import sign_degree
from signlab.reproduce import CHECKS, ReproduceContext

BY_ID = {check.check_id: check for check in CHECKS}


def run_criterion(number, check_id, exact=True):
    check = BY_ID[check_id]
    ctx = ReproduceContext(seed=0)
    start = time.perf_counter()
    result = check.fn(ctx)
    wall = time.perf_counter() - start
    status = "PASS" if result.ok and wall <= check.budget_secs else "FAIL"
    print(
        f"[criterion-{number}] {status} {check_id}: computed {result.computed} "
        f"(expected {check.expected}), wall {wall:.2f}s within {check.budget_secs:g}s",
        flush=True,
    )
    assert result.ok, f"{check_id}: {result.computed}; {result.detail}"
    if exact:
        assert result.computed == check.expected
    assert wall <= check.budget_secs, (
        f"{check_id} took {wall:.2f}s, budget {check.budget_secs:g}s"
    )
    return result


def test_criterion_1_gate_sign_degrees_each_within_a_second():
    # Each individual gate decision also has its own one-second budget.
    for build in (and_function, or_function):
        for k in (2, 3, 4):
            start = time.perf_counter()
            cert = sign_degree(build(k))
            wall = time.perf_counter() - start
            assert cert.value == 1
            assert wall <= 1.0, f"{build.__name__}({k}) took {wall:.2f}s"
    run_criterion(1, "gates-sign-degree")


def test_criterion_2_parity_tightness():
    run_criterion(2, "parity-tightness")


def test_criterion_3_minsky_papert_two_blocks():
    run_criterion(3, "minsky-papert-n2")


def test_criterion_4_composition_exhaustive_two_vars():
    run_criterion(4, "composition-exhaustive")


def test_criterion_5_composition_at_alpha_two():
    run_criterion(5, "composition-alpha2")


def test_criterion_6_iterated_composition():
    run_criterion(6, "iterated-composition")


def test_criterion_7_formula_sqrt_bound_sweep():
    run_criterion(7, "formula-sqrt-bound")


def test_criterion_8_adversary_star_certificates():
    # This check reports the measured deviations; its expectation pins the
    # tolerances, so re-assert those bounds here instead of string equality.
    result = run_criterion(8, "adversary-star", exact=False)
    parts = dict(kv.split(":") for kv in result.computed.split(","))
    assert float(parts["star_err"]) <= 1e-6
    assert float(parts["form_err"]) <= 1e-7


def test_criterion_9_certificate_soundness_oracle():
    run_criterion(9, "certificate-soundness")
