"""The reproduce suite: nine end-to-end checks over the whole laboratory.

Each check recomputes one headline claim from scratch and reports a
space-free ``computed`` string next to its pinned ``expected`` string, so a
machine report line is ``<check-id> <status> <computed> <expected>
<anchor>`` and two runs with the same seed produce byte-identical reports.

Checks run in forked worker processes so a runaway computation is a FAIL
with a reason, never a hang.  All randomness flows from the single seed in
:class:`ReproduceContext`.
"""

from __future__ import annotations

import math
import multiprocessing
import os
import random
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple

import numpy as np

from . import adversary, composition, sweep
from .boolfn import BoolFunction, and_function, or_function, xor_function
from .degreelp import (
    ALPHA_INFINITY,
    Alpha,
    approx_degree,
    brute_force_degree_at_most,
    extract_dual_witness,
    is_degree_at_most,
    load_witness,
    save_witness,
    sign_degree,
    verify_dual_witness,
)
from .errors import InvalidWitnessError
from .formula import build_minsky_papert, parse, to_function


@dataclass(frozen=True)
class ReproduceContext:
    seed: int = 0
    corrupt_witness: bool = False  # negative control: sabotage the emitted file


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    computed: str
    detail: str = ""


@dataclass(frozen=True)
class Check:
    check_id: str
    anchor: str
    expected: str
    budget_secs: float
    fn: Callable[[ReproduceContext], CheckResult]


@dataclass(frozen=True)
class CheckOutcome:
    check_id: str
    anchor: str
    status: str
    computed: str
    expected: str
    detail: str
    wall_secs: float


def _two_var_functions():
    return [
        BoolFunction(2, tuple(-1 if (code >> x) & 1 else 1 for x in range(4)))
        for code in range(16)
    ]


# ---------------------------------------------------------------------------
# The nine checks.

def check_gates_sign_degree(ctx: ReproduceContext) -> CheckResult:
    parts = []
    for name, build in (("AND", and_function), ("OR", or_function)):
        for k in (2, 3, 4):
            cert = sign_degree(build(k))
            parts.append(f"{name}{k}:{cert.value}")
    computed = ",".join(parts)
    return CheckResult(
        ok=computed == _EXPECTED_GATES,
        computed=computed,
        detail="each certificate re-verified during extraction",
    )


def check_parity_tightness(ctx: ReproduceContext) -> CheckResult:
    expr = parse("(x1 & !x2) | (!x1 & x2)")
    f4 = to_function(expr)
    parts = [f"formula4:{sign_degree(f4).value}"]
    for k in range(1, 5):
        parts.append(f"XOR{k}:{sign_degree(xor_function(k)).value}")
    computed = ",".join(parts)
    return CheckResult(
        ok=computed == _EXPECTED_PARITY,
        computed=computed,
        detail="size-4 parity formula plus XOR_k for k<=4",
    )


def check_minsky_papert_n2(ctx: ReproduceContext) -> CheckResult:
    f = to_function(build_minsky_papert(2))  # OR_2 of two AND_4 blocks, 8 vars
    feas1, _ = is_degree_at_most(f, 1, ALPHA_INFINITY)
    feas2, rep = is_degree_at_most(f, 2, ALPHA_INFINITY)
    witness_ok = False
    if not feas1:
        witness = extract_dual_witness(f, 1, ALPHA_INFINITY)
        witness_ok = verify_dual_witness(f, witness, ALPHA_INFINITY).ok
    rep_ok = feas2 and rep.verify(f, ALPHA_INFINITY)
    computed = ",".join(
        [
            f"d1:{'feasible' if feas1 else 'infeasible'}",
            f"d2:{'feasible' if feas2 else 'infeasible'}",
            f"signdeg:{2 if (not feas1 and feas2) else '?'}",
            f"witness:{'ok' if witness_ok and rep_ok else 'fail'}",
        ]
    )
    return CheckResult(
        ok=computed == _EXPECTED_MP2,
        computed=computed,
        detail="both sides certified: degree-2 polynomial and degree->2 dual witness",
    )


def check_composition_exhaustive(ctx: ReproduceContext) -> CheckResult:
    funcs = _two_var_functions()
    pairs = violations = verified = 0
    for f in funcs:
        for g in funcs:
            pairs += 1
            try:
                report = composition.check_supermultiplicativity(f, g)
            except (AssertionError, InvalidWitnessError):
                violations += 1
                continue
            if report.witness is not None and report.certificate_verified:
                verified += 1
    computed = f"pairs:{pairs},violations:{violations},verified:{verified}"
    return CheckResult(
        ok=computed == _EXPECTED_COMPOSE_ALL,
        computed=computed,
        detail="all ordered pairs of 2-variable functions, composed on 4 variables",
    )


def check_composition_alpha2(ctx: ReproduceContext) -> CheckResult:
    alpha2 = Alpha(Fraction(2))
    f = xor_function(2)
    outer = approx_degree(f, alpha2)  # deg_2(XOR_2) = 2, witness at alpha=2
    inner = sign_degree(f)  # deg_inf(XOR_2) = 2, witness at alpha=inf
    h = composition.compose_witnesses(f, f, outer.witness, inner.witness)
    target = xor_function(4)
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "xor4-alpha2-witness.txt")
        save_witness(h, path)
        if ctx.corrupt_witness:
            _corrupt_witness_file(path)
        loaded = load_witness(path)
        check = verify_dual_witness(target, loaded, alpha2)
    confirmed = approx_degree(target, alpha2).value
    computed = ",".join(
        [
            f"claimed:{loaded.claimed_degree}",
            f"alpha:{loaded.alpha}",
            f"verified:{'ok' if check.ok else 'fail'}",
            f"deg2_xor4:{confirmed}",
        ]
    )
    detail = "witness round-tripped through the file format before verification"
    if not check.ok:
        detail = "; ".join(check.violations)
    return CheckResult(
        ok=computed == _EXPECTED_COMPOSE_A2,
        computed=computed,
        detail=detail,
    )


def check_iterated_composition(ctx: ReproduceContext) -> CheckResult:
    funcs = _two_var_functions()
    violations = 0
    for f in funcs:
        base = sign_degree(f).value
        iterated = composition.iterate_compose(f, 2)
        actual = sign_degree(iterated.table).value
        if actual < base * base:
            violations += 1
    computed = f"functions:16,violations:{violations}"
    return CheckResult(
        ok=computed == _EXPECTED_ITERATED,
        computed=computed,
        detail="f(f, f) on 4 variables for every 2-variable f",
    )


def check_formula_sqrt_bound(ctx: ReproduceContext) -> CheckResult:
    report = sweep.formula_sqrt_bound_check(nvars=6, max_size=6)
    computed = ",".join(
        [
            f"tables:{report.table_count}",
            f"classes:{report.class_count}",
            f"violations:{len(report.violations)}",
        ]
    )
    return CheckResult(
        ok=computed == _EXPECTED_SQRT and report.all_within,
        computed=computed,
        detail="every table realized by a formula of size <= 6 on <= 6 variables",
    )


def check_adversary_star(ctx: ReproduceContext) -> CheckResult:
    star_err = 0.0
    for k in range(1, 9):
        for build, gate in (
            (adversary.build_or_certificate, or_function),
            (adversary.build_and_certificate, and_function),
        ):
            report = adversary.adv_ratio(gate(k), build(k), seed=ctx.seed)
            star_err = max(star_err, abs(report.ratio - math.sqrt(k)))

    def norm(mat):
        return adversary.spectral_norm(mat, seed=ctx.seed)

    form_err = 0.0
    form_err = max(form_err, abs(norm(np.eye(8)) - 1.0))
    form_err = max(form_err, abs(norm(np.ones((8, 8))) - 8.0))
    star5 = np.zeros((6, 6))
    for i in range(1, 6):
        star5[0, i] = star5[i, 0] = 1.0
    form_err = max(form_err, abs(norm(star5) - math.sqrt(5)))
    a, b, c = 1.0, 2.0, -3.0
    two = np.array([[a, b], [b, c]])
    disc = math.sqrt((a - c) ** 2 + 4 * b * b)
    closed = max(abs((a + c + disc) / 2), abs((a + c - disc) / 2))
    form_err = max(form_err, abs(norm(two) - closed))

    computed = f"star_err:{star_err:.3e},form_err:{form_err:.3e}"
    return CheckResult(
        ok=star_err <= 1e-6 and form_err <= 1e-7,
        computed=computed,
        detail="star certificates k<=8 on OR/AND plus four closed-form norms",
    )


def check_certificate_soundness(ctx: ReproduceContext) -> CheckResult:
    rng = random.Random(ctx.seed)
    alpha2 = Alpha(Fraction(2))
    cert_failures = 0
    oracle_disagreements = 0
    for _ in range(500):
        n = rng.randint(1, 3)
        values = tuple(rng.choice((1, -1)) for _ in range(1 << n))
        f = BoolFunction(n, values)
        for alpha in (ALPHA_INFINITY, alpha2):
            cert = approx_degree(f, alpha)
            if not cert.representation.verify(f, alpha):
                cert_failures += 1
            if cert.value >= 1 and not verify_dual_witness(f, cert.witness, alpha).ok:
                cert_failures += 1
        for d in range(min(2, n) + 1):
            lp_answer, _ = is_degree_at_most(f, d, ALPHA_INFINITY)
            oracle_answer, _ = brute_force_degree_at_most(f, d, 16)
            if lp_answer != oracle_answer:
                oracle_disagreements += 1
    computed = ",".join(
        [
            "functions:500",
            f"certificate_failures:{cert_failures}",
            f"oracle_disagreements:{oracle_disagreements}",
        ]
    )
    return CheckResult(
        ok=computed == _EXPECTED_SOUNDNESS,
        computed=computed,
        detail="seeded random functions, n<=3, LP vs integer-box brute force",
    )


def _corrupt_witness_file(path: str) -> None:
    """Bump one table value so the file still parses but verification fails."""
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    for i, line in enumerate(lines):
        if i == 0 or line.startswith("n="):
            continue
        mask, value = line.split()
        lines[i] = f"{mask} {Fraction(value) + 1}"
        break
    else:
        raise RuntimeError("no table line to corrupt")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


_EXPECTED_GATES = "AND2:1,AND3:1,AND4:1,OR2:1,OR3:1,OR4:1"
_EXPECTED_PARITY = "formula4:2,XOR1:1,XOR2:2,XOR3:3,XOR4:4"
_EXPECTED_MP2 = "d1:infeasible,d2:feasible,signdeg:2,witness:ok"
_EXPECTED_COMPOSE_ALL = "pairs:256,violations:0,verified:224"
_EXPECTED_COMPOSE_A2 = "claimed:4,alpha:2,verified:ok,deg2_xor4:4"
_EXPECTED_ITERATED = "functions:16,violations:0"
_EXPECTED_SQRT = "tables:1111364,classes:108,violations:0"
_EXPECTED_STAR = "star<=1e-06,form<=1e-07"
_EXPECTED_SOUNDNESS = "functions:500,certificate_failures:0,oracle_disagreements:0"

CHECKS: Tuple[Check, ...] = (
    Check(
        "gates-sign-degree",
        "or-and-sign-degree-one",
        _EXPECTED_GATES,
        6.0,
        check_gates_sign_degree,
    ),
    Check(
        "parity-tightness",
        "parity-sign-degree-tight",
        _EXPECTED_PARITY,
        5.0,
        check_parity_tightness,
    ),
    Check(
        "minsky-papert-n2",
        "minsky-papert-sign-degree",
        _EXPECTED_MP2,
        60.0,
        check_minsky_papert_n2,
    ),
    Check(
        "composition-exhaustive",
        "composition-supermultiplicative",
        _EXPECTED_COMPOSE_ALL,
        120.0,
        check_composition_exhaustive,
    ),
    Check(
        "composition-alpha2",
        "composition-finite-alpha",
        _EXPECTED_COMPOSE_A2,
        30.0,
        check_composition_alpha2,
    ),
    Check(
        "iterated-composition",
        "iterated-composition-square",
        _EXPECTED_ITERATED,
        60.0,
        check_iterated_composition,
    ),
    Check(
        "formula-sqrt-bound",
        "formula-sqrt-degree-bound",
        _EXPECTED_SQRT,
        600.0,
        check_formula_sqrt_bound,
    ),
    Check(
        "adversary-star",
        "star-certificate-sqrt-k",
        _EXPECTED_STAR,
        30.0,
        check_adversary_star,
    ),
    Check(
        "certificate-soundness",
        "certificate-soundness-oracle",
        _EXPECTED_SOUNDNESS,
        600.0,
        check_certificate_soundness,
    ),
)

_BY_ID = {check.check_id: check for check in CHECKS}


# ---------------------------------------------------------------------------
# Runner.

def _child_entry(conn, check_id: str, ctx: ReproduceContext) -> None:
    check = _BY_ID[check_id]
    start = time.perf_counter()
    try:
        result = check.fn(ctx)
        wall = time.perf_counter() - start
        conn.send((result.ok, result.computed, result.detail, wall))
    except Exception as exc:  # reported as FAIL with reason, never a crash
        wall = time.perf_counter() - start
        conn.send((False, f"error:{type(exc).__name__}", str(exc), wall))
    finally:
        conn.close()


def run_check(
    check: Check, ctx: ReproduceContext, timeout_secs: float
) -> CheckOutcome:
    """Run one check in a forked worker with a hard wall-clock cap."""
    mp = multiprocessing.get_context("fork")
    recv_end, send_end = mp.Pipe(duplex=False)
    proc = mp.Process(target=_child_entry, args=(send_end, check.check_id, ctx))
    proc.start()
    send_end.close()
    proc.join(timeout_secs)
    payload = recv_end.recv() if recv_end.poll() else None
    recv_end.close()
    if proc.is_alive():
        proc.terminate()
        proc.join()
    if payload is None:
        return CheckOutcome(
            check_id=check.check_id,
            anchor=check.anchor,
            status="FAIL",
            computed=f"timeout({timeout_secs:g}s)",
            expected=check.expected,
            detail=f"no result within {timeout_secs:g}s",
            wall_secs=float(timeout_secs),
        )
    ok, computed, detail, wall = payload
    return CheckOutcome(
        check_id=check.check_id,
        anchor=check.anchor,
        status="PASS" if ok else "FAIL",
        computed=computed,
        expected=check.expected,
        detail=detail,
        wall_secs=wall,
    )


@dataclass(frozen=True)
class ReproduceReport:
    seed: int
    outcomes: Tuple[CheckOutcome, ...]

    @property
    def all_passed(self) -> bool:
        return all(o.status == "PASS" for o in self.outcomes)

    @property
    def exit_code(self) -> int:
        return 0 if self.all_passed else 1

    def machine_text(self) -> str:
        """One line per check; contains no wall times, so identical runs are
        byte-identical."""
        if not self.outcomes:
            return ""
        lines = []
        for o in self.outcomes:
            fields = (o.check_id, o.status, o.computed, o.expected, o.anchor)
            lines.append(" ".join(field.replace(" ", "_") for field in fields))
        return "\n".join(lines) + "\n"

    def human_text(self) -> str:
        width = max((len(o.check_id) for o in self.outcomes), default=12)
        lines = [f"reproduce suite (seed {self.seed})"]
        for o in self.outcomes:
            lines.append(
                f"{o.check_id:<{width}}  {o.status:<4} {o.wall_secs:>8.2f}s  "
                f"{o.computed} -> {o.expected}"
            )
            if o.status == "FAIL" and o.detail:
                lines.append(f"{'':<{width}}  reason: {o.detail}")
        passed = sum(1 for o in self.outcomes if o.status == "PASS")
        lines.append(f"{passed}/{len(self.outcomes)} checks passed")
        return "\n".join(lines) + "\n"


def run_suite(
    ctx: ReproduceContext,
    timeout_secs: float = 300.0,
    only: Optional[str] = None,
) -> ReproduceReport:
    """Run the registry in canonical order, optionally filtered by substring."""
    selected = [c for c in CHECKS if only is None or only in c.check_id]
    outcomes = tuple(run_check(c, ctx, timeout_secs) for c in selected)
    return ReproduceReport(seed=ctx.seed, outcomes=outcomes)
