"""Command-line surface for the sign-degree laboratory.

Subcommands: signdeg, degree, witness, verify, compose, adversary, survey,
reproduce.  Human-readable tables go to stdout; ``--out`` writes the
machine-facing artifact of the subcommand (witness file, certificate file,
or the reproduce report).  Every command that asserts a degree also dumps
or writes the certificate backing it, so a separate ``verify`` run can
check the claim from the file alone.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import adversary as adv
from . import composition, reproduce, sweep
from .boolfn import BoolFunction
from .degreelp import (
    ALPHA_INFINITY,
    Alpha,
    approx_degree,
    extract_dual_witness,
    load_witness,
    save_witness,
    sign_degree,
    verify_dual_witness,
    witness_to_text,
)
from .errors import FormatError, SignLabError
from .formula import parse as parse_formula
from .formula import to_function


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signlab",
        description="certified sign-degree laboratory for Boolean functions",
    )
    parser.add_argument("--seed", type=int, default=0, help="global RNG seed")
    parser.add_argument(
        "--timeout-secs",
        type=float,
        default=300.0,
        help="per-check wall-clock cap for the reproduce suite",
    )
    parser.add_argument("--out", help="output path for the produced artifact")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_selectors(p):
        p.add_argument("--formula", help="formula text, e.g. '(x1 & x2) | !x3'")
        p.add_argument("--formula-file", help="file containing formula text")
        p.add_argument("--table", help="file containing a truth table 'n:+-...'")

    p_signdeg = sub.add_parser("signdeg", help="sign degree with certificates")
    add_selectors(p_signdeg)

    p_degree = sub.add_parser("degree", help="alpha-approximate degree")
    add_selectors(p_degree)
    p_degree.add_argument("--alpha", default="inf", help="rational >= 1, or 'inf'")

    p_witness = sub.add_parser(
        "witness", help="extract a dual witness proving degree > d"
    )
    add_selectors(p_witness)
    p_witness.add_argument("--degree", type=int, required=True, metavar="D")
    p_witness.add_argument("--alpha", default="inf")

    p_verify = sub.add_parser("verify", help="check a witness file against a function")
    add_selectors(p_verify)
    p_verify.add_argument("--witness", required=True, help="witness file to check")
    p_verify.add_argument("--alpha", help="override the alpha recorded in the file")

    p_compose = sub.add_parser(
        "compose", help="compose two functions and certify the degree product bound"
    )
    p_compose.add_argument("--outer", required=True, help="formula, table text, or file")
    p_compose.add_argument("--inner", required=True, help="formula, table text, or file")
    p_compose.add_argument("--alpha", default="inf")
    p_compose.add_argument("--emit-witness", help="write the composed witness here")

    p_adv = sub.add_parser("adversary", help="evaluate or emit adversary certificates")
    add_selectors(p_adv)
    p_adv.add_argument("--certificate", help="certificate file to evaluate")
    p_adv.add_argument("--or-certificate", type=int, metavar="K")
    p_adv.add_argument("--and-certificate", type=int, metavar="K")

    p_survey = sub.add_parser("survey", help="sign-degree histogram of all functions")
    p_survey.add_argument("--nvars", type=int, required=True)

    p_repro = sub.add_parser("reproduce", help="run the full acceptance suite")
    p_repro.add_argument("--only", help="run only checks whose id contains this")
    p_repro.add_argument(
        "--corrupt-witness", action="store_true", help=argparse.SUPPRESS
    )
    return parser


def _load_function(args) -> BoolFunction:
    chosen = [
        name
        for name, value in (
            ("--formula", args.formula),
            ("--formula-file", args.formula_file),
            ("--table", args.table),
        )
        if value
    ]
    if len(chosen) != 1:
        raise FormatError(
            "exactly one of --formula / --formula-file / --table is required"
        )
    if args.formula:
        return to_function(parse_formula(args.formula))
    if args.formula_file:
        with open(args.formula_file, "r", encoding="ascii") as fh:
            return to_function(parse_formula(fh.read().strip()))
    with open(args.table, "r", encoding="ascii") as fh:
        return BoolFunction.from_text(fh.read().strip())


def _load_operand(text: str) -> BoolFunction:
    """compose operands: inline table text, a file path, or formula text."""
    stripped = text.strip()
    head = stripped.split(":", 1)[0]
    if ":" in stripped and head.isdigit():
        return BoolFunction.from_text(stripped)
    if os.path.exists(stripped):
        with open(stripped, "r", encoding="ascii") as fh:
            content = fh.read().strip()
        inner_head = content.split(":", 1)[0]
        if ":" in content and inner_head.isdigit():
            return BoolFunction.from_text(content)
        return to_function(parse_formula(content))
    return to_function(parse_formula(stripped))


def _mask_terms(n: int, mask: int) -> str:
    if mask == 0:
        return "1"
    return "*".join(f"x{i + 1}" for i in range(n) if mask & (1 << i))


def _print_degree_result(f: BoolFunction, cert, out: Optional[str]) -> None:
    label = "sign degree" if cert.alpha.is_infinite else f"degree (alpha={cert.alpha})"
    print(f"function: {f.to_text()}")
    print(f"{label} = {cert.value}")
    rep = cert.representation
    terms = sorted(rep.coeffs.items(), key=lambda kv: (kv[0].bit_count(), kv[0]))
    print(f"representation (degree <= {rep.degree_bound}, {len(terms)} terms):")
    for mask, coeff in terms:
        print(f"  {_mask_terms(f.n, mask)}: {coeff}")
    if cert.witness is None:
        print("witness: none (degree 0 has nothing to prove)")
        return
    if out:
        save_witness(cert.witness, out)
        print(f"witness file: {out}")
    else:
        print(f"witness (claims degree >= {cert.witness.claimed_degree}):")
        print(witness_to_text(cert.witness), end="")
    check = verify_dual_witness(f, cert.witness)
    print(f"witness verification: {'ok' if check.ok else 'FAILED'}")


def _cmd_signdeg(args) -> int:
    f = _load_function(args)
    _print_degree_result(f, sign_degree(f), args.out)
    return 0


def _cmd_degree(args) -> int:
    f = _load_function(args)
    alpha = Alpha.parse(args.alpha)
    _print_degree_result(f, approx_degree(f, alpha), args.out)
    return 0


def _cmd_witness(args) -> int:
    f = _load_function(args)
    alpha = Alpha.parse(args.alpha)
    witness = extract_dual_witness(f, args.degree, alpha)
    print(f"function: {f.to_text()}")
    print(
        f"witness claims deg_{alpha}(f) >= {witness.claimed_degree} "
        f"(correlation {witness.correlation}, threshold {alpha.threshold()})"
    )
    if args.out:
        save_witness(witness, args.out)
        print(f"witness file: {args.out}")
    else:
        print(witness_to_text(witness), end="")
    return 0


def _cmd_verify(args) -> int:
    f = _load_function(args)
    witness = load_witness(args.witness)
    alpha = Alpha.parse(args.alpha) if args.alpha else witness.alpha
    check = verify_dual_witness(f, witness, alpha)
    print(f"function: {f.to_text()}")
    print(
        f"witness: claimed degree {witness.claimed_degree}, alpha {witness.alpha}"
    )
    if check.ok:
        print("verification: ok")
        return 0
    print("verification: FAILED")
    for violation in check.violations:
        print(f"  {violation}")
    return 1


def _cmd_compose(args) -> int:
    outer = _load_operand(args.outer)
    inner = _load_operand(args.inner)
    alpha = Alpha.parse(args.alpha)
    report = composition.check_supermultiplicativity(outer, inner, alpha)
    rows = [
        ("outer arity", outer.n),
        ("inner arity", inner.n),
        ("composed arity", outer.n * inner.n),
        (f"outer degree (alpha={alpha})", report.outer_degree),
        ("inner sign degree", report.inner_degree),
        ("product bound", report.product),
        ("composed degree", report.actual),
        ("slack", report.slack),
        ("certificate verified", "yes" if report.certificate_verified else "no"),
    ]
    for name, value in rows:
        print(f"{name:<28}{value}")
    if report.witness is not None and args.emit_witness:
        save_witness(report.witness, args.emit_witness)
        print(f"{'composed witness file':<28}{args.emit_witness}")
    elif report.witness is not None:
        print("composed witness:")
        print(witness_to_text(report.witness), end="")
    return 0


def _cmd_adversary(args) -> int:
    builders = [
        flag
        for flag, value in (
            ("--or-certificate", args.or_certificate),
            ("--and-certificate", args.and_certificate),
        )
        if value is not None
    ]
    if builders and args.certificate:
        raise FormatError("choose either a builder flag or --certificate, not both")
    if len(builders) > 1:
        raise FormatError("choose at most one of --or-certificate/--and-certificate")
    if builders:
        if args.or_certificate is not None:
            cert = adv.build_or_certificate(args.or_certificate)
        else:
            cert = adv.build_and_certificate(args.and_certificate)
        if args.out:
            adv.save_certificate(cert, args.out)
            print(f"certificate file: {args.out}")
        else:
            print(adv.certificate_to_text(cert), end="")
        return 0
    if not args.certificate:
        raise FormatError(
            "adversary needs --certificate with a function selector, "
            "or one of --or-certificate/--and-certificate"
        )
    f = _load_function(args)
    cert = adv.load_certificate(args.certificate)
    report = adv.adv_ratio(f, cert, seed=args.seed)
    print(f"function: {f.to_text()}")
    print(f"numerator   ||G.F||  = {report.numerator:.10f}")
    for i, denom in enumerate(report.denominators):
        print(f"denominator ||G.D{i + 1}|| = {denom:.10f}")
    print(f"ratio = {report.ratio:.10f}")
    return 0


def _cmd_survey(args) -> int:
    result = sweep.survey(args.nvars)
    total = sum(count for _, count in result.histogram)
    print(
        f"survey n={args.nvars}: {total} functions, "
        f"{result.class_count} equivalence classes"
    )
    print(f"{'degree':<8}{'functions':>12}")
    for degree, count in result.histogram:
        print(f"{degree:<8}{count:>12}")
    return 0


def _cmd_reproduce(args) -> int:
    ctx = reproduce.ReproduceContext(
        seed=args.seed, corrupt_witness=args.corrupt_witness
    )
    report = reproduce.run_suite(ctx, timeout_secs=args.timeout_secs, only=args.only)
    sys.stdout.write(report.human_text())
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(report.machine_text())
        print(f"machine report: {args.out}")
    return report.exit_code


_COMMANDS = {
    "signdeg": _cmd_signdeg,
    "degree": _cmd_degree,
    "witness": _cmd_witness,
    "verify": _cmd_verify,
    "compose": _cmd_compose,
    "adversary": _cmd_adversary,
    "survey": _cmd_survey,
    "reproduce": _cmd_reproduce,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SignLabError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error[IO]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
