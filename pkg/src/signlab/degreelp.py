"""Degree decisions by exact LP feasibility, plus dual-witness machinery.

``is_degree_at_most`` decides whether a Boolean function admits a degree-d
polynomial p with 1 <= p(x)f(x) everywhere (and p(x)f(x) <= alpha for finite
alpha) — exactly, over the rationals.  A positive answer is returned with a
:class:`SignRepresentation` that is re-verified pointwise; a negative answer
can be certified by :func:`extract_dual_witness`, which solves the dual
problem of maximizing the correlation <f,p> over tables p with unit l1 mass
that are orthogonal to every character below the claimed degree.  The two
code paths share no logic with the verifiers, so every certificate is
checked independently of the simplex.

The primal feasibility LP is the authoritative decider; witness extraction
is a separate solve.  Keeping the two apart means nothing here depends on
whether feasibility and a witness at the exact threshold value can coexist
on the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Optional, Tuple

from . import kernels, simplex
from .boolfn import (
    BoolFunction,
    RationalTable,
    character_eval,
    fourier_transform,
    inner_product,
    l1_norm,
)
from .errors import (
    ArityMismatchError,
    FormatError,
    InvalidWitnessError,
    LimitError,
    NotALowerBoundError,
)

# Beyond this arity the decider works on a growing subset of cube points
# (candidates are still verified on every point before being accepted).
_ROW_GENERATION_ARITY = 7
_ROW_BATCH = 64


@dataclass(frozen=True)
class Alpha:
    """Approximation parameter: a finite rational >= 1, or infinity.

    The correlation threshold a dual witness must reach is
    (alpha-1)/(alpha+1) for finite alpha and 1 for alpha = infinity;
    alpha=2 gives 1/3 and alpha=1 gives 0.
    """

    value: Optional[Fraction]

    def __post_init__(self):
        if self.value is not None:
            v = Fraction(self.value)
            if v < 1:
                raise LimitError(f"alpha must be >= 1 or infinite, got {v}")
            object.__setattr__(self, "value", v)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def threshold(self) -> Fraction:
        if self.is_infinite:
            return Fraction(1)
        return (self.value - 1) / (self.value + 1)

    @classmethod
    def parse(cls, text: str) -> "Alpha":
        text = text.strip().lower()
        if text in ("inf", "infinity", "oo"):
            return ALPHA_INFINITY
        try:
            return cls(Fraction(text))
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"bad alpha value {text!r}") from None

    def __str__(self):
        return "inf" if self.is_infinite else str(self.value)


ALPHA_INFINITY = Alpha(None)


def monomials(n: int, d: int):
    """Subset masks T with |T| <= d, ordered by (|T|, mask)."""
    out = []
    for size in range(d + 1):
        for comb in combinations(range(n), size):
            mask = 0
            for i in comb:
                mask |= 1 << i
            out.append(mask)
    return out


@dataclass(frozen=True)
class SignRepresentation:
    """A primal certificate: polynomial p with 1 <= p(x)f(x) (<= alpha)."""

    n: int
    degree_bound: int
    coeffs: Dict[int, Fraction]

    def evaluate(self, x: int) -> Fraction:
        return sum(
            (c * character_eval(T, x) for T, c in self.coeffs.items()),
            Fraction(0),
        )

    def verify(self, f: BoolFunction, alpha: "Alpha") -> bool:
        """Pointwise re-check of the defining inequalities (no LP involved)."""
        if f.n != self.n:
            raise ArityMismatchError(f"arity mismatch: {f.n} vs {self.n}")
        if any(T.bit_count() > self.degree_bound for T in self.coeffs):
            return False
        for x in range(1 << self.n):
            prod = self.evaluate(x) * f.values[x]
            if prod < 1:
                return False
            if not alpha.is_infinite and prod > alpha.value:
                return False
        return True

    def as_rational_table(self) -> RationalTable:
        entries = tuple(self.evaluate(x) for x in range(1 << self.n))
        return RationalTable(self.n, entries)


@dataclass(frozen=True)
class DualWitness:
    """A lower-bound certificate: table p with unit l1 mass, correlation at
    least the alpha threshold, and orthogonality to all characters below the
    claimed degree."""

    claimed_degree: int
    alpha: Alpha
    table: RationalTable
    correlation: Optional[Fraction] = None
    l1_mass: Optional[Fraction] = None
    orthogonality_level: Optional[int] = None

    @property
    def n(self) -> int:
        return self.table.n


@dataclass(frozen=True)
class WitnessCheck:
    ok: bool
    violations: Tuple[str, ...]


@dataclass(frozen=True)
class DegreeCertificate:
    value: int
    alpha: Alpha
    representation: SignRepresentation
    witness: Optional[DualWitness]


def _decide_on_rows(f: BoolFunction, d: int, alpha: Alpha, row_masks):
    """Exact feasibility of the sign-representation LP on a subset of points."""
    mons = monomials(f.n, d)
    k = len(mons)
    constraints = []
    for x in row_masks:
        fx = f.values[x]
        base = [fx * character_eval(T, x) for T in mons]
        coeffs = base + [-c for c in base]
        constraints.append((coeffs, simplex.GE, 1))
        if not alpha.is_infinite:
            constraints.append((coeffs, simplex.LE, alpha.value))
    res = simplex.solve_lp(2 * k, constraints, objective=None)
    if res.status != simplex.OPTIMAL:
        return None
    coeffs = {}
    for j, T in enumerate(mons):
        c = res.x[j] - res.x[k + j]
        if c != 0:
            coeffs[T] = c
    return SignRepresentation(f.n, d, coeffs)


def _initial_rows(n: int):
    total = 1 << n
    stride = max(1, total // 64)
    rows = set(range(0, total, stride))
    rows.add(total - 1)
    return sorted(rows)


def is_degree_at_most(
    f: BoolFunction, d: int, alpha: Alpha = ALPHA_INFINITY
) -> Tuple[bool, Optional[SignRepresentation]]:
    """Decide deg_alpha(f) <= d; on success also return a verified certificate.

    The LP has one variable pair per monomial |T| <= d and one constraint
    per cube point.  For arity >= 7 the decider grows the point set lazily:
    infeasibility on a subset already proves infeasibility, and feasible
    candidates are accepted only after passing the full pointwise check.
    """
    if d < 0 or d > f.n:
        raise LimitError(f"degree bound {d} outside 0..{f.n}")
    total = 1 << f.n
    if f.n < _ROW_GENERATION_ARITY:
        rep = _decide_on_rows(f, d, alpha, range(total))
        if rep is None:
            return False, None
        if not rep.verify(f, alpha):
            raise AssertionError("LP produced a non-verifying representation")
        return True, rep

    rows = _initial_rows(f.n)
    known = set(rows)
    for _ in range(total):
        rep = _decide_on_rows(f, d, alpha, rows)
        if rep is None:
            return False, None
        violations = []
        for x in range(total):
            prod = rep.evaluate(x) * f.values[x]
            deficit = Fraction(1) - prod
            if not alpha.is_infinite:
                deficit = max(deficit, prod - alpha.value)
            if deficit > 0:
                violations.append((deficit, x))
        if not violations:
            if not rep.verify(f, alpha):
                raise AssertionError("LP produced a non-verifying representation")
            return True, rep
        violations.sort(key=lambda t: (-t[0], t[1]))
        for _, x in violations[:_ROW_BATCH]:
            if x not in known:
                known.add(x)
                rows.append(x)
        rows.sort()
    raise AssertionError("row generation failed to converge")


def sign_degree(f: BoolFunction) -> DegreeCertificate:
    """Minimal d admitting a sign representation, with both certificates.

    The returned witness has claimed degree d and proves deg > d-1; it is
    absent for d = 0 (nothing to prove below a constant).
    """
    return approx_degree(f, ALPHA_INFINITY)


def approx_degree(f: BoolFunction, alpha: Alpha) -> DegreeCertificate:
    """Minimal d with is_degree_at_most(f, d, alpha), by ascending search."""
    for d in range(f.n + 1):
        feasible, rep = is_degree_at_most(f, d, alpha)
        if feasible:
            witness = extract_dual_witness(f, d - 1, alpha) if d >= 1 else None
            return DegreeCertificate(d, alpha, rep, witness)
    raise AssertionError("degree search failed: d=n is always feasible")


def best_correlation(f: BoolFunction, d: int) -> Tuple[Fraction, RationalTable]:
    """Exact maximum of <f,p> over l1(p) <= 1, <p, chi_T> = 0 for |T| <= d.

    This is the dual side of the degree-d feasibility question: the maximum
    is < 1 exactly when a degree-d sign representation exists (and for
    finite alpha, infeasibility pushes it strictly above (alpha-1)/(alpha+1)).
    """
    n = f.n
    total = 1 << n
    mons = monomials(n, d) if d >= 0 else []
    # variables: p+ (total), p- (total)
    constraints = []
    constraints.append(([1] * (2 * total), simplex.LE, 1))
    for T in mons:
        chi_row = [character_eval(T, x) for x in range(total)]
        constraints.append((chi_row + [-c for c in chi_row], simplex.EQ, 0))
    objective = [Fraction(v) for v in f.values]
    objective += [-c for c in objective]
    res = simplex.solve_lp(2 * total, constraints, objective=objective, maximize=True)
    if res.status != simplex.OPTIMAL:
        raise AssertionError(f"witness LP ended {res.status}")
    entries = tuple(res.x[x] - res.x[total + x] for x in range(total))
    return res.value, RationalTable(n, entries)


def extract_dual_witness(f: BoolFunction, d: int, alpha: Alpha) -> DualWitness:
    """Certify deg_alpha(f) > d with a verified dual witness of claimed degree d+1.

    Raises ``NotALowerBoundError`` when deg_alpha(f) <= d actually holds.
    """
    feasible, _ = is_degree_at_most(f, d, alpha)
    if feasible:
        raise NotALowerBoundError(
            f"degree {d} is feasible for alpha={alpha}; no witness exists"
        )
    corr, table = best_correlation(f, d)
    mass = l1_norm(table)
    if mass == 0:
        raise AssertionError("witness LP returned the zero table")
    if mass != 1:
        table = table.scale(Fraction(1) / mass)
        corr = inner_product(f, table)
    witness = DualWitness(
        claimed_degree=d + 1,
        alpha=alpha,
        table=table,
        correlation=corr,
        l1_mass=Fraction(1),
        orthogonality_level=d + 1,
    )
    check = verify_dual_witness(f, witness, alpha)
    if not check.ok:
        raise AssertionError(
            "extracted witness failed verification: " + "; ".join(check.violations)
        )
    return witness


def zero_degree_witness(f: BoolFunction) -> DualWitness:
    """The degenerate claimed-degree-0 witness p = f / 2^n.

    It certifies the vacuous bound deg(f) >= 0 but is useful as the outer
    witness when composing with an outer function of degree 0.
    """
    scale = Fraction(1, 1 << f.n)
    table = RationalTable(f.n, tuple(v * scale for v in f.values))
    return DualWitness(
        claimed_degree=0,
        alpha=ALPHA_INFINITY,
        table=table,
        correlation=Fraction(1),
        l1_mass=Fraction(1),
        orthogonality_level=0,
    )


def verify_dual_witness(
    f: BoolFunction, witness: DualWitness, alpha: Optional[Alpha] = None
) -> WitnessCheck:
    """Exact check of the three witness conditions; never raises on failure.

    Verifies, at the witness's claimed degree and threshold:
    1. <f,p> >= (alpha-1)/(alpha+1), or >= 1 for infinite alpha;
    2. l1(p) = 1;
    3. <p, chi_T> = 0 for every |T| < claimed degree (via the exact Fourier
       transform, reporting the offending T on failure).
    """
    if alpha is None:
        alpha = witness.alpha
    if f.n != witness.n:
        raise ArityMismatchError(f"arity mismatch: {f.n} vs {witness.n}")
    violations = []
    thr = alpha.threshold()
    corr = inner_product(f, witness.table)
    if corr < thr:
        violations.append(f"correlation <f,p> = {corr} < threshold {thr}")
    mass = l1_norm(witness.table)
    if mass != 1:
        violations.append(f"l1 mass = {mass} != 1")
    expansion = fourier_transform(witness.table)
    offending = sorted(
        T for T in expansion.coeffs if T.bit_count() < witness.claimed_degree
    )
    for T in offending[:4]:
        violations.append(
            f"<p, chi_T> = {expansion.coeffs[T] * (1 << witness.n)} != 0 "
            f"for T mask {T} (|T| = {T.bit_count()})"
        )
    if len(offending) > 4:
        violations.append(f"...and {len(offending) - 4} more low characters")
    return WitnessCheck(not violations, tuple(violations))


# ---------------------------------------------------------------------------
# Independent brute-force oracle (integer coefficient search).

def brute_force_degree_at_most(
    f: BoolFunction, d: int, cmax: int = 16
) -> Tuple[bool, Optional[Dict[int, int]]]:
    """Exhaustive search for an integer sign representation with |c_T| <= cmax.

    A completely independent decision path for small instances (n <= 3):
    depth-first search over the coefficient box with sound pruning.  "False"
    means no integer box point works, which at this scale coincides with LP
    infeasibility (the agreement is itself part of the test suite).
    """
    if f.n > 3:
        raise LimitError("brute-force oracle supports n <= 3")
    if d < 0 or d > f.n:
        raise LimitError(f"degree bound {d} outside 0..{f.n}")
    mons = monomials(f.n, d)
    cols = [
        [f.values[x] * character_eval(T, x) for x in range(1 << f.n)]
        for T in mons
    ]
    sol = kernels.sign_rep_search(cols, cmax)
    if sol is None:
        return False, None
    return True, {T: c for T, c in zip(mons, sol) if c != 0}


# ---------------------------------------------------------------------------
# Witness file format: header line, then the rational-table format.

def witness_to_text(witness: DualWitness) -> str:
    head = f"claimed_degree={witness.claimed_degree} alpha={witness.alpha}"
    return head + "\n" + witness.table.to_text()


def witness_from_text(text: str) -> DualWitness:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty witness text")
    head = lines[0].split()
    if len(head) != 2 or not head[0].startswith("claimed_degree=") or not head[1].startswith("alpha="):
        raise FormatError(f"bad witness header {lines[0]!r}")
    try:
        claimed = int(head[0][len("claimed_degree="):])
    except ValueError:
        raise FormatError(f"bad claimed degree in {lines[0]!r}") from None
    alpha = Alpha.parse(head[1][len("alpha="):])
    table = RationalTable.from_text("\n".join(lines[1:]))
    return DualWitness(claimed_degree=claimed, alpha=alpha, table=table)


def save_witness(witness: DualWitness, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(witness_to_text(witness))


def load_witness(path) -> DualWitness:
    with open(path, "r", encoding="ascii") as fh:
        return witness_from_text(fh.read())
