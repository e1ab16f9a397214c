"""Block composition f(g, ..., g) and the dual-witness product construction.

The center of this module is :func:`compose_witnesses`: given a dual witness
p certifying deg_alpha(f) >= d_f and a sign-degree witness q certifying
deg_inf(g) >= d_g >= 1, it builds

    h(x) = 2^n * p(g(x^1), ..., g(x^n)) * prod_i mu(x^i),

where mu = g * q is the nonnegative unit-mass factorization of q, and checks
— by direct computation on the composed table, not by trusting the
construction — that h is a valid dual witness of claimed degree d_f * d_g
for f composed with g.  That certifies super-multiplicativity:
deg_alpha(f on g-blocks) >= deg_alpha(f) * deg_inf(g).

Block convention: the variables of block i occupy mask bits
[(i-1)*m, i*m), so x = (x^1, ..., x^n) reads low bits first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import kernels
from .boolfn import (
    BoolFunction,
    RationalTable,
    inner_product,
    l1_norm,
    pure_high_degree,
)
from .degreelp import (
    ALPHA_INFINITY,
    Alpha,
    DegreeCertificate,
    DualWitness,
    approx_degree,
    sign_degree,
    verify_dual_witness,
    zero_degree_witness,
)
from .errors import (
    ArityMismatchError,
    InvalidWitnessError,
    LimitError,
    TrivialCaseError,
)

# Composition is materialized as a dense table, so evaluation tops out well
# before LP-backed work does.
_MAX_EVAL_ARITY = 20
_MAX_LP_ARITY = 12


@dataclass(frozen=True)
class ComposedFunction:
    """f applied to n independent copies of g on disjoint variable blocks.

    ``inner`` is None only for the k=1 base case of ``iterate_compose``,
    where no composition actually happened.
    """

    outer: BoolFunction
    inner: Optional[BoolFunction]
    table: BoolFunction

    @property
    def n(self) -> int:
        return self.table.n


def compose_functions(f: BoolFunction, g: BoolFunction) -> ComposedFunction:
    """Materialize f(g(x^1), ..., g(x^n)) on n*m variables."""
    total_arity = f.n * g.n
    if total_arity > _MAX_EVAL_ARITY:
        raise LimitError(
            f"composed arity {f.n}*{g.n} exceeds evaluation limit {_MAX_EVAL_ARITY}"
        )
    values = kernels.compose_values(f.values, g.values, f.n, g.n)
    return ComposedFunction(f, g, BoolFunction(total_arity, tuple(values)))


def iterate_compose(f: BoolFunction, k: int) -> ComposedFunction:
    """f composed with itself k times: f^(1) = f, f^(k) = f on f^(k-1) blocks."""
    if k < 1:
        raise LimitError("k must be >= 1")
    if f.n**k > _MAX_EVAL_ARITY:
        raise LimitError(f"arity {f.n}^{k} exceeds evaluation limit {_MAX_EVAL_ARITY}")
    if k == 1:
        return ComposedFunction(f, None, f)
    current = f
    result = None
    for _ in range(k - 1):
        result = compose_functions(f, current)
        current = result.table
    return result


def mu_factor(g: BoolFunction, q: DualWitness) -> RationalTable:
    """Factor a verified sign-degree witness as q = g * mu with mu >= 0.

    The witness conditions force mu to be a probability mass splitting
    exactly 1/2 on each side of g; all of that is re-checked here and any
    failure reports the witness as invalid.
    """
    if q.n != g.n:
        raise ArityMismatchError(f"arity mismatch: {g.n} vs {q.n}")
    if q.claimed_degree == 0:
        raise TrivialCaseError(
            "inner witness has claimed degree 0; the composition bound is vacuous"
        )
    if not q.alpha.is_infinite:
        raise InvalidWitnessError(
            "inner witness must certify sign degree (alpha = inf), "
            f"got alpha = {q.alpha}"
        )
    check = verify_dual_witness(g, q, ALPHA_INFINITY)
    if not check.ok:
        raise InvalidWitnessError(
            "inner witness failed verification: " + "; ".join(check.violations)
        )
    entries = tuple(
        Fraction(g.values[x]) * q.table.entries[x] for x in range(1 << g.n)
    )
    if any(v < 0 for v in entries):
        raise InvalidWitnessError("g(x)q(x) < 0 at some point; not a factorization")
    mu = RationalTable(g.n, entries)
    total = sum(entries, Fraction(0))
    half_true = sum(
        (entries[x] for x in range(1 << g.n) if g.values[x] == -1), Fraction(0)
    )
    if total != 1 or half_true != Fraction(1, 2):
        raise InvalidWitnessError(
            f"mu mass {total} (TRUE side {half_true}) violates the 1/2 + 1/2 split"
        )
    return mu


def compose_witnesses(
    f: BoolFunction, g: BoolFunction, p: DualWitness, q: DualWitness
) -> DualWitness:
    """Build and fully verify the product witness h for f on g-blocks.

    Requires: p verifies for f at its own alpha; q verifies for g with
    alpha = inf and claimed degree >= 1.  The result claims degree
    d_f * d_g, and the defining equalities are checked exactly:
    l1(h) = 1 and <f on g-blocks, h> = <f, p> (equality, not just the
    threshold bound), plus pure high degree >= d_f * d_g measured by the
    Fourier transform of h itself.
    """
    if p.n != f.n:
        raise ArityMismatchError(f"outer witness arity {p.n} != {f.n}")
    p_check = verify_dual_witness(f, p, p.alpha)
    if not p_check.ok:
        raise InvalidWitnessError(
            "outer witness failed verification: " + "; ".join(p_check.violations)
        )
    mu = mu_factor(g, q)  # validates q as well

    n, m = f.n, g.n
    composed = compose_functions(f, g)
    block_mask = (1 << m) - 1
    scale = Fraction(1 << n)
    g_true = [1 if v == -1 else 0 for v in g.values]
    p_entries = p.table.entries
    mu_entries = mu.entries

    h_entries = []
    for x in range(1 << (n * m)):
        fm = 0
        weight = scale
        xx = x
        for i in range(n):
            block = xx & block_mask
            if g_true[block]:
                fm |= 1 << i
            weight *= mu_entries[block]
            xx >>= m
        h_entries.append(weight * p_entries[fm] if weight else Fraction(0))
    h = RationalTable(n * m, tuple(h_entries))

    claimed = p.claimed_degree * q.claimed_degree
    corr_f = inner_product(f, p.table)
    mass = l1_norm(h)
    if mass != 1:
        raise InvalidWitnessError(f"composed witness has l1 mass {mass} != 1")
    corr = inner_product(composed.table, h)
    if corr != corr_f:
        raise InvalidWitnessError(
            f"composed correlation {corr} != outer correlation {corr_f}"
        )
    if claimed > 0 and pure_high_degree(h) < claimed:
        raise InvalidWitnessError(
            f"composed witness has pure high degree {pure_high_degree(h)} "
            f"< claimed {claimed}"
        )
    witness = DualWitness(
        claimed_degree=claimed,
        alpha=p.alpha,
        table=h,
        correlation=corr,
        l1_mass=mass,
        orthogonality_level=claimed,
    )
    final = verify_dual_witness(composed.table, witness, p.alpha)
    if not final.ok:
        raise InvalidWitnessError(
            "composed witness failed verification: " + "; ".join(final.violations)
        )
    return witness


@dataclass(frozen=True)
class CompositionReport:
    alpha: Alpha
    outer_degree: int
    inner_degree: int
    product: int
    actual: int
    slack: int
    witness: Optional[DualWitness]
    certificate_verified: bool


def check_supermultiplicativity(
    f: BoolFunction, g: BoolFunction, alpha: Alpha = ALPHA_INFINITY
) -> CompositionReport:
    """Compute deg_alpha(f), deg_inf(g), deg_alpha(f on g-blocks) and certify
    deg_alpha(composition) >= deg_alpha(f) * deg_inf(g).

    The slack field records how far the inequality is from tight (it often
    is not).  When deg_inf(g) >= 1 the composed witness is returned as the
    constructive certificate of the bound.
    """
    if f.n * g.n > _MAX_LP_ARITY:
        raise LimitError(
            f"composed arity {f.n * g.n} exceeds LP-backed limit {_MAX_LP_ARITY}"
        )
    cert_f: DegreeCertificate = approx_degree(f, alpha)
    cert_g: DegreeCertificate = sign_degree(g)
    composed = compose_functions(f, g)
    actual = approx_degree(composed.table, alpha).value
    product = cert_f.value * cert_g.value

    witness = None
    verified = False
    if cert_g.value >= 1:
        p = cert_f.witness if cert_f.value >= 1 else zero_degree_witness(f)
        witness = compose_witnesses(f, g, p, cert_g.witness)
        verified = verify_dual_witness(composed.table, witness, alpha).ok
    if actual < product:
        raise AssertionError(
            f"super-multiplicativity violated: {actual} < {product}"
        )
    return CompositionReport(
        alpha=alpha,
        outer_degree=cert_f.value,
        inner_degree=cert_g.value,
        product=product,
        actual=actual,
        slack=actual - product,
        witness=witness,
        certificate_verified=verified,
    )
