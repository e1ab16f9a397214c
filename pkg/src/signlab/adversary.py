"""Spectral (negative-weight-free) adversary certificates.

This is the only module that works in floating point: spectral norms of
2^m x 2^m matrices have no useful exact form, so certificates here are
numeric and every reported quantity carries the power-iteration residual
guarantee rather than an exact rational value.

For a Boolean function f on m variables and a symmetric certificate matrix
Gamma indexed by input masks, the adversary ratio is

    ADV(Gamma) = ||Gamma . F|| / max_i ||Gamma . D_i||

where "." is the entrywise product, F[x, y] = (1 - f(x) f(y)) / 2 marks
pairs on which f differs, and D_i[x, y] = 1 iff masks x and y differ in
bit i.  Any Gamma gives a lower bound on quantum query complexity; the
star certificates built here are tight for OR and AND (value sqrt(k)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .boolfn import BoolFunction
from .errors import (
    ArityMismatchError,
    ConvergenceError,
    DegenerateCertificateError,
    FormatError,
    LimitError,
    ZeroCertificateError,
)
from .formula import Formula, size

# Dense 2^m x 2^m matrices; beyond this the module is the wrong tool.
MAX_CERT_ARITY = 10

_DEFAULT_TOL = 1e-9
_MAX_POWER_ITERATIONS = 10**5
_MAX_STARTS = 5


def _power_start(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim)
    norm = float(np.linalg.norm(v))
    while norm == 0.0:  # pragma: no cover - measure zero
        v = rng.standard_normal(dim)
        norm = float(np.linalg.norm(v))
    return v / norm


def spectral_norm(
    matrix: np.ndarray,
    seed: int = 0,
    tol: float = _DEFAULT_TOL,
    max_iter: int = _MAX_POWER_ITERATIONS,
) -> float:
    """Largest singular value of a real symmetric matrix.

    Power iteration on A^2 (so paired +/- eigenvalues cannot cancel),
    accepted only when the eigen-residual ||A^2 v - lam v|| <= tol *
    max(1, lam).  The iteration is run from several deterministic seeded
    starts and the largest converged value wins; a start vector that is
    (numerically) orthogonal to the top eigenspace therefore cannot
    silently report a smaller eigenvalue.
    """
    arr = np.asarray(matrix, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not np.array_equal(arr, arr.T):
        raise ValueError("matrix is not symmetric")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    if arr.size == 0 or not np.any(arr):
        return 0.0

    rng = np.random.default_rng(seed)
    dim = arr.shape[0]
    converged = []
    last_residual = math.inf
    for _ in range(_MAX_STARTS):
        v = _power_start(rng, dim)
        lam = 0.0
        for _ in range(max_iter):
            w = arr @ (arr @ v)
            lam = float(v @ w)
            residual = float(np.linalg.norm(w - lam * v))
            if residual <= tol * max(1.0, lam):
                converged.append(math.sqrt(max(lam, 0.0)))
                break
            norm_w = float(np.linalg.norm(w))
            if norm_w == 0.0:
                # v landed exactly in the kernel; count it as converged at 0
                # and let another start find the top eigenvalue.
                converged.append(0.0)
                break
            v = w / norm_w
        else:
            last_residual = residual
        if len(converged) >= 2:
            return max(converged)
    if converged:  # pragma: no cover - only one of five starts converged
        return max(converged)
    raise ConvergenceError(
        f"power iteration did not converge within {max_iter} iterations",
        residual=last_residual,
    )


@dataclass(frozen=True)
class DifferenceMatrices:
    """F and the per-bit D_i masks for a function on m variables."""

    m: int
    f_matrix: np.ndarray
    bit_matrices: tuple


def build_difference_matrices(f: BoolFunction) -> DifferenceMatrices:
    if f.n > MAX_CERT_ARITY:
        raise LimitError(f"arity {f.n} exceeds adversary limit {MAX_CERT_ARITY}")
    vals = np.array(f.values, dtype=float)
    f_matrix = (1.0 - np.outer(vals, vals)) / 2.0
    masks = np.arange(1 << f.n)
    xor = masks[:, None] ^ masks[None, :]
    bits = tuple(
        ((xor >> i) & 1).astype(float) for i in range(f.n)
    )
    return DifferenceMatrices(f.n, f_matrix, bits)


@dataclass(frozen=True, eq=False)
class AdversaryCertificate:
    """A symmetric real matrix indexed by the 2^m input masks."""

    m: int
    gamma: np.ndarray = field(repr=False)
    note: str = ""

    def __post_init__(self):
        if self.m < 1 or self.m > MAX_CERT_ARITY:
            raise LimitError(f"certificate arity {self.m} out of range 1..{MAX_CERT_ARITY}")
        arr = np.asarray(self.gamma, dtype=float)
        dim = 1 << self.m
        if arr.shape != (dim, dim):
            raise FormatError(
                f"certificate matrix shape {arr.shape} != ({dim}, {dim})"
            )
        if not np.all(np.isfinite(arr)):
            raise FormatError("certificate matrix has non-finite entries")
        if not np.array_equal(arr, arr.T):
            raise FormatError("certificate matrix is not symmetric")
        object.__setattr__(self, "gamma", arr)


@dataclass(frozen=True)
class AdversaryReport:
    m: int
    numerator: float
    denominators: tuple
    ratio: float

    @property
    def max_denominator(self) -> float:
        return max(self.denominators)


def adv_ratio(
    f: BoolFunction, cert: AdversaryCertificate, seed: int = 0
) -> AdversaryReport:
    """Evaluate the adversary ratio of a certificate against f."""
    if cert.m != f.n:
        raise ArityMismatchError(
            f"certificate arity {cert.m} != function arity {f.n}"
        )
    if not np.any(cert.gamma):
        raise ZeroCertificateError("certificate matrix is identically zero")
    diffs = build_difference_matrices(f)
    numerator = spectral_norm(cert.gamma * diffs.f_matrix, seed=seed)
    denominators = tuple(
        spectral_norm(cert.gamma * d, seed=seed) for d in diffs.bit_matrices
    )
    top = max(denominators)
    if top == 0.0:
        raise DegenerateCertificateError(
            "all bit-masked norms are zero (certificate lives on the diagonal, "
            f"numerator is {numerator!r} as well); the ratio is 0/0"
        )
    return AdversaryReport(f.n, numerator, denominators, numerator / top)


def _star_certificate(k: int, center: int, flip) -> np.ndarray:
    if k < 1 or k > MAX_CERT_ARITY:
        raise LimitError(f"arity {k} out of range 1..{MAX_CERT_ARITY}")
    dim = 1 << k
    gamma = np.zeros((dim, dim))
    for i in range(k):
        leaf = flip(center, i)
        gamma[center, leaf] = 1.0
        gamma[leaf, center] = 1.0
    return gamma


def build_or_certificate(k: int) -> AdversaryCertificate:
    """Star on the all-FALSE input and its k neighbours; ratio sqrt(k) on OR_k."""
    gamma = _star_certificate(k, 0, lambda c, i: c | (1 << i))
    return AdversaryCertificate(k, gamma, note=f"or-star-{k}")


def build_and_certificate(k: int) -> AdversaryCertificate:
    """Star on the all-TRUE input and its k neighbours; ratio sqrt(k) on AND_k."""
    full = (1 << k) - 1
    gamma = _star_certificate(k, full, lambda c, i: c ^ (1 << i))
    return AdversaryCertificate(k, gamma, note=f"and-star-{k}")


def random_certificate(m: int, rng: np.random.Generator) -> AdversaryCertificate:
    """A dense symmetric certificate with Gaussian entries (for experiments)."""
    raw = rng.standard_normal((1 << m, 1 << m))
    return AdversaryCertificate(m, (raw + raw.T) / 2.0, note="random")


def formula_adv_upper_bound(expr: Formula) -> float:
    """sqrt(formula size): every adversary ratio for the computed function
    stays below this, which the certificate-vs-formula experiments exercise.
    """
    return math.sqrt(size(expr))


def certificate_to_text(cert: AdversaryCertificate) -> str:
    """Serialize as ``m=<k>`` plus one ``<x> <y> <value>`` line per nonzero
    upper-triangle entry.  Values use repr so they round-trip exactly.
    """
    lines = [f"m={cert.m}"]
    dim = 1 << cert.m
    for x in range(dim):
        for y in range(x, dim):
            v = float(cert.gamma[x, y])
            if v != 0.0:
                lines.append(f"{x} {y} {v!r}")
    return "\n".join(lines) + "\n"


def certificate_from_text(text: str) -> AdversaryCertificate:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("m="):
        raise FormatError("certificate must start with an m=<arity> header")
    try:
        m = int(lines[0][2:])
    except ValueError:
        raise FormatError(f"bad certificate header {lines[0]!r}") from None
    if m < 1 or m > MAX_CERT_ARITY:
        raise LimitError(f"certificate arity {m} out of range 1..{MAX_CERT_ARITY}")
    dim = 1 << m
    gamma = np.zeros((dim, dim))
    seen = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"bad certificate line {ln!r}")
        try:
            x, y = int(parts[0]), int(parts[1])
            value = float(parts[2])
        except ValueError:
            raise FormatError(f"bad certificate line {ln!r}") from None
        if not (0 <= x <= y < dim):
            raise FormatError(f"mask pair ({x}, {y}) out of range for m={m}")
        if (x, y) in seen:
            raise FormatError(f"duplicate entry for masks ({x}, {y})")
        if not math.isfinite(value):
            raise FormatError(f"non-finite value on line {ln!r}")
        seen.add((x, y))
        gamma[x, y] = value
        gamma[y, x] = value
    return AdversaryCertificate(m, gamma)


def save_certificate(cert: AdversaryCertificate, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(certificate_to_text(cert))


def load_certificate(path) -> AdversaryCertificate:
    with open(path, "r", encoding="ascii") as fh:
        return certificate_from_text(fh.read())
