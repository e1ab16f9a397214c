"""Truth-table Boolean functions over {-1,+1}^n and exact Fourier analysis.

Conventions used everywhere in this package:

- TRUE is -1 and FALSE is +1, so XOR_n is exactly the character chi_[n].
- An input point is an integer mask in [0, 2^n); bit i of the mask is set
  iff x_{i+1} = -1 (variable i+1 is TRUE).
- A character subset T is likewise a mask; chi_T(x) = prod_{i in T} x_i.
- Fourier coefficients carry the 2^-n normalization
  (hat f_T = 2^-n sum_x f(x) chi_T(x)), while inner products and the l1
  norm are plain unnormalized sums over the cube.

All arithmetic in this module is exact: tables hold integers or
``fractions.Fraction`` values, never floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

from . import kernels
from .errors import ArityMismatchError, FormatError, LimitError, ZeroFunctionError

MAX_ARITY = 24

# An input point or character subset is just a mask; the alias is for
# signature readability.
InputPoint = int


class _ZeroDegree:
    """Distinguished degree marker for the identically-zero rational table.

    The zero table has no nonzero Fourier coefficient, so neither 0 nor -1
    would be an honest degree; ``degree`` returns this singleton instead and
    ``pure_high_degree`` raises ``ZeroFunctionError``.
    """

    def __repr__(self):
        return "ZERO_DEGREE"


ZERO_DEGREE = _ZeroDegree()


def _check_arity(n: int) -> None:
    if not 1 <= n <= MAX_ARITY:
        raise LimitError(f"arity {n} outside supported range 1..{MAX_ARITY}")


def character_eval(T: int, x: InputPoint) -> int:
    """chi_T(x) = prod_{i in T} x_i; +1 for the empty set."""
    return -1 if (T & x).bit_count() & 1 else 1


@dataclass(frozen=True)
class BoolFunction:
    """A Boolean function as a dense +-1 truth table indexed by input mask."""

    n: int
    values: Tuple[int, ...]

    def __post_init__(self):
        _check_arity(self.n)
        if len(self.values) != 1 << self.n:
            raise FormatError(
                f"table length {len(self.values)} != 2^{self.n}"
            )
        if any(v not in (-1, 1) for v in self.values):
            raise FormatError("truth table entries must be -1 or +1")
        if not isinstance(self.values, tuple):
            object.__setattr__(self, "values", tuple(self.values))

    def value(self, x: InputPoint) -> int:
        return self.values[x]

    def to_text(self) -> str:
        body = "".join("+" if v == 1 else "-" for v in self.values)
        return f"{self.n}:{body}"

    @classmethod
    def from_text(cls, text: str) -> "BoolFunction":
        text = text.strip()
        head, sep, body = text.partition(":")
        if not sep:
            raise FormatError("missing ':' in truth-table text")
        try:
            n = int(head)
        except ValueError:
            raise FormatError(f"bad arity field {head!r}") from None
        _check_arity(n)
        if len(body) != 1 << n:
            raise FormatError(
                f"expected {1 << n} characters after '{n}:', got {len(body)}"
            )
        values = []
        for ch in body:
            if ch == "+":
                values.append(1)
            elif ch == "-":
                values.append(-1)
            else:
                raise FormatError(f"bad truth-table character {ch!r}")
        return cls(n, tuple(values))

    def negate(self) -> "BoolFunction":
        return BoolFunction(self.n, tuple(-v for v in self.values))

    def as_rational_table(self) -> "RationalTable":
        return RationalTable(self.n, tuple(Fraction(v) for v in self.values))


@dataclass(frozen=True)
class RationalTable:
    """An exact real-valued function on the cube, given pointwise."""

    n: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        _check_arity(self.n)
        if len(self.entries) != 1 << self.n:
            raise FormatError(
                f"table length {len(self.entries)} != 2^{self.n}"
            )
        coerced = []
        for v in self.entries:
            if isinstance(v, Fraction):
                coerced.append(v)
            elif isinstance(v, int):
                coerced.append(Fraction(v))
            else:
                # No silent float admission: exactness is the module contract.
                raise FormatError(
                    f"rational table entries must be int or Fraction, got {type(v).__name__}"
                )
        object.__setattr__(self, "entries", tuple(coerced))

    def value(self, x: InputPoint) -> Fraction:
        return self.entries[x]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries)

    def scale(self, factor) -> "RationalTable":
        factor = Fraction(factor)
        return RationalTable(self.n, tuple(v * factor for v in self.entries))

    def to_text(self) -> str:
        lines = [f"n={self.n}"]
        for mask, v in enumerate(self.entries):
            if v != 0:
                lines.append(f"{mask} {v.numerator}/{v.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RationalTable":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("n="):
            raise FormatError("rational table must start with 'n=<k>'")
        try:
            n = int(lines[0][2:])
        except ValueError:
            raise FormatError(f"bad arity line {lines[0]!r}") from None
        _check_arity(n)
        entries = [Fraction(0)] * (1 << n)
        seen = set()
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise FormatError(f"bad table line {ln!r}")
            try:
                mask = int(parts[0])
                value = Fraction(parts[1])
            except (ValueError, ZeroDivisionError):
                raise FormatError(f"bad table line {ln!r}") from None
            if not 0 <= mask < 1 << n:
                raise FormatError(f"mask {mask} out of range for n={n}")
            if mask in seen:
                raise FormatError(f"duplicate mask {mask}")
            seen.add(mask)
            entries[mask] = value
        return cls(n, tuple(entries))


@dataclass(frozen=True)
class FourierExpansion:
    """Map from subset masks T to exact rational coefficients hat f_T."""

    n: int
    coeffs: Dict[int, Fraction]

    def coefficient(self, T: int) -> Fraction:
        return self.coeffs.get(T, Fraction(0))

    def evaluate(self, x: InputPoint) -> Fraction:
        return sum(
            (c * character_eval(T, x) for T, c in self.coeffs.items()),
            Fraction(0),
        )

    def support_sizes(self) -> Iterable[int]:
        return (T.bit_count() for T in self.coeffs)


TableLike = Union[BoolFunction, RationalTable]


def _as_entries(f: TableLike) -> Tuple[int, Tuple]:
    if isinstance(f, BoolFunction):
        return f.n, f.values
    if isinstance(f, RationalTable):
        return f.n, f.entries
    raise TypeError(f"expected BoolFunction or RationalTable, got {type(f)!r}")


def fourier_transform(f: TableLike) -> FourierExpansion:
    """Exact Fourier expansion: hat f_T = 2^-n sum_x f(x) chi_T(x).

    Implemented with the O(n 2^n) Walsh-Hadamard butterfly over a common
    integer denominator; the naive O(4^n) sum is kept in the test suite as a
    cross-check oracle.
    """
    n, entries = _as_entries(f)
    if isinstance(f, BoolFunction):
        scale = 1
        nums = list(entries)
    else:
        scale = math.lcm(*(v.denominator for v in entries))
        nums = [int(v * scale) for v in entries]
    sums = kernels.wht_int(nums)
    denom = scale * (1 << n)
    coeffs = {
        T: Fraction(w, denom) for T, w in enumerate(sums) if w != 0
    }
    return FourierExpansion(n, coeffs)


def inverse_transform(e: FourierExpansion) -> RationalTable:
    """Reconstruct the pointwise table sum_T hat f_T chi_T(x) exactly."""
    if not e.coeffs:
        return RationalTable(e.n, tuple([Fraction(0)] * (1 << e.n)))
    scale = math.lcm(*(c.denominator for c in e.coeffs.values()))
    nums = [0] * (1 << e.n)
    for T, c in e.coeffs.items():
        nums[T] = int(c * scale)
    sums = kernels.wht_int(nums)
    return RationalTable(e.n, tuple(Fraction(w, scale) for w in sums))


def degree(f: Union[TableLike, FourierExpansion]):
    """Largest |T| with hat f_T != 0; ZERO_DEGREE for the all-zero table."""
    e = f if isinstance(f, FourierExpansion) else fourier_transform(f)
    if not e.coeffs:
        return ZERO_DEGREE
    return max(e.support_sizes())


def pure_high_degree(p: Union[TableLike, FourierExpansion]) -> int:
    """Smallest |T| with hat p_T != 0 (all lower coefficients vanish).

    Undefined for the zero table, which raises ``ZeroFunctionError``.
    """
    e = p if isinstance(p, FourierExpansion) else fourier_transform(p)
    if not e.coeffs:
        raise ZeroFunctionError("pure high degree of the zero function is undefined")
    return min(e.support_sizes())


def inner_product(a: TableLike, b: TableLike) -> Fraction:
    """Unnormalized correlation sum_x a(x) b(x) over the cube."""
    na, ea = _as_entries(a)
    nb, eb = _as_entries(b)
    if na != nb:
        raise ArityMismatchError(f"arity mismatch: {na} vs {nb}")
    return sum((Fraction(x) * y for x, y in zip(ea, eb)), Fraction(0))


def l1_norm(p: TableLike) -> Fraction:
    """Unnormalized mass sum_x |p(x)|."""
    _, entries = _as_entries(p)
    return sum((abs(Fraction(v)) for v in entries), Fraction(0))


# ---------------------------------------------------------------------------
# Standard gate tables.

def constant(n: int, value: int) -> BoolFunction:
    if value not in (-1, 1):
        raise FormatError("constant value must be -1 or +1")
    return BoolFunction(n, tuple([value] * (1 << n)))


def and_function(k: int) -> BoolFunction:
    """AND_k: TRUE (-1) iff every variable is TRUE (mask all-ones)."""
    full = (1 << k) - 1
    return BoolFunction(k, tuple(-1 if x == full else 1 for x in range(1 << k)))


def or_function(k: int) -> BoolFunction:
    """OR_k: TRUE (-1) iff some variable is TRUE (mask nonzero)."""
    return BoolFunction(k, tuple(-1 if x else 1 for x in range(1 << k)))


def xor_function(k: int) -> BoolFunction:
    """XOR_k = chi_[k]: TRUE iff an odd number of variables are TRUE."""
    return BoolFunction(
        k, tuple(character_eval((1 << k) - 1, x) for x in range(1 << k))
    )
