"""Exact linear programming over the rationals.

The engine keeps the whole tableau in Python integers using fraction-free
(Edmonds-style) pivoting: semantic entry values are ``M[i][j] / D`` for a
single shared denominator ``D > 0``, and a pivot on element ``piv`` updates

    M'[i][j] = (M[i][j] * piv - M[i][c] * M[r][j]) // D,      D' = piv,

where the division is exact.  This gives exact arithmetic at roughly the
cost of one big-integer multiply-subtract-divide per cell, far cheaper than
a tableau of ``Fraction`` objects.

Problem form accepted by :func:`solve_lp`: variables x >= 0, constraints
``coeffs . x (<=|>=|==) rhs`` with rational data, optional linear objective.
Equality rows are split into a <=/>= pair; feasibility search uses a single
auxiliary variable t (minimized to zero) instead of a full artificial basis.

Pivot selection is Dantzig's rule for speed, with a stall detector that
switches permanently to Bland's rule after 40 pivots without objective
improvement, which restores the termination guarantee on degenerate
problems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import SimplexLimitError

LE = "<="
GE = ">="
EQ = "=="

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_STALL_LIMIT = 40


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[Tuple[Fraction, ...]]
    value: Optional[Fraction]


def _scale_row(coeffs, rhs, num_vars):
    """Integer-scale one constraint row; returns (int coeffs, int rhs)."""
    fr = [Fraction(c) for c in coeffs]
    if len(fr) != num_vars:
        raise ValueError(f"row has {len(fr)} coefficients, expected {num_vars}")
    r = Fraction(rhs)
    denom = math.lcm(r.denominator, *(c.denominator for c in fr)) if fr else r.denominator
    return [int(c * denom) for c in fr], int(r * denom)


def _minimize(M, D, basis, ncols, banned=(), max_pivots=500_000):
    """Run the simplex loop on a row-0-objective tableau, minimizing.

    Entering columns need a negative reduced cost M[0][j]; the ratio test
    breaks ties on the smallest basis index (Bland's tie-break), and the
    whole rule degrades to Bland's after a stall.  Returns (status, D).
    """
    nrows = len(M) - 1
    rhs = ncols
    banned = set(banned)
    pivots = 0
    stall = 0
    bland = False
    last_val, last_den = M[0][rhs], D
    while True:
        obj = M[0]
        enter = -1
        if not bland:
            best = 0
            for j in range(ncols):
                v = obj[j]
                if v < 0 and v < best and j not in banned:
                    best = v
                    enter = j
        else:
            for j in range(ncols):
                if obj[j] < 0 and j not in banned:
                    enter = j
                    break
        if enter < 0:
            return OPTIMAL, D
        leave = -1
        for i in range(1, nrows + 1):
            a = M[i][enter]
            if a > 0:
                if leave < 0:
                    leave = i
                else:
                    al = M[leave][enter]
                    lhs = M[i][rhs] * al
                    rhsv = M[leave][rhs] * a
                    if lhs < rhsv or (lhs == rhsv and basis[i] < basis[leave]):
                        leave = i
        if leave < 0:
            return UNBOUNDED, D
        piv = M[leave][enter]
        prow = M[leave]
        for i in range(len(M)):
            if i == leave:
                continue
            row = M[i]
            f = row[enter]
            if f:
                M[i] = [
                    (row[j] * piv - f * prow[j]) // D for j in range(ncols + 1)
                ]
            else:
                M[i] = [(v * piv) // D for v in row]
        D = piv
        basis[leave] = enter
        pivots += 1
        if pivots >= max_pivots:
            raise SimplexLimitError(f"exceeded {max_pivots} pivots")
        if M[0][rhs] * last_den == last_val * D:
            stall += 1
            if stall > _STALL_LIMIT:
                bland = True
        else:
            stall = 0
            last_val, last_den = M[0][rhs], D


def solve_lp(
    num_vars: int,
    constraints: Sequence[Tuple[Sequence, str, object]],
    objective: Optional[Sequence] = None,
    maximize: bool = True,
    max_pivots: int = 500_000,
) -> LPResult:
    """Solve max/min objective . x over {x >= 0 : constraints}, exactly.

    With ``objective=None`` only feasibility is decided (value is None and a
    feasible point is returned).  Free variables must be split into positive
    and negative parts by the caller.
    """
    if num_vars <= 0:
        raise ValueError("num_vars must be positive")

    # --- normalize rows to integer data with nonnegative rhs ---------------
    ge_pos = []  # indices of >= rows with positive rhs (need the t column)
    rows = []  # (coeffs, rel, rhs) with rel in {LE, GE}
    for coeffs, rel, rhs in constraints:
        ic, ir = _scale_row(coeffs, rhs, num_vars)
        if rel == EQ:
            pieces = [(ic, LE, ir), (ic, GE, ir)]
        elif rel in (LE, GE):
            pieces = [(ic, rel, ir)]
        else:
            raise ValueError(f"unknown relation {rel!r}")
        for c, r, b in pieces:
            if b < 0:
                c = [-v for v in c]
                b = -b
                r = GE if r == LE else LE
            if r == GE and b > 0:
                ge_pos.append(len(rows))
            rows.append((c, r, b))

    nrows = len(rows)
    need_t = bool(ge_pos)
    ncols = num_vars + nrows + (1 if need_t else 0)
    tcol = num_vars + nrows if need_t else -1
    rhsc = ncols

    M = [[0] * (ncols + 1)]  # row 0 reserved for the objective
    basis = [None]
    for i, (c, rel, b) in enumerate(rows):
        row = [0] * (ncols + 1)
        scol = num_vars + i
        if rel == LE:
            row[:num_vars] = c
            row[scol] = 1
            row[rhsc] = b
        elif b == 0:
            # a.x - s = 0 with s basic: store negated so the basic
            # coefficient is +1 and the start is already feasible.
            row[:num_vars] = [-v for v in c]
            row[scol] = 1
            row[rhsc] = 0
        else:
            # a.x - s + t = b; infeasible until the initial t pivot.
            row[:num_vars] = c
            row[scol] = -1
            row[tcol] = 1
            row[rhsc] = b
        M.append(row)
        basis.append(scol)

    D = 1

    # --- phase 1: bring t into the basis, then minimize it -----------------
    if need_t:
        pivot_row = 1 + max(ge_pos, key=lambda i: (rows[i][2], -i))
        prow = M[pivot_row]
        for i in range(len(M)):
            if i == pivot_row:
                continue
            row = M[i]
            f = row[tcol]
            if f:
                M[i] = [row[j] - f * prow[j] for j in range(ncols + 1)]
        basis[pivot_row] = tcol
        for i in range(1, nrows + 1):
            if i != pivot_row and M[i][basis[i]] < 0:
                M[i] = [-v for v in M[i]]
        # reduced costs of "minimize t" against the current basis
        M[0] = [-v for v in M[pivot_row]]
        M[0][tcol] = 0
        status, D = _minimize(M, D, basis, ncols, max_pivots=max_pivots)
        if status != OPTIMAL:
            raise AssertionError("phase 1 cannot be unbounded")
        tval = Fraction(0)
        trow = None
        for i in range(1, len(M)):
            if basis[i] == tcol:
                trow = i
                tval = Fraction(M[i][rhsc], D)
        if tval != 0:
            return LPResult(INFEASIBLE, None, None)
        if trow is not None:
            # t is basic at level zero: pivot it out, or drop a redundant row.
            enter = -1
            for j in range(ncols):
                if j != tcol and M[trow][j] != 0:
                    enter = j
                    break
            if enter < 0:
                del M[trow]
                del basis[trow]
            else:
                if M[trow][enter] < 0:
                    M[trow] = [-v for v in M[trow]]
                piv = M[trow][enter]
                prow = M[trow]
                for i in range(len(M)):
                    if i == trow:
                        continue
                    row = M[i]
                    f = row[enter]
                    if f:
                        M[i] = [
                            (row[j] * piv - f * prow[j]) // D
                            for j in range(ncols + 1)
                        ]
                    else:
                        M[i] = [(v * piv) // D for v in row]
                D = piv
                basis[trow] = enter

    # --- phase 2 ------------------------------------------------------------
    if objective is None:
        x = _extract(M, D, basis, num_vars, rhsc)
        return LPResult(OPTIMAL, x, None)

    obj_fr = [Fraction(c) for c in objective]
    if len(obj_fr) != num_vars:
        raise ValueError("objective length mismatch")
    scale = math.lcm(*(c.denominator for c in obj_fr))
    c_int = [int(c * scale) for c in obj_fr]
    if maximize:
        c_int = [-v for v in c_int]

    red = [0] * (ncols + 1)
    for j in range(num_vars):
        red[j] = c_int[j] * D
    for i in range(1, len(M)):
        b = basis[i]
        cb = c_int[b] if (b is not None and b < num_vars) else 0
        if cb:
            Mi = M[i]
            red = [r - cb * v for r, v in zip(red, Mi)]
    M[0] = red

    banned = {tcol} if need_t else ()
    status, D = _minimize(M, D, basis, ncols, banned=banned, max_pivots=max_pivots)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, None)
    x = _extract(M, D, basis, num_vars, rhsc)
    value = sum((c * v for c, v in zip(obj_fr, x)), Fraction(0))
    return LPResult(OPTIMAL, x, value)


def _extract(M, D, basis, num_vars, rhsc):
    x = [Fraction(0)] * num_vars
    for i in range(1, len(M)):
        b = basis[i]
        if b is not None and b < num_vars:
            x[b] = Fraction(M[i][rhsc], D)
    return tuple(x)
