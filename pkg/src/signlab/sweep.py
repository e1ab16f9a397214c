"""Exhaustive sweeps over small formulas and functions.

Two jobs live here:

* ``formula_sqrt_bound_check``: enumerate every truth table realized by a
  formula of size <= max_size on <= nvars variables (dynamic programming on
  packed tables, so the count of syntactic formulas never matters), group
  the survivors into NPN classes, and confirm for each class that the sign
  degree is at most floor(sqrt(min formula size)).

* ``survey``: the sign-degree histogram of *all* Boolean functions on up to
  4 variables, again computed once per NPN class and expanded by orbit size.

Tables are packed as integers: bit x of a code is set iff the function is
TRUE (-1) at input mask x.  NPN moves (permute variables, negate variables,
negate the output) preserve sign degree and minimal formula size, which is
what makes the per-class shortcut sound.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import kernels
from .boolfn import BoolFunction
from .degreelp import ALPHA_INFINITY, Alpha, is_degree_at_most
from .errors import LimitError

MAX_SWEEP_VARS = 6
MAX_SWEEP_SIZE = 8
MAX_SURVEY_VARS = 4


def leaf_codes(nvars: int) -> List[int]:
    """Packed tables of all positive and negated literals on nvars variables."""
    npts = 1 << nvars
    out = []
    for i in range(nvars):
        pos = 0
        for m in range(npts):
            if (m >> i) & 1:
                pos |= 1 << m
        out.append(pos)
        out.append(pos ^ ((1 << npts) - 1))
    return out


def tables_by_size(nvars: int, max_size: int) -> Dict[int, List[int]]:
    """For each size s <= max_size, the sorted packed tables of all
    formulas with exactly s leaves.

    A size-s tree splits at the root into subtrees of sizes i and s-i, and
    both gates are commutative, so combining the size-i and size-(s-i)
    pools for i <= s//2 covers everything.
    """
    if not 1 <= nvars <= MAX_SWEEP_VARS:
        raise LimitError(f"nvars {nvars} outside 1..{MAX_SWEEP_VARS}")
    if not 1 <= max_size <= MAX_SWEEP_SIZE:
        raise LimitError(f"max_size {max_size} outside 1..{MAX_SWEEP_SIZE}")
    pools: Dict[int, List[int]] = {1: sorted(set(leaf_codes(nvars)))}
    for s in range(2, max_size + 1):
        merged: set = set()
        for i in range(1, s // 2 + 1):
            merged.update(kernels.combine_tables(pools[i], pools[s - i]))
        pools[s] = sorted(merged)
    return pools


def min_formula_sizes(nvars: int, max_size: int) -> Dict[int, int]:
    """code -> smallest formula size realizing it (within the sweep range)."""
    pools = tables_by_size(nvars, max_size)
    first: Dict[int, int] = {}
    for s in range(1, max_size + 1):
        for code in pools[s]:
            if code not in first:
                first[code] = s
    return first


# ---------------------------------------------------------------------------
# NPN classification.

def npn_maps(nvars: int) -> np.ndarray:
    """Index maps of all (permutation, input-negation) moves.

    Row t maps input mask x to its preimage under move t, so that
    ``bits[maps[t]]`` is the truth table of the transformed function.
    Output negation is applied separately (it is a complement of the packed
    code, not an index move).
    """
    npts = 1 << nvars
    perms = list(permutations(range(nvars)))
    maps = np.empty((len(perms) * npts, npts), dtype=np.uint8)
    row = 0
    for perm in perms:
        base = np.empty(npts, dtype=np.uint8)
        for x in range(npts):
            y = 0
            for i in range(nvars):
                if (x >> i) & 1:
                    y |= 1 << perm[i]
            base[x] = y
        for neg in range(npts):
            maps[row] = base ^ neg
            row += 1
    return maps


def _orbit(code: int, nvars: int, maps: np.ndarray) -> np.ndarray:
    npts = 1 << nvars
    bits = np.array([(code >> x) & 1 for x in range(npts)], dtype=np.uint64)
    pow2 = (np.uint64(1) << np.arange(npts, dtype=np.uint64)).astype(np.uint64)
    packed = bits[maps] @ pow2
    comp = packed ^ np.uint64((1 << npts) - 1)
    return np.unique(np.concatenate([packed, comp]))


def npn_canonical(code: int, nvars: int, maps: Optional[np.ndarray] = None) -> int:
    """Smallest packed code in the NPN orbit of ``code``."""
    if maps is None:
        maps = npn_maps(nvars)
    return int(_orbit(code, nvars, maps).min())


@dataclass(frozen=True)
class NPNClass:
    rep: int
    minsize: int
    realized: int  # orbit members inside the swept table set


def classify_realized(first: Dict[int, int], nvars: int) -> List[NPNClass]:
    """Group the swept tables into NPN classes.

    Each orbit is expanded exactly once: codes already tagged by an earlier
    expansion are skipped, so the cost is per class, not per table.
    """
    maps = npn_maps(nvars)
    tagged: set = set()
    classes: List[NPNClass] = []
    for code in first:
        if code in tagged:
            continue
        orbit = _orbit(code, nvars, maps)
        members = [int(u) for u in orbit if int(u) in first]
        minsize = min(first[u] for u in members)
        tagged.update(members)
        classes.append(NPNClass(int(orbit.min()), minsize, len(members)))
    return classes


# ---------------------------------------------------------------------------
# Per-table sign degree (through support projection).

def support_project(code: int, nvars: int) -> BoolFunction:
    """The function restricted to its relevant variables.

    Irrelevant variables can be fixed without changing the function, so the
    projection has the same sign degree while shrinking the LP.  Constants
    are returned as 1-variable constant tables (arity 0 is not a thing).
    """
    support = []
    for i in range(nvars):
        bit = 1 << i
        if any(
            ((code >> m) & 1) != ((code >> (m ^ bit)) & 1)
            for m in range(1 << nvars)
        ):
            support.append(i)
    if not support:
        v = -1 if code & 1 else 1
        return BoolFunction(1, (v, v))
    k = len(support)
    values = []
    for mm in range(1 << k):
        m = 0
        for idx, i in enumerate(support):
            if (mm >> idx) & 1:
                m |= 1 << i
        values.append(-1 if (code >> m) & 1 else 1)
    return BoolFunction(k, tuple(values))


def code_degree(code: int, nvars: int, alpha: Alpha = ALPHA_INFINITY) -> int:
    """deg_alpha of a packed table, via its support projection."""
    f = support_project(code, nvars)
    for d in range(f.n + 1):
        feasible, _ = is_degree_at_most(f, d, alpha)
        if feasible:
            return d
    raise AssertionError("degree search failed: d=n is always feasible")


# ---------------------------------------------------------------------------
# The sqrt(size) bound sweep.

@dataclass(frozen=True)
class SqrtBoundReport:
    nvars: int
    max_size: int
    table_count: int
    class_count: int
    all_within: bool
    histogram: Tuple[Tuple[Tuple[int, int], int], ...]  # ((minsize, degree), classes)
    violations: Tuple[Tuple[int, int, int], ...]  # (rep, degree, minsize)


def formula_sqrt_bound_check(nvars: int = 6, max_size: int = 6) -> SqrtBoundReport:
    """Check deg_inf(f) <= floor(sqrt(formula size)) over every function
    realized by a formula within the sweep range.

    The bound is checked once per NPN class against the smallest realizing
    size anywhere in the orbit, which is the strongest form of the claim
    the sweep can test.
    """
    first = min_formula_sizes(nvars, max_size)
    classes = classify_realized(first, nvars)
    hist: Counter = Counter()
    violations = []
    for cls in classes:
        degree = code_degree(cls.rep, nvars)
        hist[(cls.minsize, degree)] += 1
        if degree > math.isqrt(cls.minsize):
            violations.append((cls.rep, degree, cls.minsize))
    return SqrtBoundReport(
        nvars=nvars,
        max_size=max_size,
        table_count=len(first),
        class_count=len(classes),
        all_within=not violations,
        histogram=tuple(sorted(hist.items())),
        violations=tuple(violations),
    )


# ---------------------------------------------------------------------------
# Full-function survey.

@dataclass(frozen=True)
class SurveyResult:
    nvars: int
    class_count: int
    histogram: Tuple[Tuple[int, int], ...]  # (degree, functions)
    classes: Tuple[Tuple[int, int, int], ...]  # (rep, degree, orbit size)


def survey(nvars: int) -> SurveyResult:
    """Sign-degree histogram of all 2^(2^nvars) functions on nvars variables."""
    if not 1 <= nvars <= MAX_SURVEY_VARS:
        raise LimitError(f"survey supports 1..{MAX_SURVEY_VARS} variables")
    npts = 1 << nvars
    total = 1 << npts
    maps = npn_maps(nvars)
    seen = np.zeros(total, dtype=bool)
    hist: Counter = Counter()
    classes = []
    for code in range(total):
        if seen[code]:
            continue
        orbit = _orbit(code, nvars, maps)
        seen[orbit.astype(np.int64)] = True
        degree = code_degree(code, nvars)
        hist[degree] += len(orbit)
        classes.append((code, degree, len(orbit)))
    if sum(hist.values()) != total:
        raise AssertionError("orbit expansion lost functions")
    return SurveyResult(
        nvars=nvars,
        class_count=len(classes),
        histogram=tuple(sorted(hist.items())),
        classes=tuple(classes),
    )
