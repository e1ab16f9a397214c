"""Formula-size DP, NPN classification, and the degree surveys."""

import pytest

from signlab.boolfn import BoolFunction
from signlab.degreelp import sign_degree
from signlab.errors import LimitError
from signlab.formula import enumerate_formulas, size, to_function
from signlab.sweep import (
    classify_realized,
    code_degree,
    formula_sqrt_bound_check,
    leaf_codes,
    min_formula_sizes,
    npn_canonical,
    npn_maps,
    support_project,
    survey,
    tables_by_size,
)


def code_of(f):
    return sum(1 << x for x in range(1 << f.n) if f.values[x] == -1)


def brute_min_sizes(nvars, max_size):
    """Independent oracle: walk the explicit formula enumeration."""
    best = {}
    for e in enumerate_formulas(max_size, nvars):
        c = code_of(to_function(e, nvars))
        s = size(e)
        if c not in best or s < best[c]:
            best[c] = s
    return best


# --- the size DP ---------------------------------------------------------------

def test_leaf_codes_two_vars():
    # Literal truth-table codes (bit x set iff TRUE at mask x).
    assert sorted(leaf_codes(2)) == [0b0011, 0b0101, 0b1010, 0b1100]


def test_tables_by_size_two_vars():
    pools = tables_by_size(2, 4)
    assert {s: len(v) for s, v in pools.items()} == {1: 4, 2: 14, 3: 14, 4: 16}
    # Pools are cumulative and sorted, and size 4 realizes everything.
    for s, codes in pools.items():
        assert codes == sorted(codes)
    assert set(pools[4]) == set(range(16))
    assert set(pools[1]) <= set(pools[2]) <= set(pools[3])


def test_min_sizes_match_explicit_enumeration():
    for nvars, max_size in ((1, 3), (2, 4), (3, 3)):
        assert min_formula_sizes(nvars, max_size) == brute_min_sizes(nvars, max_size)


def test_min_sizes_two_vars_landmarks():
    ms = min_formula_sizes(2, 4)
    assert len(ms) == 16
    assert ms[code_of(to_function(enumerate_formulas(1, 1).__next__(), 2))] == 1
    assert ms[0b0110] == 4  # parity
    assert ms[0b1001] == 4  # its complement
    assert ms[0b0000] == 2  # constants need a clashing literal pair
    assert ms[0b1111] == 2


def test_sweep_limits():
    with pytest.raises(LimitError):
        tables_by_size(7, 2)
    with pytest.raises(LimitError):
        tables_by_size(2, 9)
    with pytest.raises(LimitError):
        survey(5)


# --- NPN classification -----------------------------------------------------------

def test_npn_maps_shape():
    maps = npn_maps(2)
    assert maps.shape == (8, 4)
    # Every row is a permutation of the 4 masks.
    for row in maps:
        assert sorted(row) == [0, 1, 2, 3]


def test_npn_canonical_constant_on_orbits():
    # Parity and its complement share a canonical form.
    assert npn_canonical(0b0110, 2) == npn_canonical(0b1001, 2) == 6
    # Relabeling x1 <-> x2 fixes AND but moves the one-sided literals.
    assert npn_canonical(0b1010, 2) == npn_canonical(0b1100, 2)
    for code in range(16):
        canon = npn_canonical(code, 2)
        assert npn_canonical(canon, 2) == canon


def test_classify_realized_two_vars():
    classes = classify_realized(min_formula_sizes(2, 4), 2)
    facts = sorted((c.minsize, c.realized) for c in classes)
    assert facts == [(1, 4), (2, 2), (2, 8), (4, 2)]
    assert sum(c.realized for c in classes) == 16


def test_npn_class_counts():
    assert survey(1).class_count == 2
    assert survey(2).class_count == 4
    assert survey(3).class_count == 14
    assert survey(4).class_count == 222


# --- degrees of codes ---------------------------------------------------------------

def test_code_degree_landmarks():
    assert code_degree(0b10010110, 3) == 3  # parity on three variables
    assert code_degree(0b10000000, 3) == 1  # AND
    assert code_degree(0b0110, 2) == 2
    assert code_degree(0, 3) == 0
    assert code_degree(0b11111111, 3) == 0


def test_support_projection():
    f = support_project(0b1010, 2)
    assert f.n == 1 and f.values == (1, -1)
    c = support_project(0, 3)
    assert c.n == 1 and c.values == (1, 1)
    c = support_project(0b1111, 2)
    assert c.n == 1 and c.values == (-1, -1)
    g = support_project(0b0110, 2)  # parity already uses both variables
    assert g.n == 2


def test_code_degree_agrees_with_direct_lp():
    for code in range(16):
        f = BoolFunction(2, tuple(-1 if code >> x & 1 else 1 for x in range(4)))
        assert code_degree(code, 2) == sign_degree(f).value


# --- the surveys ----------------------------------------------------------------------

def test_survey_histograms():
    assert dict(survey(1).histogram) == {0: 2, 1: 2}
    assert dict(survey(2).histogram) == {0: 2, 1: 12, 2: 2}
    assert dict(survey(3).histogram) == {0: 2, 1: 102, 2: 150, 3: 2}


def test_survey_four_vars_matches_threshold_function_counts():
    hist = dict(survey(4).histogram)
    assert hist == {0: 2, 1: 1880, 2: 55692, 3: 7960, 4: 2}
    # 1882 threshold functions on 4 variables is the classical count.
    assert hist[0] + hist[1] == 1882
    assert sum(hist.values()) == 1 << 16


def test_survey_totals_cover_all_functions():
    for n in (1, 2, 3):
        assert sum(dict(survey(n).histogram).values()) == 1 << (1 << n)


# --- the sqrt(size) sweep ----------------------------------------------------------------

def test_sqrt_bound_check_small():
    rep = formula_sqrt_bound_check(3, 4)
    assert rep.nvars == 3 and rep.max_size == 4
    assert rep.table_count == 126
    assert rep.class_count == 7
    assert rep.all_within
    assert rep.violations == ()
    assert dict(rep.histogram) == {
        (1, 1): 1, (2, 0): 1, (2, 1): 1, (3, 1): 2, (4, 2): 2
    }


def test_sqrt_bound_check_degrees_are_per_class_consistent():
    # Every (minsize, degree) cell respects degree <= isqrt(minsize).
    import math

    rep = formula_sqrt_bound_check(4, 5)
    assert rep.all_within
    for (minsize, deg), count in rep.histogram:
        assert count > 0
        assert deg <= math.isqrt(minsize)
