"""Formula grammar, printer, evaluation, builders, and enumeration."""

import pytest

from signlab.boolfn import BoolFunction, and_function, or_function, xor_function
from signlab.errors import FormulaSyntaxError, LimitError
from signlab.formula import (
    AND,
    OR,
    Gate,
    Leaf,
    build_balanced_and_or,
    build_minsky_papert,
    count_formulas,
    de_morgan_dual,
    enumerate_formulas,
    formula_to_text,
    max_var,
    parse,
    size,
    to_function,
)


def naive_eval(f, mask):
    """Direct recursive evaluation, independent of the bit-packed path."""
    if isinstance(f, Leaf):
        v = -1 if mask >> (f.var - 1) & 1 else 1
        return -v if f.negated else v
    lv, rv = naive_eval(f.left, mask), naive_eval(f.right, mask)
    if f.op == AND:
        return -1 if (lv == -1 and rv == -1) else 1
    return -1 if (lv == -1 or rv == -1) else 1


# --- parsing ------------------------------------------------------------------

def test_parse_simple_and():
    e = parse("x1 & x2")
    assert e == Gate(AND, Leaf(1), Leaf(2))
    assert size(e) == 2
    assert to_function(e) == and_function(2)


def test_parse_precedence_and_associativity():
    assert parse("x1 | x2 & x3") == Gate(OR, Leaf(1), Gate(AND, Leaf(2), Leaf(3)))
    assert parse("x1 & x2 | x3") == Gate(OR, Gate(AND, Leaf(1), Leaf(2)), Leaf(3))
    # Chains are left-associative.
    assert parse("x1 & x2 & x3") == Gate(AND, Gate(AND, Leaf(1), Leaf(2)), Leaf(3))
    assert parse("(x1 | x2) & x3") == Gate(AND, Gate(OR, Leaf(1), Leaf(2)), Leaf(3))


def test_parse_negated_literals():
    assert parse("!x2") == Leaf(2, True)
    assert parse("!x1 & x2") == Gate(AND, Leaf(1, True), Leaf(2))


def test_xor_formula_table():
    e = parse("(x1 & !x2) | (!x1 & x2)")
    assert size(e) == 4
    assert to_function(e) == xor_function(2)


def test_syntax_error_positions():
    with pytest.raises(FormulaSyntaxError) as ei:
        parse("x1 &")
    assert ei.value.position == 4
    with pytest.raises(FormulaSyntaxError) as ei:
        parse("x1 & (x2")
    assert ei.value.position == 8
    with pytest.raises(FormulaSyntaxError) as ei:
        parse("y1")
    assert ei.value.position == 0
    with pytest.raises(FormulaSyntaxError) as ei:
        parse("x1 | x0")
    assert ei.value.position == 5
    with pytest.raises(FormulaSyntaxError) as ei:
        parse("!(x1 & x2)")
    assert ei.value.position == 1
    with pytest.raises(FormulaSyntaxError) as ei:
        parse("x1 x2")
    assert ei.value.position == 3
    with pytest.raises(FormulaSyntaxError) as ei:
        parse("x")
    assert ei.value.position == 0
    # The formatted message carries the position for CLI users.
    with pytest.raises(FormulaSyntaxError, match="position 4"):
        parse("x1 &")


# --- printer -------------------------------------------------------------------

def test_printer_examples():
    assert formula_to_text(parse("x1 & x2 | !x3")) == "x1 & x2 | !x3"
    assert formula_to_text(parse("(x1 | x2) & x3")) == "(x1 | x2) & x3"


def test_print_parse_roundtrip_is_identity_on_trees():
    for f in enumerate_formulas(3, 2):
        assert parse(formula_to_text(f)) == f


# --- evaluation ------------------------------------------------------------------

def test_to_function_matches_naive_eval():
    for f in enumerate_formulas(3, 3):
        got = to_function(f, 3)
        for mask in range(8):
            assert got.value(mask) == naive_eval(f, mask)


def test_to_function_arity_padding():
    e = parse("x2")
    assert to_function(e).n == 2
    padded = to_function(e, 3)
    assert padded.n == 3
    for mask in range(8):
        assert padded.value(mask) == (-1 if mask >> 1 & 1 else 1)
    with pytest.raises(LimitError):
        to_function(parse("x3"), 2)


def test_max_var():
    assert max_var(parse("x1 & (x5 | !x2)")) == 5


# --- De Morgan --------------------------------------------------------------------

def test_de_morgan_dual_negates_pointwise():
    for text in ("x1 & x2", "x1 | !x2 & x3", "(x1 | x2) & (!x3 | x4)"):
        e = parse(text)
        d = de_morgan_dual(e)
        assert size(d) == size(e)
        fe = to_function(e, max_var(e))
        fd = to_function(d, max_var(e))
        assert fd.values == tuple(-v for v in fe.values)
    assert de_morgan_dual(parse("x1 & x2")) == Gate(OR, Leaf(1, True), Leaf(2, True))


# --- builders ---------------------------------------------------------------------

def test_minsky_papert_builder():
    assert build_minsky_papert(1) == Leaf(1)
    mp2 = build_minsky_papert(2)
    assert size(mp2) == 8
    assert max_var(mp2) == 8
    # OR of two ANDs over disjoint variable blocks, low block first.
    f = to_function(mp2)
    for mask in range(256):
        lo, hi = mask & 0xF, mask >> 4
        want = -1 if (lo == 0xF or hi == 0xF) else 1
        assert f.value(mask) == want
    with pytest.raises(LimitError):
        build_minsky_papert(0)
    with pytest.raises(LimitError):
        build_minsky_papert(3)  # 27 variables exceed the table limit


def test_balanced_and_or_builder():
    assert build_balanced_and_or(0) == Leaf(1)
    assert formula_to_text(build_balanced_and_or(1)) == "x1 & x2"
    d2 = build_balanced_and_or(2)
    assert formula_to_text(d2) == "(x1 | x2) & (x3 | x4)"
    assert size(d2) == 4
    d3 = build_balanced_and_or(3)
    assert size(d3) == 8
    assert formula_to_text(d3) == "(x1 & x2 | x3 & x4) & (x5 & x6 | x7 & x8)"
    with pytest.raises(LimitError):
        build_balanced_and_or(-1)
    with pytest.raises(LimitError):
        build_balanced_and_or(5)  # 32 leaves exceed the table limit


# --- enumeration ------------------------------------------------------------------

def test_count_formulas_examples():
    assert count_formulas(1, 1) == 2
    assert count_formulas(2, 1) == 8
    assert count_formulas(2, 2) == 32
    assert count_formulas(3, 2) == 512


def test_enumeration_matches_counts_and_is_duplicate_free():
    seen = set()
    per_size = {}
    for f in enumerate_formulas(3, 2):
        key = formula_to_text(f)
        assert key not in seen
        seen.add(key)
        per_size[size(f)] = per_size.get(size(f), 0) + 1
    assert per_size == {1: count_formulas(1, 2),
                        2: count_formulas(2, 2),
                        3: count_formulas(3, 2)}


def test_enumeration_order_is_by_size():
    sizes = [size(f) for f in enumerate_formulas(3, 1)]
    assert sizes == sorted(sizes)


def test_enumeration_limits():
    with pytest.raises(LimitError):
        list(enumerate_formulas(0, 1))
    with pytest.raises(LimitError):
        list(enumerate_formulas(9, 1))
    with pytest.raises(LimitError):
        list(enumerate_formulas(1, 9))


def test_every_two_var_function_of_size_four_or_less():
    # Size-4 formulas over two variables already realize all 16 functions.
    realized = {to_function(f, 2).values for f in enumerate_formulas(4, 2)}
    assert len(realized) == 16


def test_or_function_from_formula():
    e = parse("x1 | x2 | x3")
    assert to_function(e) == or_function(3)
