"""AND/OR formulas over literals: grammar, parser, printer, builders.

A formula is a binary tree whose internal nodes are 2-ary AND/OR gates and
whose leaves are literals ``x_i`` or ``!x_i`` (variables are 1-indexed).
Size means leaf count.  Gate semantics follow the package convention
TRUE = -1: AND is -1 iff both children are -1, OR is -1 iff either child is.

Grammar (whitespace insignificant, ``!`` binds only to variables)::

    expr := or
    or   := and ('|' and)*
    and  := atom ('&' atom)*
    atom := ['!'] 'x' digits | '(' expr ')'

``&`` binds tighter than ``|``; chains expand left-associatively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Union

import numpy as np

from .boolfn import MAX_ARITY, BoolFunction
from .errors import FormulaSyntaxError, LimitError

AND = "&"
OR = "|"


@dataclass(frozen=True)
class Leaf:
    var: int  # 1-indexed
    negated: bool = False


@dataclass(frozen=True)
class Gate:
    op: str  # AND or OR
    left: "Formula"
    right: "Formula"


Formula = Union[Leaf, Gate]


# ---------------------------------------------------------------------------
# Parsing.

def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "!&|()":
            tokens.append((ch, None, i))
            i += 1
            continue
        if ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise FormulaSyntaxError("expected digits after 'x'", i)
            idx = int(text[i + 1 : j])
            if idx == 0:
                raise FormulaSyntaxError("variable index must be >= 1", i)
            tokens.append(("var", idx, i))
            i = j
            continue
        raise FormulaSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self) -> Formula:
        node = self.and_chain()
        while self.peek()[0] == OR:
            self.take()
            node = Gate(OR, node, self.and_chain())
        return node

    def and_chain(self) -> Formula:
        node = self.atom()
        while self.peek()[0] == AND:
            self.take()
            node = Gate(AND, node, self.atom())
        return node

    def atom(self) -> Formula:
        kind, value, pos = self.take()
        if kind == "!":
            k2, v2, p2 = self.take()
            if k2 != "var":
                raise FormulaSyntaxError("'!' must be followed by a variable", p2)
            return Leaf(v2, True)
        if kind == "var":
            return Leaf(value, False)
        if kind == "(":
            node = self.expr()
            k2, _, p2 = self.take()
            if k2 != ")":
                raise FormulaSyntaxError("expected ')'", p2)
            return node
        raise FormulaSyntaxError(f"unexpected token {kind!r}", pos)


def parse(text: str) -> Formula:
    """Parse formula text; raises FormulaSyntaxError with a character position."""
    parser = _Parser(_tokenize(text))
    node = parser.expr()
    kind, _, pos = parser.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"trailing input starting with {kind!r}", pos)
    return node


def formula_to_text(f: Formula) -> str:
    """Printer; parse(formula_to_text(f)) reconstructs the identical tree."""
    if isinstance(f, Leaf):
        return f"!x{f.var}" if f.negated else f"x{f.var}"
    left, right = f.left, f.right
    if f.op == AND:
        ls = formula_to_text(left)
        if isinstance(left, Gate) and left.op == OR:
            ls = f"({ls})"
        rs = formula_to_text(right)
        if isinstance(right, Gate):
            rs = f"({rs})"
        return f"{ls} & {rs}"
    ls = formula_to_text(left)
    rs = formula_to_text(right)
    if isinstance(right, Gate) and right.op == OR:
        rs = f"({rs})"
    return f"{ls} | {rs}"


# ---------------------------------------------------------------------------
# Structure.

def size(f: Formula) -> int:
    """Number of leaves."""
    if isinstance(f, Leaf):
        return 1
    return size(f.left) + size(f.right)


def max_var(f: Formula) -> int:
    if isinstance(f, Leaf):
        return f.var
    return max(max_var(f.left), max_var(f.right))


def de_morgan_dual(f: Formula) -> Formula:
    """Swap gate labels and negate every leaf; computes the pointwise negation."""
    if isinstance(f, Leaf):
        return Leaf(f.var, not f.negated)
    return Gate(OR if f.op == AND else AND, de_morgan_dual(f.left), de_morgan_dual(f.right))


# ---------------------------------------------------------------------------
# Evaluation: each subformula is evaluated on all 2^n inputs at once by
# packing its truth table into an integer (bit x set iff TRUE at mask x).

def _var_pattern(var: int, arity: int) -> int:
    """Bitmask over 2^arity positions marking inputs where x_var is TRUE."""
    block = 1 << (var - 1)  # run length of equal bits
    ones = (1 << block) - 1
    r = 1 << (2 * block)
    reps = 1 << (arity - var)  # number of one-blocks
    geo = ((r**reps) - 1) // (r - 1)
    return (ones << block) * geo


def to_function(f: Formula, arity: Optional[int] = None) -> BoolFunction:
    """Materialize the truth table (TRUE = -1) on the given arity."""
    need = max_var(f)
    if arity is None:
        arity = need
    if arity < need:
        raise LimitError(f"arity {arity} smaller than largest variable x{need}")
    if arity > MAX_ARITY:
        raise LimitError(f"arity {arity} exceeds supported {MAX_ARITY}")
    total = 1 << arity
    full = (1 << total) - 1
    patterns = {}

    def rec(node: Formula) -> int:
        if isinstance(node, Leaf):
            pat = patterns.get(node.var)
            if pat is None:
                pat = _var_pattern(node.var, arity)
                patterns[node.var] = pat
            return (~pat & full) if node.negated else pat
        lv = rec(node.left)
        rv = rec(node.right)
        return (lv & rv) if node.op == AND else (lv | rv)

    code = rec(f)
    nbytes = max(1, (total + 7) // 8)
    bits = np.unpackbits(
        np.frombuffer(code.to_bytes(nbytes, "little"), dtype=np.uint8),
        bitorder="little",
    )[:total]
    values = tuple(int(v) for v in 1 - 2 * bits.astype(np.int8))
    return BoolFunction(arity, values)


# ---------------------------------------------------------------------------
# Builders.

def _nary(op: str, parts) -> Formula:
    """Combine subformulas with one gate type, balanced when the fan-in is a
    power of two and left-leaning near-balanced otherwise."""
    parts = list(parts)
    if not parts:
        raise ValueError("empty gate")
    if len(parts) == 1:
        return parts[0]
    mid = (len(parts) + 1) // 2
    return Gate(op, _nary(op, parts[:mid]), _nary(op, parts[mid:]))


def build_minsky_papert(n: int) -> Formula:
    """OR of n blocks, each an AND over n^2 fresh variables (size n^3)."""
    if n < 1:
        raise LimitError("n must be >= 1")
    if n**3 > MAX_ARITY:
        raise LimitError(f"n^3 = {n**3} exceeds supported arity {MAX_ARITY}")
    blocks = []
    for b in range(n):
        first = b * n * n + 1
        blocks.append(_nary(AND, [Leaf(first + j) for j in range(n * n)]))
    return _nary(OR, blocks)


def build_balanced_and_or(depth: int) -> Formula:
    """Complete alternating AND/OR tree with 2^depth distinct leaves (AND root)."""
    if depth < 0:
        raise LimitError("depth must be >= 0")
    if 1 << depth > MAX_ARITY:
        raise LimitError(f"2^{depth} leaves exceed supported arity {MAX_ARITY}")

    def rec(level: int, first: int) -> Formula:
        if level == depth:
            return Leaf(first)
        half = 1 << (depth - level - 1)
        op = AND if level % 2 == 0 else OR
        return Gate(op, rec(level + 1, first), rec(level + 1, first + half))

    return rec(0, 1)


# ---------------------------------------------------------------------------
# Enumeration.

def enumerate_formulas(max_size: int, max_vars: int) -> Iterator[Formula]:
    """Every formula with <= max_size leaves over variables x1..x{max_vars}.

    All binary tree shapes, all AND/OR gate labelings, all (variable,
    negation) leaf labelings, streamed in a fixed deterministic order:
    sizes ascending; within a size, left-subtree sizes ascending, gate AND
    before OR, leaves by variable then positive before negated.  The number
    of formulas of size exactly s is
    catalan(s-1) * 2^(s-1) * (2*max_vars)^s  (see count_formulas).
    """
    if max_size < 1 or max_size > 8 or max_vars < 1 or max_vars > 8:
        raise LimitError("enumeration limits: 1 <= max_size <= 8, 1 <= max_vars <= 8")

    def of_size(s: int) -> Iterator[Formula]:
        if s == 1:
            for v in range(1, max_vars + 1):
                yield Leaf(v, False)
                yield Leaf(v, True)
            return
        for i in range(1, s):
            for op in (AND, OR):
                for left in of_size(i):
                    for right in of_size(s - i):
                        yield Gate(op, left, right)

    for s in range(1, max_size + 1):
        yield from of_size(s)


def count_formulas(exact_size: int, max_vars: int) -> int:
    """Closed-form count of enumerate_formulas output at one exact size."""
    s = exact_size
    catalan = math.comb(2 * (s - 1), s - 1) // s
    return catalan * 2 ** (s - 1) * (2 * max_vars) ** s
