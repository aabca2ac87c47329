"""Scalar fields of the chart coordinates x1..x4.

A small recursive-descent parser builds an expression tree which can be
evaluated at a point and differentiated exactly (chain, product and quotient
rules).  Grammar, loosest binding first::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' intexp)?
    intexp := ['-'] INT | '(' ['-'] INT ')'
    atom   := NUMBER | x1..x4 | func '(' expr ')' | '(' expr ')'

with ``func`` one of sin, cos, exp, ln, sqrt.  So ``-x1^2`` is ``-(x1^2)``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, ParseError

FUNCTIONS = ("sin", "cos", "exp", "ln", "sqrt")


# --------------------------------------------------------------------------
# expression tree


class Node:
    __slots__ = ()


@dataclass(frozen=True)
class Const(Node):
    value: float


@dataclass(frozen=True)
class Var(Node):
    index: int  # 1..4


@dataclass(frozen=True)
class Neg(Node):
    arg: Node


@dataclass(frozen=True)
class BinOp(Node):
    op: str  # one of + - * /
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int


@dataclass(frozen=True)
class Call(Node):
    func: str
    arg: Node


ZERO = Const(0.0)
ONE = Const(1.0)


def _is_const(n: Node, value: float | None = None) -> bool:
    return isinstance(n, Const) and (value is None or n.value == value)


# Constructors with light constant folding, keeping derivative trees small.


def add(a: Node, b: Node) -> Node:
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    return BinOp("+", a, b)


def sub(a: Node, b: Node) -> Node:
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return neg(b)
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    return BinOp("-", a, b)


def mul(a: Node, b: Node) -> Node:
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return ZERO
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    return BinOp("*", a, b)


def div(a: Node, b: Node) -> Node:
    if _is_const(a, 0.0):
        return ZERO
    if _is_const(b, 1.0):
        return a
    return BinOp("/", a, b)


def neg(a: Node) -> Node:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def power(base: Node, exponent: int) -> Node:
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    return Pow(base, exponent)


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # num, name, op, end
    text: str
    pos: int  # character index into the source


def _tokenize(src: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            raise ParseError(
                f"unexpected character {src[pos]!r}", _byte_offset(src, pos), "number, variable, function or operator"
            )
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("end", "", len(src)))
    return toks


def _byte_offset(src: str, pos: int) -> int:
    return len(src[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected: str) -> ParseError:
        t = self.tok
        what = "end of input" if t.kind == "end" else repr(t.text)
        return ParseError(f"unexpected {what}", _byte_offset(self.src, t.pos), expected)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise self.fail(repr(text))

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.fail("operator or end of input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.accept("^"):
            return Pow(base, self.int_exponent())
        return base

    def int_exponent(self) -> int:
        paren = self.accept("(")
        sign = -1 if self.accept("-") else 1
        t = self.tok
        if t.kind != "num" or not t.text.isdigit():
            raise self.fail("integer exponent")
        self.i += 1
        if paren:
            self.expect(")")
        return sign * int(t.text)

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Const(float(t.text))
        if t.kind == "name":
            self.i += 1
            if t.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(t.text, arg)
            m = re.fullmatch(r"x([1-4])", t.text)
            if m:
                return Var(int(m.group(1)))
            self.i -= 1
            raise self.fail("one of x1, x2, x3, x4 or a function " + "/".join(FUNCTIONS))
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        raise self.fail("number, variable, function or '('")


# --------------------------------------------------------------------------
# evaluation

def _ln(v: float) -> float:
    if v <= 0.0:
        raise DomainError(f"ln of non-positive value {v!r}")
    return math.log(v)


def _sqrt(v: float) -> float:
    if v < 0.0:
        raise DomainError(f"sqrt of negative value {v!r}")
    return math.sqrt(v)


def _exp(v: float) -> float:
    try:
        return math.exp(v)
    except OverflowError:
        raise DomainError(f"exp overflow at {v!r}") from None


_FUNC_IMPL: dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "exp": _exp,
    "ln": _ln,
    "sqrt": _sqrt,
}


def _eval(n: Node, p: Sequence[float]) -> float:
    if isinstance(n, Const):
        return n.value
    if isinstance(n, Var):
        return p[n.index - 1]
    if isinstance(n, Neg):
        return -_eval(n.arg, p)
    if isinstance(n, BinOp):
        a = _eval(n.left, p)
        b = _eval(n.right, p)
        if n.op == "+":
            return a + b
        if n.op == "-":
            return a - b
        if n.op == "*":
            return a * b
        if b == 0.0:
            raise DomainError("division by zero")
        return a / b
    if isinstance(n, Pow):
        b = _eval(n.base, p)
        if n.exponent < 0 and b == 0.0:
            raise DomainError("zero raised to a negative power")
        try:
            return b**n.exponent
        except OverflowError:
            raise DomainError("power overflow") from None
    if isinstance(n, Call):
        return _FUNC_IMPL[n.func](_eval(n.arg, p))
    raise TypeError(f"unknown node {n!r}")


# --------------------------------------------------------------------------
# differentiation

def _diff(n: Node, axis: int) -> Node:
    if isinstance(n, Const):
        return ZERO
    if isinstance(n, Var):
        return ONE if n.index == axis else ZERO
    if isinstance(n, Neg):
        return neg(_diff(n.arg, axis))
    if isinstance(n, BinOp):
        da = _diff(n.left, axis)
        db = _diff(n.right, axis)
        if n.op == "+":
            return add(da, db)
        if n.op == "-":
            return sub(da, db)
        if n.op == "*":
            return add(mul(da, n.right), mul(n.left, db))
        # (a/b)' = a'/b - a b' / b^2
        return sub(div(da, n.right), div(mul(n.left, db), power(n.right, 2)))
    if isinstance(n, Pow):
        db = _diff(n.base, axis)
        return mul(mul(Const(float(n.exponent)), power(n.base, n.exponent - 1)), db)
    if isinstance(n, Call):
        du = _diff(n.arg, axis)
        if _is_const(du, 0.0):
            return ZERO
        u = n.arg
        if n.func == "sin":
            outer: Node = Call("cos", u)
        elif n.func == "cos":
            outer = neg(Call("sin", u))
        elif n.func == "exp":
            outer = n
        elif n.func == "ln":
            return div(du, u)
        else:  # sqrt
            return div(du, mul(Const(2.0), n))
        return mul(outer, du)
    raise TypeError(f"unknown node {n!r}")


# --------------------------------------------------------------------------
# printing (fully parenthesised, re-parseable)

def _fmt(n: Node) -> str:
    if isinstance(n, Const):
        text = repr(abs(n.value)) if math.isfinite(n.value) else None
        if text is None:
            raise ValueError("cannot print non-finite constant")
        return f"(-{text})" if n.value < 0 or math.copysign(1.0, n.value) < 0 else text
    if isinstance(n, Var):
        return f"x{n.index}"
    if isinstance(n, Neg):
        return f"(-{_fmt(n.arg)})"
    if isinstance(n, BinOp):
        return f"({_fmt(n.left)} {n.op} {_fmt(n.right)})"
    if isinstance(n, Pow):
        e = f"({n.exponent})" if n.exponent < 0 else str(n.exponent)
        return f"({_fmt(n.base)})^{e}"
    if isinstance(n, Call):
        return f"{n.func}({_fmt(n.arg)})"
    raise TypeError(f"unknown node {n!r}")


# --------------------------------------------------------------------------
# public surface


@dataclass(frozen=True)
class ScalarField:
    """An immutable parsed expression in x1..x4."""

    ast: Node

    def __call__(self, p) -> float:
        return evaluate(self, p)

    def __str__(self) -> str:
        return _fmt(self.ast)

    def diff(self, axis: int) -> "ScalarField":
        return derivative(self, axis)

    @property
    def is_constant(self) -> bool:
        return not _has_var(self.ast)


def _has_var(n: Node) -> bool:
    if isinstance(n, Var):
        return True
    if isinstance(n, Const):
        return False
    if isinstance(n, (Neg, Call)):
        return _has_var(n.arg)
    if isinstance(n, Pow):
        return _has_var(n.base)
    return _has_var(n.left) or _has_var(n.right)


def parse(src: str) -> ScalarField:
    """Parse expression text into a :class:`ScalarField`."""
    if not isinstance(src, str):
        raise TypeError("expression source must be a string")
    return ScalarField(_Parser(src).parse())


def evaluate(f: ScalarField, p) -> float:
    """Value of ``f`` at the chart point ``p = (x1, x2, x3, x4)``.

    Raises DomainError for ln/sqrt outside their domain, division by zero and
    overflow.
    """
    pt = [float(c) for c in p]
    if len(pt) != 4:
        raise ValueError("point must have 4 coordinates")
    return float(_eval(f.ast, pt))


def derivative(f: ScalarField, axis: int) -> ScalarField:
    """Exact partial derivative with respect to x_axis (axis in 1..4)."""
    if axis not in (1, 2, 3, 4):
        raise ValueError(f"axis must be 1..4, got {axis}")
    return ScalarField(_diff(f.ast, axis))


def to_string(f: ScalarField) -> str:
    return str(f)


def random_field(rng: np.random.Generator, depth: int = 3, safe: bool = True) -> ScalarField:
    """Random expression tree, for property tests.

    With ``safe`` the tree avoids ln/sqrt/division singularities: their
    arguments are wrapped as ``1.5 + sin(.)^2`` or similar strictly positive
    forms.
    """

    def leaf() -> Node:
        if rng.random() < 0.5:
            return Var(int(rng.integers(1, 5)))
        return Const(float(np.round(rng.uniform(-2, 2), 3)))

    def positive(n: Node) -> Node:
        return BinOp("+", Const(1.5), Pow(Call("sin", n), 2))

    def build(d: int) -> Node:
        if d == 0:
            return leaf()
        r = rng.random()
        if r < 0.45:
            op = str(rng.choice(["+", "-", "*", "/"]))
            left, right = build(d - 1), build(d - 1)
            if op == "/" and safe:
                right = positive(right)
            return BinOp(op, left, right)
        if r < 0.6:
            return Neg(build(d - 1))
        if r < 0.75:
            return Pow(build(d - 1), int(rng.integers(-1 if not safe else 0, 4)))
        func = str(rng.choice(FUNCTIONS))
        arg = build(d - 1)
        if func in ("ln", "sqrt") and safe:
            arg = positive(arg)
        if func == "exp" and safe:
            arg = Call("sin", arg)
        return Call(func, arg)

    return ScalarField(build(depth))
