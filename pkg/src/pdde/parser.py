"""Text front end for complex constants and exponential polynomials.

Grammar (whitespace is insignificant)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' ['-'] INT)?
    atom    := NUMBER | 'i' | 'pi' | 'e' | 'z' INT
             | ('exp' | 'log' | 'sqrt') '(' expr ')' | '(' expr ')'

``^`` binds tighter than unary minus, so ``-z1^2`` is ``-(z1^2)``.  Division
is only allowed by constants and negative powers only of constants.  The
argument of ``exp`` must be a polynomial; ``log`` and ``sqrt`` take constants
and use principal branches.  ``i``, ``pi``, ``e`` and the function names are
reserved.  Error positions are UTF-8 byte offsets.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Sequence

from .algebra import ExpPoly, Polynomial, multiply, power

__all__ = [
    "ParseError",
    "SourceSpan",
    "parse",
    "parse_constant",
    "parse_exppoly",
    "interpret",
    "format_complex",
    "format_polynomial",
    "format_exppoly",
    "max_variable_index",
]


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{message} at bytes {span.start}..{span.end}")
        self.message = message
        self.span = span


# ---------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Num:
    value: complex
    span: SourceSpan


@dataclass(frozen=True)
class Var:
    index: int
    span: SourceSpan


@dataclass(frozen=True)
class Neg:
    operand: object
    span: SourceSpan


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    span: SourceSpan


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    span: SourceSpan


@dataclass(frozen=True)
class Call:
    name: str
    arg: object
    span: SourceSpan


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)

_CONSTANTS = {"i": 1j, "pi": complex(math.pi), "e": complex(math.e)}
_FUNCS = ("exp", "log", "sqrt")
_VAR = re.compile(r"z([0-9]+)$")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Tok]:
    offsets = [0]
    for ch in text:
        offsets.append(offsets[-1] + len(ch.encode("utf-8")))
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(offsets[pos], offsets[pos + 1]))
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), SourceSpan(offsets[m.start()], offsets[m.end()])))
        pos = m.end()
    toks.append(_Tok("eof", "", SourceSpan(offsets[-1], offsets[-1])))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def take(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.take()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.span)
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"unexpected {tok.text!r}", tok.span)
        return node

    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            node = BinOp(op, node, rhs, _join(node, rhs))
        return node

    def term(self):
        node = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.take().text
            rhs = self.unary()
            node = BinOp(op, node, rhs, _join(node, rhs))
        return node

    def unary(self):
        tok = self.peek()
        if tok.text in ("-", "+"):
            self.take()
            operand = self.unary()
            if tok.text == "+":
                return operand
            return Neg(operand, SourceSpan(tok.span.start, _span(operand).end))
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().text != "^":
            return base
        self.take()
        sign = 1
        if self.peek().text == "-":
            self.take()
            sign = -1
        tok = self.take()
        if tok.kind != "num" or not tok.text.isdigit():
            raise ParseError("power exponent must be an integer literal", tok.span)
        return Pow(base, sign * int(tok.text), SourceSpan(_span(base).start, tok.span.end))

    def atom(self):
        tok = self.take()
        if tok.kind == "num":
            return Num(complex(float(tok.text)), tok.span)
        if tok.kind == "name":
            if tok.text in _CONSTANTS:
                return Num(_CONSTANTS[tok.text], tok.span)
            if tok.text in _FUNCS:
                self.expect("(")
                arg = self.expr()
                close = self.expect(")")
                return Call(tok.text, arg, SourceSpan(tok.span.start, close.span.end))
            m = _VAR.match(tok.text)
            if m:
                return Var(int(m.group(1)), tok.span)
            raise ParseError(f"unknown name {tok.text!r}", tok.span)
        if tok.text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.span)


def _span(node) -> SourceSpan:
    return node.span


def _join(a, b) -> SourceSpan:
    return SourceSpan(_span(a).start, _span(b).end)


def parse(text: str):
    """Parse ``text`` into a syntax tree."""
    return _Parser(text).parse()


def max_variable_index(node) -> int:
    if isinstance(node, Var):
        return node.index
    if isinstance(node, Num):
        return 0
    if isinstance(node, (Neg,)):
        return max_variable_index(node.operand)
    if isinstance(node, Pow):
        return max_variable_index(node.base)
    if isinstance(node, Call):
        return max_variable_index(node.arg)
    return max(max_variable_index(node.left), max_variable_index(node.right))


# ---------------------------------------------------------------------------
# lowering to exponential polynomials


def _principal(name: str, w: complex, span: SourceSpan) -> complex:
    if name == "log":
        if w == 0:
            raise ParseError("log(0) is a branch point", span)
        out = cmath.log(w)
    elif name == "sqrt":
        out = cmath.sqrt(w)
    else:
        out = cmath.exp(w)
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise ParseError(f"{name} overflowed", span)
    return complex(out.real + 0.0, out.imag + 0.0)


def _lower(node, dim: int) -> ExpPoly:
    if isinstance(node, Num):
        return ExpPoly.constant(dim, node.value)
    if isinstance(node, Var):
        if not (1 <= node.index <= dim):
            raise ParseError(f"variable z{node.index} outside 1..{dim}", node.span)
        return ExpPoly.variable(dim, node.index)
    if isinstance(node, Neg):
        return -_lower(node.operand, dim)
    if isinstance(node, BinOp):
        left = _lower(node.left, dim)
        right = _lower(node.right, dim)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return multiply(left, right)
        if not right.is_constant():
            raise ParseError("division is only allowed by constants", _span(node.right))
        d = right.constant_value()
        if d == 0:
            raise ParseError("division by zero", _span(node.right))
        return left * (1.0 / d)
    if isinstance(node, Pow):
        base = _lower(node.base, dim)
        if node.exponent >= 0:
            return power(base, node.exponent)
        if not base.is_constant():
            raise ParseError("negative powers are only allowed for constants", node.span)
        b = base.constant_value()
        if b == 0:
            raise ParseError("division by zero", node.span)
        return ExpPoly.constant(dim, b**node.exponent)
    if isinstance(node, Call):
        arg = _lower(node.arg, dim)
        if node.name == "exp":
            if not arg.is_polynomial():
                raise ParseError("the argument of exp must be a polynomial", _span(node.arg))
            if arg.is_constant():
                return ExpPoly.constant(dim, _principal("exp", arg.constant_value(), node.span))
            return ExpPoly.exp(arg.as_polynomial())
        if not arg.is_constant():
            raise ParseError(f"{node.name} takes a constant argument", _span(node.arg))
        return ExpPoly.constant(dim, _principal(node.name, arg.constant_value(), node.span))
    raise TypeError(f"unknown node {node!r}")


def parse_exppoly(text: str, dim: int) -> ExpPoly:
    """Parse ``text`` as an exponential polynomial in ``dim`` variables."""
    return _lower(parse(text), dim)


def parse_constant(text: str) -> complex:
    """Evaluate a constant expression (no variables) to a complex number."""
    node = parse(text)
    if max_variable_index(node):
        raise ParseError("constants may not contain variables", _find_var(node).span)
    value = _lower(node, 1)
    return value.constant_value()


def _find_var(node):
    if isinstance(node, Var):
        return node
    for child in (getattr(node, a, None) for a in ("operand", "base", "arg", "left", "right")):
        if child is not None and max_variable_index(child):
            return _find_var(child)
    return None


def interpret(node, z: Sequence[complex]) -> complex:
    """Evaluate a syntax tree numerically at ``z``, bypassing the algebra."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return complex(z[node.index - 1])
    if isinstance(node, Neg):
        return -interpret(node.operand, z)
    if isinstance(node, BinOp):
        a, b = interpret(node.left, z), interpret(node.right, z)
        return {"+": a + b, "-": a - b, "*": a * b}[node.op] if node.op != "/" else a / b
    if isinstance(node, Pow):
        return interpret(node.base, z) ** node.exponent
    if isinstance(node, Call):
        w = interpret(node.arg, z)
        if node.name == "exp":
            return cmath.exp(w)
        if node.name == "log":
            return cmath.log(w)
        return cmath.sqrt(w)
    raise TypeError(f"unknown node {node!r}")


# ---------------------------------------------------------------------------
# printing


def _fmt_real(x: float) -> str:
    return format(x + 0.0, ".17g")


def format_complex(c: complex) -> str:
    c = complex(c)
    return f"({_fmt_real(c.real)}+{_fmt_real(c.imag)}*i)"


def _monomial(m: tuple[int, ...]) -> str:
    parts = []
    for j, e in enumerate(m):
        if e == 1:
            parts.append(f"z{j + 1}")
        elif e > 1:
            parts.append(f"z{j + 1}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for m, c in p.items():
        mono = _monomial(m)
        pieces.append(format_complex(c) + (f"*{mono}" if mono else ""))
    return " + ".join(pieces)


def format_exppoly(f: ExpPoly) -> str:
    """Canonical text; parsing it back gives an identical object."""
    if f.is_zero():
        return "0"
    pieces = []
    for t in f.terms:
        front = format_polynomial(t.front)
        if t.exponent.is_zero():
            pieces.append(f"({front})")
        else:
            pieces.append(f"({front})*exp({format_polynomial(t.exponent)})")
    return " + ".join(pieces)
