"""Expression language for scalars and algebra elements.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := primary ('^' exponent)?
    primary:= NUMBER | ATOM | '(' expr ')'
    exponent := '-'? INT | '(' '-'? INT ('/' INT)? ')'

Atoms are ``q``, ``c``, ``v2``, ``v0``, ``vm2`` and ``gamma``.  Trees render
back to text that parses to the same tree.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .scalar import SYMBOLIC

__all__ = [
    "ExprSyntaxError",
    "Num",
    "Atom",
    "Neg",
    "BinOp",
    "Power",
    "parse",
    "render",
    "evaluate",
    "parse_scalar",
    "parse_element",
    "ATOMS",
]

ATOMS = ("q", "c", "v2", "v0", "vm2", "gamma")


class ExprSyntaxError(SyntaxError):
    def __init__(self, msg: str, text: str, position: int):
        super().__init__(f"{msg} at position {position}")
        self.text = text
        self.position = position
        self.offset = position + 1


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: Fraction


Expr = Union[Num, Atom, Neg, BinOp, Power]

_TOKEN = re.compile(r"\s*(?:(\d+)|(vm2|v2|v0|gamma|q|c)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex)
        num, atom, sym = m.groups()
        if num is not None:
            toks.append(("num", num, start))
        elif atom is not None:
            toks.append(("atom", atom, start))
        elif sym in "+-*/^()":
            toks.append(("op", sym, start))
        else:
            raise ExprSyntaxError(f"unexpected character {sym!r}", text, start)
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str):
        raise ExprSyntaxError(msg, self.text, self.peek()[2])

    def expect(self, sym: str):
        if self.peek()[:2] != ("op", sym):
            self.error(f"expected {sym!r}")
        self.take()

    def parse(self) -> Expr:
        if self.peek()[0] == "end":
            self.error("empty expression")
        e = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            e = BinOp(op, e, self.factor())
        return e

    def factor(self) -> Expr:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.factor())
        base = self.primary()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            return Power(base, self.exponent())
        return base

    def primary(self) -> Expr:
        kind, val, _ = self.peek()
        if kind == "num":
            self.take()
            return Num(int(val))
        if kind == "atom":
            self.take()
            return Atom(val)
        if (kind, val) == ("op", "("):
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        self.error("expected a number, an atom or '('")

    def integer(self) -> int:
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        if self.peek()[0] != "num":
            self.error("expected an integer exponent")
        return sign * int(self.take()[1])

    def exponent(self) -> Fraction:
        if self.peek()[:2] == ("op", "("):
            self.take()
            n = self.integer()
            d = 1
            if self.peek()[:2] == ("op", "/"):
                self.take()
                if self.peek()[0] != "num":
                    self.error("expected an integer denominator")
                if not int(self.peek()[1]):
                    self.error("zero denominator in exponent")
                d = int(self.take()[1])
            self.expect(")")
            return Fraction(n, d)
        return Fraction(self.integer())


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# rendering

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Power):
        return 4
    return 5


def _wrap(e: Expr, ok: bool) -> str:
    s = render(e)
    return s if ok else f"({s})"


def render(e: Expr) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Atom):
        return e.name
    if isinstance(e, Neg):
        return "-" + _wrap(e.operand, _prec(e.operand) >= 3)
    if isinstance(e, Power):
        x = e.exponent
        exp = str(x.numerator) if x.denominator == 1 else f"({x.numerator}/{x.denominator})"
        return _wrap(e.base, _prec(e.base) == 5) + "^" + exp
    p = _PREC[e.op]
    left = _wrap(e.left, _prec(e.left) >= p)
    right = _wrap(e.right, _prec(e.right) > p)
    sep = f" {e.op} " if p == 1 else e.op
    return left + sep + right


# evaluation

def evaluate(e: Expr, algebra=None, field=None):
    """Value of ``e`` as a field element, or as an element of ``algebra`` if it has generators."""
    f = field or (algebra.field if algebra is not None else SYMBOLIC)

    def ev(n: Expr):
        if isinstance(n, Num):
            return f(n.value)
        if isinstance(n, Atom):
            if n.name == "q":
                return f.q
            if n.name == "c":
                return f.c
            if algebra is None:
                raise ValueError(f"{n.name} needs an algebra")
            if n.name == "gamma":
                if not hasattr(algebra, "gamma"):
                    raise ValueError(f"gamma is not defined in the {algebra.name}")
                return algebra.gamma()
            return algebra.gen(("v2", "v0", "vm2").index(n.name))
        if isinstance(n, Neg):
            return -ev(n.operand)
        if isinstance(n, Power):
            x = n.exponent
            if n.base == Atom("q"):
                return f.q_power(x)
            base = ev(n.base)
            if x.denominator != 1:
                raise ValueError("fractional exponents apply to q only")
            if x < 0 and _is_algebra_element(base):
                raise ValueError("negative powers of algebra elements are not defined")
            return base ** int(x)
        a, b = ev(n.left), ev(n.right)
        if n.op == "+":
            return a + b
        if n.op == "-":
            return a - b
        if n.op == "*":
            return a * b
        if _is_algebra_element(b):
            raise ValueError("division by an algebra element")
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b

    return ev(e)


def _is_algebra_element(x) -> bool:
    return hasattr(x, "algebra") and hasattr(x, "coeffs")


def parse_scalar(text: str, field=SYMBOLIC):
    out = evaluate(parse(text), None, field)
    return field(out)


def parse_element(text: str, algebra):
    out = evaluate(parse(text), algebra)
    return algebra.coerce(out)
