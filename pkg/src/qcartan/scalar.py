"""Exact coefficients: the rational-function field Q(u, c) with q = u**2.

Every coefficient in the package is either a :class:`Scalar` (symbolic mode)
or a :class:`fractions.Fraction` (evaluation at a rational point).  Code that
builds algebras never touches either type directly; it goes through a field
object (:data:`SYMBOLIC` or a :class:`PointField`) which knows how to produce
``q``, ``c``, q-powers and q-integers in its own representation.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from flint import fmpq, fmpq_mpoly, fmpq_mpoly_ctx

__all__ = [
    "Scalar",
    "ScalarError",
    "DivisionByZero",
    "PoleAtPoint",
    "OddHalfPowerAtNonSquare",
    "SymbolicField",
    "PointField",
    "SYMBOLIC",
    "q_power",
    "q_int",
    "specialize",
]

# lex order with u > c; monic denominators are the canonical unit choice
_CTX = fmpq_mpoly_ctx.get(("u", "c"), "lex")
_U, _C = _CTX.gens()
_ONE = _CTX.from_dict({(0, 0): 1})
_ZERO = _CTX.from_dict({})


class ScalarError(ArithmeticError):
    pass


class DivisionByZero(ScalarError, ZeroDivisionError):
    pass


class PoleAtPoint(ScalarError):
    pass


class OddHalfPowerAtNonSquare(ScalarError):
    pass


def _poly(x) -> fmpq_mpoly:
    if isinstance(x, fmpq_mpoly):
        return x
    if isinstance(x, Fraction):
        return _CTX.from_dict({(0, 0): fmpq(x.numerator, x.denominator)})
    return _CTX.from_dict({(0, 0): x}) if x else _ZERO


class Scalar:
    """An element of Q(u, c), kept as a reduced fraction of polynomials.

    The denominator is monic in lex order (u > c), so two equal scalars
    always have identical numerator and denominator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None, *, _reduced=False):
        if isinstance(num, Scalar):
            if den is not None:
                raise TypeError("cannot combine a Scalar numerator with a denominator")
            self.num, self.den = num.num, num.den
            return
        n = _poly(num)
        d = _ONE if den is None else _poly(den)
        if _reduced:
            self.num, self.den = n, d
            return
        if d.is_zero():
            raise DivisionByZero("zero denominator")
        if n.is_zero():
            self.num, self.den = _ZERO, _ONE
            return
        if not d.is_constant():
            g = n.gcd(d)
            if not g.is_one():
                n = n / g
                d = d / g
        lc = d.leading_coefficient()
        if lc != 1:
            n = n / lc
            d = d / lc
        self.num, self.den = n, d

    # construction helpers
    @classmethod
    def from_terms(cls, num_terms: dict, den_terms: dict | None = None) -> "Scalar":
        """Build from ``{(exp_u, exp_c): rational}`` maps."""
        conv = lambda t: _CTX.from_dict({k: _to_fmpq(v) for k, v in t.items() if v})
        return cls(conv(num_terms), conv(den_terms) if den_terms is not None else None)

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        from .expr import parse_scalar

        return parse_scalar(text)

    def numerator_terms(self) -> dict:
        return {k: Fraction(int(v.p), int(v.q)) for k, v in self.num.to_dict().items()}

    def denominator_terms(self) -> dict:
        return {k: Fraction(int(v.p), int(v.q)) for k, v in self.den.to_dict().items()}

    # predicates
    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        v = self.num.to_dict().get((0, 0), fmpq(0))
        return Fraction(int(v.p), int(v.q))

    def q_exponent(self):
        """Return k if this scalar equals q**k exactly (k may be a half-integer), else None."""
        nt, dt = self.num.to_dict(), self.den.to_dict()
        if len(nt) != 1 or len(dt) != 1:
            return None
        (nk, nv), (dk, dv) = next(iter(nt.items())), next(iter(dt.items()))
        if nv != 1 or dv != 1 or nk[1] or dk[1]:
            return None
        return Fraction(int(nk[0]) - int(dk[0]), 2)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o:
            return self
        if not self:
            return o
        if self.den == o.den:
            if self.den.is_one():
                return Scalar(self.num + o.num, _reduced=True)
            return Scalar(self.num + o.num, self.den)
        return Scalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self or not o:
            return Scalar(_ZERO, _ONE, _reduced=True)
        if self.den.is_one() and o.den.is_one():
            return Scalar(self.num * o.num, _reduced=True)
        return Scalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if not self:
            raise DivisionByZero("inverse of zero")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        return Scalar(self.num**n, self.den**n, _reduced=True)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((tuple(sorted(self.num.to_dict().items())), tuple(sorted(self.den.to_dict().items()))))

    def canonical(self) -> "Scalar":
        return Scalar(self.num, self.den)

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __str__(self):
        # clear rational content so "-1/(2*c^2)" rather than "-1/2/c^2"
        scale = math.lcm(*(int(v.q) for p in (self.num, self.den) for v in p.to_dict().values()))
        num, den = self.num * scale, self.den * scale
        text = _format_factored(num)
        if den.is_one():
            return text
        if len(num.to_dict()) > 1 and not text.startswith("("):
            text = f"({text})"
        dtext = _format_factored(den)
        if len(den.to_dict()) > 1 or "*" in dtext:
            dtext = f"({dtext})"
        return f"{text}/{dtext}"


def _to_fmpq(v) -> fmpq:
    v = Fraction(v)
    return fmpq(v.numerator, v.denominator)


def _format_monomial(eu: int, ec: int) -> str:
    parts = []
    if eu:
        if eu == 2:
            parts.append("q")
        elif eu % 2 == 0:
            parts.append(f"q^{eu // 2}")
        else:
            parts.append(f"q^({eu}/2)")
    if ec:
        parts.append("c" if ec == 1 else f"c^{ec}")
    return "*".join(parts)


def _format_factored(p: fmpq_mpoly) -> str:
    """Like _format_poly, with the common monomial of several terms pulled out: (1+q^2)*c."""
    terms = p.to_dict()
    if len(terms) < 2:
        return _format_poly(p)
    mu = min(eu for eu, _ in terms)
    mc = min(ec for _, ec in terms)
    mono = _format_monomial(mu, mc)
    if not mono:
        return _format_poly(p)
    rest = _format_terms({(eu - mu, ec - mc): v for (eu, ec), v in terms.items()})
    return f"({rest})*{mono}"


def _format_poly(p: fmpq_mpoly) -> str:
    return _format_terms(p.to_dict())


def _format_terms(terms: dict) -> str:
    terms = sorted(terms.items())
    if not terms:
        return "0"
    out = []
    for (eu, ec), v in terms:
        coef = Fraction(int(v.p), int(v.q))
        mono = _format_monomial(eu, ec)
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f"{sign}{body}"
    return text


# fields

class SymbolicField:
    """Coefficients in Q(u, c); identities checked here hold for generic q and c."""

    symbolic = True

    def __init__(self):
        self.zero = Scalar(0)
        self.one = Scalar(1)
        self.u = Scalar(_U, _reduced=True)
        self.q = Scalar(_U * _U, _reduced=True)
        self.c = Scalar(_C, _reduced=True)

    def __call__(self, x) -> Scalar:
        return x if isinstance(x, Scalar) else Scalar(x)

    def q_power(self, k) -> Scalar:
        k = Fraction(k)
        e = 2 * k
        if e.denominator != 1:
            raise ValueError(f"q-power exponent must be a half-integer, got {k}")
        e = int(e)
        if e >= 0:
            return Scalar(_U**e, _reduced=True)
        return Scalar(_ONE, _U ** (-e), _reduced=True)

    def q_exponent(self, x: Scalar):
        return self(x).q_exponent()

    def q_int(self, n: int) -> Scalar:
        return q_int(n, self)

    def config(self) -> dict:
        return {"mode": "symbolic"}

    def __repr__(self):
        return "SymbolicField()"


class PointField:
    """Coefficients in Q after substituting rational values for q and c."""

    symbolic = False

    def __init__(self, q, c):
        q = Fraction(q)
        c = Fraction(c)
        if q == 0:
            raise ValueError("q must be nonzero")
        if c == 0:
            raise ValueError("c must be nonzero")
        self.q_value = q
        self.c_value = c
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.q = q
        self.c = c
        self.u = _rational_sqrt(q)

    def __call__(self, x) -> Fraction:
        if isinstance(x, Scalar):
            return specialize(x, self.q_value, self.c_value)
        return Fraction(x)

    def q_power(self, k) -> Fraction:
        k = Fraction(k)
        if k.denominator == 1:
            return self.q ** int(k)
        if k.denominator != 2:
            raise ValueError(f"q-power exponent must be a half-integer, got {k}")
        if self.u is None:
            raise OddHalfPowerAtNonSquare(f"q={self.q} has no rational square root")
        return self.u ** int(2 * k)

    def q_exponent(self, x, bound: int = 64):
        """Half-integer k with q**k == x, searched up to |k| <= bound."""
        x = Fraction(x)
        if x == 0:
            return None
        if abs(self.q) == 1:
            if x == 1:
                return Fraction(0)
            return None
        for k2 in range(-2 * bound, 2 * bound + 1):
            if k2 % 2 and self.u is None:
                continue
            if self.q_power(Fraction(k2, 2)) == x:
                return Fraction(k2, 2)
        return None

    def q_int(self, n: int) -> Fraction:
        return q_int(n, self)

    def config(self) -> dict:
        return {"mode": "point", "q": str(self.q_value), "c": str(self.c_value)}

    def __repr__(self):
        return f"PointField(q={self.q_value}, c={self.c_value})"


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


SYMBOLIC = SymbolicField()


def q_power(k, field=SYMBOLIC):
    """q**k for half-integer k, i.e. u**(2k)."""
    return field.q_power(k)


def q_int(n: int, field=SYMBOLIC):
    """The q-integer (q**n - q**-n) / (q - q**-1), as a Laurent polynomial."""
    if n == 0:
        return field.zero
    if n < 0:
        return -q_int(-n, field)
    # q^(n-1) + q^(n-3) + ... + q^(1-n) avoids a division, and is valid at q = +-1
    return reduce(lambda a, b: a + b, (field.q_power(n - 1 - 2 * j) for j in range(n)))


def q_factorial(n: int, field=SYMBOLIC):
    out = field.one
    for k in range(1, n + 1):
        out = out * q_int(k, field)
    return out


def specialize(s: Scalar, q_val, c_val) -> Fraction:
    """Evaluate ``s`` at q = q_val, c = c_val, taking u = +sqrt(q_val).

    Odd powers of u are only defined when q_val is a rational square.
    """
    q_val, c_val = Fraction(q_val), Fraction(c_val)
    u_val = _rational_sqrt(q_val)

    def ev(p: fmpq_mpoly) -> Fraction:
        total = Fraction(0)
        for (eu, ec), v in p.to_dict().items():
            eu, ec = int(eu), int(ec)
            if eu % 2:
                if u_val is None:
                    raise OddHalfPowerAtNonSquare(f"odd power of q^(1/2) at q={q_val}")
                base = u_val**eu
            else:
                base = q_val ** (eu // 2)
            total += Fraction(int(v.p), int(v.q)) * base * c_val**ec
        return total

    den = ev(s.den)
    if den == 0:
        raise PoleAtPoint(f"{s} has a pole at q={q_val}, c={c_val}")
    return ev(s.num) / den
