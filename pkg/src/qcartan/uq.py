"""U_q(sl2) as a rewriting system.

Words are tuples over the letters ``"E"``, ``"F"``, ``"K"`` and ``"k"`` (for
K^-1).  The normal form is F^a K^b E^c, with K^b spelled as |b| copies of
``"K"`` or ``"k"``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .linalg import Matrix, NoSolution, solve
from .scalar import SYMBOLIC

__all__ = [
    "UqWord",
    "ClosureViolation",
    "GENERATORS",
    "normalize",
    "coproduct",
    "antipode",
    "counit",
    "adjoint",
    "adjoint_matrix",
    "slq_basis",
    "SlqElement",
]

GENERATORS = ("E", "F", "K", "k")
_RANK = {"F": 0, "K": 1, "k": 1, "E": 2}
_ALIASES = {"K^-1": "k", "Kinv": "k", "K-1": "k"}


class ClosureViolation(ArithmeticError):
    """An adjoint image left span{X, Z, Y}."""


def _letter(g: str) -> str:
    g = _ALIASES.get(g, g)
    if g not in GENERATORS:
        raise ValueError(f"unknown generator {g!r}")
    return g


class UqWord:
    """A finite linear combination of words with coefficients in a field."""

    __slots__ = ("terms", "field")

    def __init__(self, terms=None, field=SYMBOLIC):
        self.field = field
        self.terms = {}
        for w, x in (terms or {}).items():
            x = field(x)
            if x:
                self.terms[tuple(w)] = x

    @classmethod
    def word(cls, *letters: str, coef=1, field=SYMBOLIC) -> "UqWord":
        return cls({tuple(_letter(g) for g in letters): coef}, field)

    @classmethod
    def one(cls, field=SYMBOLIC) -> "UqWord":
        return cls({(): 1}, field)

    def __add__(self, other: "UqWord") -> "UqWord":
        out = dict(self.terms)
        for w, x in other.terms.items():
            out[w] = out[w] + x if w in out else x
        return UqWord(out, self.field)

    def __neg__(self):
        return UqWord({w: -x for w, x in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UqWord):
            out: dict = {}
            for w1, x1 in self.terms.items():
                for w2, x2 in other.terms.items():
                    w = w1 + w2
                    out[w] = out[w] + x1 * x2 if w in out else x1 * x2
            return UqWord(out, self.field)
        s = self.field(other)
        return UqWord({w: s * x for w, x in self.terms.items()}, self.field)

    def __rmul__(self, other):
        s = self.field(other)
        return UqWord({w: s * x for w, x in self.terms.items()}, self.field)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, UqWord):
            return NotImplemented
        return normalize(self).terms == normalize(other).terms

    __hash__ = None

    def is_normal(self) -> bool:
        return all(_first_violation(w) is None for w in self.terms)

    def pbw_exponents(self) -> dict:
        """Map (a, b, c) -> coefficient for the term F^a K^b E^c; requires normal form."""
        out = {}
        for w, x in normalize(self).terms.items():
            a = w.count("F")
            b = w.count("K") - w.count("k")
            c = w.count("E")
            out[(a, b, c)] = x
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, x in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            mono = render_word(w)
            if x == 1:
                parts.append(mono)
            elif x == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"({x})*{mono}" if w else f"({x})")
        return " + ".join(parts)

    __repr__ = __str__


def render_word(w: tuple) -> str:
    """Render a word with runs collapsed, e.g. ``F K^-1 E^2``."""
    if not w:
        return "1"
    out = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        n = j - i
        base = "K" if w[i] == "k" else w[i]
        exp = -n if w[i] == "k" else n
        out.append(base if exp == 1 else f"{base}^{exp}")
        i = j
    return " ".join(out)


def _first_violation(w: tuple):
    for i in range(len(w) - 1):
        a, b = w[i], w[i + 1]
        if _RANK[a] > _RANK[b] or {a, b} == {"K", "k"}:
            return i
    return None


def _rule(a: str, b: str, field) -> list[tuple[tuple, object]]:
    q = field.q
    if (a, b) == ("E", "F"):
        inv = field.one / (q - field.one / q)
        return [(("F", "E"), field.one), (("K",), inv), (("k",), -inv)]
    if (a, b) == ("E", "K"):
        return [(("K", "E"), field.q_power(-2))]
    if (a, b) == ("E", "k"):
        return [(("k", "E"), field.q_power(2))]
    if (a, b) == ("K", "F"):
        return [(("F", "K"), field.q_power(-2))]
    if (a, b) == ("k", "F"):
        return [(("F", "k"), field.q_power(2))]
    if {a, b} == {"K", "k"}:
        return [((), field.one)]
    raise AssertionError(f"no rule for {a}{b}")


@lru_cache(maxsize=None)
def _normalize_word(w: tuple, field) -> tuple:
    i = _first_violation(w)
    if i is None:
        return ((w, field.one),)
    out: dict = {}
    for rep, coef in _rule(w[i], w[i + 1], field):
        for nw, x in _normalize_word(w[:i] + rep + w[i + 2 :], field):
            t = coef * x
            out[nw] = out[nw] + t if nw in out else t
    return tuple((k, v) for k, v in out.items() if v)


def normalize(w: UqWord) -> UqWord:
    """PBW normal form F^a K^b E^c."""
    out: dict = {}
    for word, x in w.terms.items():
        for nw, y in _normalize_word(word, w.field):
            t = x * y
            out[nw] = out[nw] + t if nw in out else t
    return UqWord(out, w.field)


def coproduct(g: str, field=SYMBOLIC) -> list[tuple[UqWord, UqWord]]:
    g = _letter(g)
    W = lambda *ls: UqWord.word(*ls, field=field)
    if g == "E":
        return [(W("E"), W("K")), (W(), W("E"))]
    if g == "F":
        return [(W("F"), W()), (W("k"), W("F"))]
    return [(W(g), W(g))]


def antipode(g: str, field=SYMBOLIC) -> UqWord:
    g = _letter(g)
    if g == "E":
        return UqWord.word("E", "k", coef=-1, field=field)
    if g == "F":
        return UqWord.word("K", "F", coef=-1, field=field)
    return UqWord.word("k" if g == "K" else "K", field=field)


def counit(g: str) -> int:
    return 0 if _letter(g) in ("E", "F") else 1


def adjoint(x: str, y: UqWord) -> UqWord:
    """ad_x y = sum x_(1) y S(x_(2)) for a generator x, in normal form."""
    field = y.field
    out = UqWord({}, field)
    for a, b in coproduct(x, field):
        out = out + a * y * antipode_word(b)
    return normalize(out)


def antipode_word(w: UqWord) -> UqWord:
    """S extended as an algebra antimorphism."""
    field = w.field
    out = UqWord({}, field)
    for word, x in w.terms.items():
        t = UqWord.one(field) * x
        for g in reversed(word):
            t = t * antipode(g, field)
        out = out + t
    return out


def adjoint_word(word: Iterable[str], y: UqWord) -> UqWord:
    """ad_{g1 g2 ... gn} = ad_g1 o ... o ad_gn."""
    out = y
    for g in reversed(tuple(word)):
        out = adjoint(g, out)
    return out


def slq_basis(field=SYMBOLIC) -> tuple[UqWord, UqWord, UqWord]:
    """(X, Z, Y) = (E, q^-2 EF - FE, KF)."""
    W = lambda *ls, coef=1: UqWord.word(*ls, coef=coef, field=field)
    X = W("E")
    Z = W("E", "F", coef=field.q_power(-2)) - W("F", "E")
    Y = W("K", "F")
    return X, Z, Y


class SlqElement:
    """x X + z Z + y Y inside sl_q(2)."""

    __slots__ = ("x", "z", "y", "field")

    def __init__(self, x=0, z=0, y=0, field=SYMBOLIC):
        self.field = field
        self.x, self.z, self.y = field(x), field(z), field(y)

    def coefficients(self) -> tuple:
        return (self.x, self.z, self.y)

    def to_uq(self) -> UqWord:
        X, Z, Y = slq_basis(self.field)
        return normalize(X * self.x + Z * self.z + Y * self.y)

    @classmethod
    def from_uq(cls, w: UqWord) -> "SlqElement":
        return cls(*_coordinates(w), field=w.field)

    def __eq__(self, other):
        return isinstance(other, SlqElement) and self.coefficients() == other.coefficients()

    __hash__ = None

    def __repr__(self):
        return f"SlqElement(x={self.x}, z={self.z}, y={self.y})"


def _coordinates(w: UqWord) -> list:
    """Coordinates of w in the basis (X, Z, Y); raises ClosureViolation if outside."""
    field = w.field
    basis = [normalize(b) for b in slq_basis(field)]
    target = normalize(w)
    words = sorted({k for b in basis for k in b.terms} | set(target.terms))
    m = Matrix([[b.terms.get(k, field.zero) for b in basis] for k in words], field)
    rhs = [target.terms.get(k, field.zero) for k in words]
    try:
        return solve(m, rhs)
    except NoSolution:
        raise ClosureViolation(f"{target} is not in span(X, Z, Y)") from None


def adjoint_matrix(g: str, field=SYMBOLIC) -> Matrix:
    """Matrix of ad_g on the ordered basis (X, Z, Y) = (v2, v0, v-2)."""
    return _adjoint_matrix(_letter(g), field)


@lru_cache(maxsize=None)
def _adjoint_matrix(g: str, field) -> Matrix:
    cols = [_coordinates(adjoint(g, b)) for b in slq_basis(field)]
    return Matrix.from_columns(cols, field)
