"""Shared machinery for the two 8-dimensional algebras generated by v2, v0, v-2.

Both algebras use the monomial basis

    1; v2, v0, v-2; v2 v0, v2 v-2, v0 v-2; v2 v0 v-2

and are presented by one rewriting rule per out-of-order (or repeated) pair
of generators.  The U_q(sl2)-action is built from the action on generators
through the coproduct, one leading letter at a time.
"""
from __future__ import annotations

from functools import cached_property
from typing import Callable, Sequence

from .linalg import Matrix
from .repn import ModuleSpec, v2pi

__all__ = ["BASIS", "LABELS", "GENERATOR_NAMES", "FilteredAlgebra", "AlgebraElement"]

# generator indices: 0 = v2, 1 = v0, 2 = v-2
GENERATOR_NAMES = ("v2", "v0", "vm2")
GENERATOR_WEIGHTS = (2, 0, -2)
BASIS: tuple[tuple[int, ...], ...] = ((), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2))
LABELS = tuple("*".join(GENERATOR_NAMES[i] for i in w) or "1" for w in BASIS)
INDEX = {w: n for n, w in enumerate(BASIS)}

Rules = dict  # (i, j) with i >= j  ->  list of (word, coefficient)


class AlgebraElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "FilteredAlgebra", coeffs: Sequence):
        self.algebra = algebra
        self.coeffs = list(coeffs)

    @property
    def field(self):
        return self.algebra.field

    def __add__(self, other):
        other = self.algebra.coerce(other)
        return AlgebraElement(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self.algebra.coerce(other))

    def __rsub__(self, other):
        return self.algebra.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.mul(self, other)
        s = self.field(other)
        return AlgebraElement(self.algebra, [s * a for a in self.coeffs])

    def __rmul__(self, other):
        s = self.field(other)
        return AlgebraElement(self.algebra, [s * a for a in self.coeffs])

    def __truediv__(self, other):
        s = self.field.one / self.field(other)
        return self * s

    def __pow__(self, n: int):
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = self.algebra.coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def component(self, degree: int) -> "AlgebraElement":
        """Part of filtration/grade exactly ``degree``."""
        return AlgebraElement(
            self.algebra, [x if len(w) == degree else self.field.zero for w, x in zip(BASIS, self.coeffs)]
        )

    def parity_part(self, p: int) -> "AlgebraElement":
        return AlgebraElement(
            self.algebra, [x if len(w) % 2 == p else self.field.zero for w, x in zip(BASIS, self.coeffs)]
        )

    def degree(self) -> int:
        """Highest degree with a nonzero coefficient (-1 for zero)."""
        return max((len(w) for w, x in zip(BASIS, self.coeffs) if x), default=-1)

    def scalar_part(self):
        return self.coeffs[0]

    def __str__(self):
        return self.algebra.render(self)

    def __repr__(self):
        return f"{self.algebra.short}({self})"


class FilteredAlgebra:
    short = "A"
    name = "algebra"

    def __init__(self, field, rules: Rules, module: ModuleSpec | None = None):
        self.field = field
        self.rules = rules
        self.V = module or v2pi(field)
        self._word_cache: dict = {}

    # elements
    def element(self, coeffs) -> AlgebraElement:
        return AlgebraElement(self, [self.field(x) for x in coeffs])

    def basis_element(self, n: int) -> AlgebraElement:
        f = self.field
        return AlgebraElement(self, [f.one if i == n else f.zero for i in range(8)])

    def basis(self) -> list[AlgebraElement]:
        return [self.basis_element(n) for n in range(8)]

    def one(self) -> AlgebraElement:
        return self.basis_element(0)

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, [self.field.zero] * 8)

    def gen(self, i: int) -> AlgebraElement:
        return self.basis_element(1 + i)

    def gens(self) -> tuple[AlgebraElement, AlgebraElement, AlgebraElement]:
        return tuple(self.gen(i) for i in range(3))

    def from_vector(self, v3: Sequence) -> AlgebraElement:
        """Embed a V2pi coordinate vector as a degree-1 element."""
        f = self.field
        return AlgebraElement(self, [f.zero, *[f(x) for x in v3], f.zero, f.zero, f.zero, f.zero])

    def coerce(self, x) -> AlgebraElement:
        if isinstance(x, AlgebraElement):
            if x.algebra is not self:
                raise TypeError("elements of different algebras")
            return x
        if isinstance(x, (list, tuple)):
            raise TypeError("cannot coerce a sequence")
        return self.one() * self.field(x)

    # multiplication
    def reduce_word(self, word: tuple) -> dict:
        """Normal form of a word in the generators, as {basis word: coefficient}."""
        hit = self._word_cache.get(word)
        if hit is not None:
            return hit
        f = self.field
        for i in range(len(word) - 1):
            if word[i] >= word[i + 1]:
                out: dict = {}
                for rep, coef in self.rules[(word[i], word[i + 1])]:
                    for w, x in self.reduce_word(word[:i] + rep + word[i + 2 :]).items():
                        t = coef * x
                        out[w] = out[w] + t if w in out else t
                out = {w: x for w, x in out.items() if x}
                break
        else:
            out = {word: f.one}
        self._word_cache[word] = out
        return out

    @cached_property
    def structure_constants(self) -> list[list[list]]:
        """table[i][j] = coefficient vector of basis_i * basis_j."""
        f = self.field
        table = []
        for wi in BASIS:
            row = []
            for wj in BASIS:
                v = [f.zero] * 8
                for w, x in self.reduce_word(wi + wj).items():
                    v[INDEX[w]] = x
                row.append(v)
            table.append(row)
        return table

    def mul(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        f = self.field
        t = self.structure_constants
        out = [f.zero] * 8
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if not y:
                    continue
                xy = x * y
                for k, z in enumerate(t[i][j]):
                    if z:
                        out[k] = out[k] + xy * z
        return AlgebraElement(self, out)

    @cached_property
    def mult_matrix(self) -> Matrix:
        """The multiplication map A (x) A -> A as an 8 x 64 matrix."""
        t = self.structure_constants
        cols = [t[i][j] for i in range(8) for j in range(8)]
        return Matrix.from_columns(cols, self.field)

    def lmul(self, a: AlgebraElement) -> Matrix:
        return Matrix.from_columns([(a * b).coeffs for b in self.basis()], self.field)

    def rmul(self, a: AlgebraElement) -> Matrix:
        return Matrix.from_columns([(b * a).coeffs for b in self.basis()], self.field)

    def operator(self, fn: Callable[[AlgebraElement], AlgebraElement]) -> Matrix:
        return Matrix.from_columns([fn(b).coeffs for b in self.basis()], self.field)

    def apply(self, m: Matrix, a: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self, m.apply(a.coeffs))

    # U_q-action
    def _gen_image(self, g: str, i: int) -> AlgebraElement:
        return self.from_vector(self.V.action(g).column(i))

    @cached_property
    def _actions(self) -> dict:
        f = self.field
        acts = {}
        for g in ("E", "F", "K", "k"):
            cols: dict[tuple, AlgebraElement] = {}
            for w in sorted(BASIS, key=len):
                if not w:
                    cols[w] = self.one() * (0 if g in "EF" else 1)
                    continue
                head, rest = w[0], w[1:]
                v = self.gen(head)
                r = self.basis_element(INDEX[rest])
                kr = r * f.q_power(sum(GENERATOR_WEIGHTS[x] for x in rest))
                if g == "E":
                    cols[w] = self._gen_image("E", head) * kr + v * cols[rest]
                elif g == "F":
                    cols[w] = self._gen_image("F", head) * r + self._gen_image("k", head) * cols[rest]
                else:
                    cols[w] = self._gen_image(g, head) * cols[rest]
            acts[g] = Matrix.from_columns([cols[w].coeffs for w in BASIS], f)
        return acts

    def action(self, g: str) -> Matrix:
        """Matrix of the generator g in {E, F, K, k} on the algebra."""
        return self._actions["k" if g in ("Kinv", "K^-1") else g]

    def action_word(self, word) -> Matrix:
        out = Matrix.identity(8, self.field)
        for g in word:
            out = out @ self.action(g)
        return out

    def lie(self, x) -> Matrix:
        """L_x for a generator name or for X/Z/Y, or an (x, z, y) coefficient triple."""
        f = self.field
        if isinstance(x, str):
            if x in ("E", "F", "K", "k", "Kinv"):
                return self.action(x)
            x = {"X": (1, 0, 0), "Z": (0, 1, 0), "Y": (0, 0, 1), "v2": (1, 0, 0), "v0": (0, 1, 0), "vm2": (0, 0, 1)}[x]
        cx, cz, cy = (f(t) for t in getattr(x, "coefficients", lambda: x)())
        E, F, K = self.action("E"), self.action("F"), self.action("K")
        LX = E
        LZ = (E @ F).scale(f.q_power(-2)) - F @ E
        LY = K @ F
        return LX.scale(cx) + LZ.scale(cz) + LY.scale(cy)

    @cached_property
    def module(self) -> ModuleSpec:
        f = self.field
        weights = [sum(GENERATOR_WEIGHTS[i] for i in w) for w in BASIS]
        return ModuleSpec(
            self.short, list(LABELS), weights, self.action("E"), self.action("F"), self.action("K"), self.action("k"), f
        )

    @staticmethod
    def degrees() -> list[int]:
        return [len(w) for w in BASIS]

    @staticmethod
    def parities() -> list[int]:
        return [len(w) % 2 for w in BASIS]

    def render(self, a: AlgebraElement) -> str:
        order = sorted(range(8), key=lambda n: (-len(BASIS[n]), n))
        parts = []
        for n in order:
            x = a.coeffs[n]
            if not x:
                continue
            parts.append(_term(x, LABELS[n]))
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _term(x, label: str) -> str:
    s = str(x)
    if label == "1":
        return s if _simple(s) or s.startswith("(") else f"({s})"
    if s == "1":
        return label
    if s == "-1":
        return f"-{label}"
    if _simple(s):
        return f"{s}*{label}"
    return f"({s})*{label}"


def _simple(s: str) -> bool:
    # a single signed product/quotient of factors, safe to juxtapose with '*'
    body = s[1:] if s.startswith("-") else s
    depth = 0
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-":
            return False
    return True
