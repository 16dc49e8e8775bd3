"""The quantum exterior algebra of V2pi."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .algebra import BASIS, INDEX, AlgebraElement, FilteredAlgebra
from .braiding import wedge_relation_ideal
from .linalg import Matrix, kernel, rank, solve
from .scalar import SYMBOLIC

__all__ = [
    "ExteriorAlgebra",
    "exterior",
    "TableMismatch",
    "NotADifferential",
    "Cohomology",
    "cohomology",
    "OperatorForm",
]


class TableMismatch(ArithmeticError):
    pass


class NotADifferential(ArithmeticError):
    pass


def ext_rules(field) -> dict:
    q = field.q
    qm2 = field.q_power(-2)
    return {
        (0, 0): [],
        (2, 2): [],
        (1, 0): [((0, 1), -qm2)],
        (2, 1): [((1, 2), -qm2)],
        (1, 1): [((0, 2), (1 - q**4) / q**3)],
        (2, 0): [((0, 2), -field.one)],
    }


@dataclass
class OperatorForm:
    """Coefficients (a, b, e) with d = a v-2 L_X + b v0 L_Z + e v2 L_Y."""

    solved: tuple
    displayed: tuple
    agrees: tuple


class ExteriorAlgebra(FilteredAlgebra):
    short = "Ext"
    name = "quantum exterior algebra"

    def __init__(self, field=SYMBOLIC):
        super().__init__(field, ext_rules(field))

    def from_braiding(self) -> list[list]:
        """Degree-2 products v_i v_j recomputed as cosets of V(x)V / im(1 + sigma_tilde).

        Returns the 9 coefficient vectors on (v2v0, v2v-2, v0v-2) and raises
        TableMismatch if any differs from the rewriting table.
        """
        f = self.field
        ideal = wedge_relation_ideal(self.V)
        chosen = [0 * 3 + 1, 0 * 3 + 2, 1 * 3 + 2]
        cols = []
        for k in chosen:
            e = [f.zero] * 9
            e[k] = f.one
            cols.append(e)
        A = Matrix.from_columns(cols + ideal, f)
        if rank(A) != 9:
            raise TableMismatch("chosen cosets do not complement the relation ideal")
        out = []
        for i in range(3):
            for j in range(3):
                e = [f.zero] * 9
                e[i * 3 + j] = f.one
                x = solve(A, e)[:3]
                table = (self.gen(i) * self.gen(j)).coeffs
                expect = [table[INDEX[(0, 1)]], table[INDEX[(0, 2)]], table[INDEX[(1, 2)]]]
                if x != expect:
                    raise TableMismatch(f"v{i} v{j}: braiding gives {x}, relations give {expect}")
                out.append(x)
        return out

    # differential
    def d_generator(self, i: int) -> AlgebraElement:
        f = self.field
        q, c = f.q, f.c
        v2, v0, vm2 = self.gens()
        return [
            -(v2 * v0) / c,
            (v2 * vm2) * ((1 + q**2) / (q * c)),
            -(v0 * vm2) / c,
        ][i]

    @cached_property
    def d(self) -> Matrix:
        """d on the monomial basis via d(v m) = dv m - v dm."""
        cols: dict[tuple, AlgebraElement] = {}
        for w in sorted(BASIS, key=len):
            if not w:
                cols[w] = self.zero()
                continue
            head, rest = w[0], w[1:]
            r = self.basis_element(INDEX[rest])
            cols[w] = self.d_generator(head) * r - self.gen(head) * cols[rest]
        return Matrix.from_columns([cols[w].coeffs for w in BASIS], self.field)

    def d_apply(self, a: AlgebraElement) -> AlgebraElement:
        return self.apply(self.d, a)

    def operator_form(self) -> OperatorForm:
        f = self.field
        q, c = f.q, f.c
        v2, v0, vm2 = self.gens()
        parts = [
            self.lmul(vm2) @ self.lie("X"),
            self.lmul(v0) @ self.lie("Z"),
            self.lmul(v2) @ self.lie("Y"),
        ]
        D = self.d
        rows = [[p.data[i][j] for p in parts] for i in range(8) for j in range(8)]
        rhs = [D.data[i][j] for i in range(8) for j in range(8)]
        sol = tuple(solve(Matrix(rows, f), rhs))
        pref = q**2 / (1 + q**4)
        displayed = (pref / c, pref * q**3 / ((1 + q**2) * c), pref * q**2 / q**2)
        return OperatorForm(sol, displayed, tuple(a == b for a, b in zip(sol, displayed)))

    # contractions
    @cached_property
    def contraction_table(self) -> list[Matrix]:
        """iota_{v2}, iota_{v0}, iota_{v-2} on the monomial basis."""
        f = self.field
        q, c = f.q, f.c
        v2, v0, vm2 = self.gens()
        one = self.one()
        zero = self.zero()
        qm2, qm3 = f.q_power(-2), f.q_power(-3)
        # columns: 1, v2, v0, v-2, v2v0, v2v-2, v0v-2, v2v0v-2
        table = [
            [zero, zero, zero, one * c, zero, -c * v2, -c * v0, c * (v2 * v0)],
            [
                zero,
                zero,
                one * (qm3 * (1 + q**2) * c),
                zero,
                -((1 + q**2) / q**3) * c * v2,
                ((1 - q**2) / q**2) * c * v0,
                ((1 + q**2) / q) * c * vm2,
                -((1 + q**2) / q) * c * (v2 * vm2),
            ],
            [zero, one * (qm2 * c), zero, zero, c * v0, qm2 * c * vm2, zero, c * (v0 * vm2)],
        ]
        return [Matrix.from_columns([e.coeffs for e in col], f) for col in table]

    def iota(self, x) -> Matrix:
        """Contraction by x: a generator index, a basis word, or an element.

        Monomials contract by composition, iota_{x1 x2 ...} = iota_{x1} iota_{x2} ...
        """
        f = self.field
        if isinstance(x, int):
            return self.contraction_table[x]
        if isinstance(x, tuple):
            out = Matrix.identity(8, f)
            for i in x:
                out = out @ self.contraction_table[i]
            return out
        total = Matrix.zeros(8, 8, f)
        for w, coef in zip(BASIS, x.coeffs):
            if coef:
                total = total + self.iota(w).scale(coef)
        return total

    def contract(self, x, a: AlgebraElement) -> AlgebraElement:
        return self.apply(self.iota(x), a)


def exterior(field=SYMBOLIC) -> ExteriorAlgebra:
    """The shared instance over ``field``."""
    return _exterior(field)


@lru_cache(maxsize=None)
def _exterior(field) -> ExteriorAlgebra:
    return ExteriorAlgebra(field)


@dataclass
class Cohomology:
    dims: dict  # grade -> dim H
    kernel_dims: dict
    image_dims: dict
    representatives: dict  # grade -> list of vectors


def cohomology(D: Matrix, grades, modulus: int | None = None) -> Cohomology:
    """Cohomology of D, which must raise grade by one (mod ``modulus`` if given)."""
    f = D.field
    if not (D @ D).is_zero():
        raise NotADifferential("D^2 != 0")
    n = D.cols
    norm = (lambda g: g % modulus) if modulus else (lambda g: g)
    levels = sorted({norm(g) for g in grades})
    idx = {g: [i for i in range(n) if norm(grades[i]) == g] for g in levels}
    for j in range(n):
        for i in range(n):
            if D.data[i][j] and norm(grades[i]) != norm(grades[j] + 1):
                raise ValueError("D does not raise the grade by one")
    dims, kdims, idims, reps = {}, {}, {}, {}
    for g in levels:
        src = idx[g]
        block = D.submatrix(range(n), src)
        ker = kernel(block)
        ker_full = []
        for v in ker:
            full = [f.zero] * n
            for i, x in zip(src, v):
                full[i] = x
            ker_full.append(full)
        prev = norm(g - 1)
        image = [D.column(j) for j in idx.get(prev, [])] if prev in idx else []
        image = [v for v in image if any(v)]
        im_rank = rank(Matrix.from_columns(image, f, rows=n)) if image else 0
        kdims[g], idims[g] = len(ker_full), im_rank
        dims[g] = len(ker_full) - im_rank
        # representatives: kernel vectors extending a basis of the image
        chosen = []
        current = im_rank
        basis = list(image)
        for v in ker_full:
            trial = basis + [v]
            r = rank(Matrix.from_columns(trial, f))
            if r > current:
                chosen.append(v)
                basis = trial
                current = r
        reps[g] = chosen
    return Cohomology(dims, kdims, idims, reps)
