"""Exact dense linear algebra over a coefficient field.

Matrices act on column vectors: column ``j`` of an operator's matrix is the
image of basis vector ``j``.  Products skip zero entries, which is where all
the speed comes from; the operators in this package are mostly sparse.
"""
from __future__ import annotations

from typing import Sequence

from .scalar import SYMBOLIC

__all__ = ["Matrix", "NoSolution", "rref", "kernel", "solve", "rank", "image_basis"]


class NoSolution(ArithmeticError):
    """The linear system is inconsistent."""


class Matrix:
    __slots__ = ("rows", "cols", "data", "field")

    def __init__(self, data: Sequence[Sequence], field=SYMBOLIC, cols: int | None = None):
        self.field = field
        self.data = [[field(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else (cols or 0)
        if any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged matrix")

    @classmethod
    def _raw(cls, data, field, cols=None) -> "Matrix":
        m = cls.__new__(cls)
        m.field = field
        m.data = data
        m.rows = len(data)
        m.cols = len(data[0]) if data else (cols or 0)
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, field=SYMBOLIC) -> "Matrix":
        return cls._raw([[field.zero] * cols for _ in range(rows)], field, cols)

    @classmethod
    def identity(cls, n: int, field=SYMBOLIC) -> "Matrix":
        m = cls.zeros(n, n, field)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    @classmethod
    def diag(cls, entries: Sequence, field=SYMBOLIC) -> "Matrix":
        m = cls.zeros(len(entries), len(entries), field)
        for i, x in enumerate(entries):
            m.data[i][i] = field(x)
        return m

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field=SYMBOLIC, rows: int | None = None) -> "Matrix":
        if not columns:
            return cls._raw([[] for _ in range(rows or 0)], field, 0)
        n = len(columns[0])
        return cls._raw([[field(col[i]) for col in columns] for i in range(n)], field)

    # access
    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> list:
        return [row[j] for row in self.data]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.cols)]

    def copy(self) -> "Matrix":
        return Matrix._raw([row[:] for row in self.data], self.field, self.cols)

    def transpose(self) -> "Matrix":
        return Matrix._raw([list(col) for col in zip(*self.data)] if self.rows else [], self.field, self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    # arithmetic
    def __add__(self, other: "Matrix") -> "Matrix":
        _check_shape(self, other)
        return Matrix._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.field, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        _check_shape(self, other)
        return Matrix._raw([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.field, self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw([[-a for a in r] for r in self.data], self.field, self.cols)

    def scale(self, s) -> "Matrix":
        s = self.field(s)
        return Matrix._raw([[s * a if a else a for a in r] for r in self.data], self.field, self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.field.zero
        other_rows = [[(j, x) for j, x in enumerate(row) if x] for row in other.data]
        out = []
        for row in self.data:
            acc = {}
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in other_rows[k]:
                    t = a * b
                    acc[j] = acc[j] + t if j in acc else t
            new = [zero] * other.cols
            for j, v in acc.items():
                new[j] = v
            out.append(new)
        return Matrix._raw(out, self.field, other.cols)

    def apply(self, vec: Sequence) -> list:
        zero = self.field.zero
        out = []
        nz = [(k, x) for k, x in enumerate(vec) if x]
        for row in self.data:
            acc = zero
            for k, x in nz:
                a = row[k]
                if a:
                    acc = acc + a * x
            out.append(acc)
        return out

    def kron(self, other: "Matrix") -> "Matrix":
        zero = self.field.zero
        rows = []
        for r in self.data:
            for s in other.data:
                rows.append([a * b if a and b else zero for a in r for b in s])
        return Matrix._raw(rows, self.field, self.cols * other.cols)

    def power(self, n: int) -> "Matrix":
        out = Matrix.identity(self.rows, self.field)
        for _ in range(n):
            out = out @ self
        return out

    def is_zero(self) -> bool:
        return not any(x for row in self.data for x in row)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        one = self.field.one
        return all((x == one) if i == j else not x for i, row in enumerate(self.data) for j, x in enumerate(row))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.data, other.data) for a, b in zip(r, s)
        )

    __hash__ = None

    def map(self, fn) -> "Matrix":
        return Matrix._raw([[fn(x) for x in row] for row in self.data], self.field, self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw([[self.data[i][j] for j in cols] for i in rows], self.field, len(cols))

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = Matrix._raw([row[:] + e for row, e in zip(self.data, Matrix.identity(n, self.field).data)], self.field)
        red, piv = rref(aug)
        if piv[:n] != list(range(n)):
            raise ArithmeticError("matrix is singular")
        return red.submatrix(range(n), range(n, 2 * n))

    def render(self) -> str:
        strs = [[str(x) for x in row] for row in self.data]
        width = [max((len(strs[i][j]) for i in range(self.rows)), default=1) for j in range(self.cols)]
        return "\n".join("[ " + "  ".join(s.rjust(w) for s, w in zip(row, width)) + " ]" for row in strs)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


def _check_shape(a: Matrix, b: Matrix):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = m.copy()
    data = a.data
    pivots = []
    r = 0
    for col in range(a.cols):
        if r == a.rows:
            break
        # prefer the pivot with the smallest representation; keeps fractions small
        best = None
        for i in range(r, a.rows):
            x = data[i][col]
            if x:
                size = _size(x)
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            continue
        i = best[1]
        data[r], data[i] = data[i], data[r]
        p = data[r][col]
        if p != a.field.one:
            inv = a.field.one / p
            data[r] = [x * inv if x else x for x in data[r]]
        prow = [(j, x) for j, x in enumerate(data[r]) if x]
        for i in range(a.rows):
            if i == r:
                continue
            f = data[i][col]
            if not f:
                continue
            row = data[i]
            for j, x in prow:
                row[j] = row[j] - f * x
        pivots.append(col)
        r += 1
    return a, pivots


def _size(x) -> int:
    num = getattr(x, "num", None)
    if num is not None:
        return len(num.to_dict()) + len(x.den.to_dict())
    return 0


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel(m: Matrix) -> list[list]:
    """Basis of the null space: one vector per free column."""
    red, piv = rref(m)
    f = m.field
    pivset = set(piv)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [f.zero] * m.cols
        v[free] = f.one
        for r, pc in enumerate(piv):
            x = red.data[r][free]
            if x:
                v[pc] = -x
        basis.append(v)
    return basis


def image_basis(m: Matrix) -> list[list]:
    """Columns of ``m`` at the pivot positions: a basis of its column space."""
    _, piv = rref(m)
    return [m.column(j) for j in piv]


def solve(m: Matrix, b: Sequence) -> list:
    """One solution x of m x = b; raises NoSolution when inconsistent."""
    f = m.field
    aug = Matrix._raw([row[:] + [f(x)] for row, x in zip(m.data, b)], f, m.cols + 1)
    red, piv = rref(aug)
    if piv and piv[-1] == m.cols:
        raise NoSolution("inconsistent system")
    x = [f.zero] * m.cols
    for r, pc in enumerate(piv):
        x[pc] = red.data[r][m.cols]
    return x


def span_rank(vectors: Sequence[Sequence], field=SYMBOLIC) -> int:
    if not vectors:
        return 0
    return rank(Matrix.from_columns(vectors, field))
