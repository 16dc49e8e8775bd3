from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qcartan.linalg import Matrix, NoSolution, image_basis, kernel, rank, rref, solve, span_rank
from qcartan.scalar import SYMBOLIC, PointField

F = PointField(Fraction(9, 4), Fraction(1))
q, c = SYMBOLIC.q, SYMBOLIC.c

entries = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def matrices(draw, max_dim=5):
    r = draw(st.integers(1, max_dim))
    k = draw(st.integers(1, max_dim))
    rows = [[draw(entries) for _ in range(k)] for _ in range(r)]
    return Matrix(rows, F)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    ker = kernel(m)
    assert rank(m) + len(ker) == m.cols
    for v in ker:
        assert all(x == 0 for x in m.apply(v))


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rref_is_reduced(m):
    red, piv = rref(m)
    for r, pc in enumerate(piv):
        assert red[r, pc] == 1
        assert all(red[i, pc] == 0 for i in range(m.rows) if i != r)
    assert piv == sorted(piv)
    assert all(all(x == 0 for x in red.data[r]) for r in range(len(piv), m.rows))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(entries, min_size=5, max_size=5))
def test_solve_consistent_system(m, x):
    b = m.apply(x[: m.cols])
    y = solve(m, b)
    assert m.apply(y) == b


@settings(max_examples=60, deadline=None)
@given(matrices(4))
def test_inverse(m):
    if m.rows != m.cols:
        return
    if rank(m) < m.cols:
        with pytest.raises(ArithmeticError):
            m.inverse()
        return
    assert (m @ m.inverse()).is_identity()
    assert (m.inverse() @ m).is_identity()


@settings(max_examples=60, deadline=None)
@given(matrices(4))
def test_image_basis_spans_columns(m):
    basis = image_basis(m)
    assert len(basis) == rank(m)
    assert span_rank(basis + m.columns(), F) == len(basis)


def test_inconsistent_system():
    m = Matrix([[1, 1], [1, 1]], F)
    with pytest.raises(NoSolution):
        solve(m, [1, 2])


def test_symbolic_kernel():
    m = Matrix([[q, c], [q**2, q * c]])
    assert rank(m) == 1
    (v,) = kernel(m)
    assert m.apply(v) == [0, 0]
    assert v == [-c / q, 1]


def test_symbolic_inverse():
    m = Matrix([[1, q], [c, 1]])
    inv = m.inverse()
    assert (m @ inv).is_identity()
    assert inv[0, 0] == 1 / (1 - q * c)


def test_kron_and_power():
    a = Matrix([[1, 2], [3, 4]], F)
    i = Matrix.identity(2, F)
    assert a.kron(i).shape == (4, 4)
    assert a.kron(i)[2, 0] == 3
    assert a.power(2) == a @ a
    assert a.power(0).is_identity()


def test_shape_errors():
    with pytest.raises(ValueError):
        Matrix([[1, 2], [3]], F)
    with pytest.raises(ValueError):
        Matrix.identity(2, F) @ Matrix.identity(3, F)
    with pytest.raises(ValueError):
        Matrix.identity(2, F) + Matrix.identity(3, F)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_is_a_projection(m):
    red, piv = rref(m)
    again, piv2 = rref(red)
    assert again == red
    assert piv2 == piv
