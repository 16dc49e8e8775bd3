import itertools

import pytest

from qcartan.braiding import (
    CONVENTION,
    CONVENTIONS,
    ConventionMismatch,
    equivariance_failures,
    flip,
    r_matrix,
    select_convention,
    sigma,
    sigma_inv,
    sigma_tilde,
    wedge_relation_ideal,
)
from qcartan.linalg import Matrix
from qcartan.qcl import clifford
from qcartan.qext import exterior
from qcartan.repn import decompose, tensor, trivial, v2pi
from qcartan.scalar import SYMBOLIC, PointField, specialize

f = SYMBOLIC
q = f.q
V = v2pi()


def basis_vec(k, n=9):
    v = [f.zero] * n
    v[k] = f.one
    return v


def vec(entries, n=9):
    v = [f.zero] * n
    for k, x in entries.items():
        v[k] = f(x)
    return v


# index of a (x) b is 3a + b, with 0 = v2, 1 = v0, 2 = v-2
V2_V0, V0_V2 = 1, 3

SIGMA_V0_V2 = vec({V2_V0: 1, V0_V2: (q**4 - 1) / q**2})
SIGMA_INV_V0_V2 = vec({V2_V0: 1})
SIGMA_TILDE_V0_V2 = vec({V2_V0: 2 * q**2 / (1 + q**4), V0_V2: (q**4 - 1) / (1 + q**4)})


def test_anchor_sigma():
    assert sigma(V, V).apply_basis(1, 0) == SIGMA_V0_V2


def test_anchor_sigma_inverse():
    assert sigma_inv(V, V).apply_basis(1, 0) == SIGMA_INV_V0_V2


def test_anchor_sigma_tilde():
    assert sigma_tilde(V, V).apply_basis(1, 0) == SIGMA_TILDE_V0_V2


def test_wedge_relation_display():
    x = basis_vec(V2_V0)
    lhs = [a + b for a, b in zip(x, sigma_tilde(V, V).apply(x))]
    assert lhs == vec({V0_V2: 2 * q**2 / (1 + q**4), V2_V0: 2 / (1 + q**4)})


def test_convention_selection_is_unique():
    anchors = [("sigma", 1, 0, SIGMA_V0_V2), ("sigma_inv", 1, 0, SIGMA_INV_V0_V2)]
    assert select_convention(V, anchors) == CONVENTION
    with pytest.raises(ConventionMismatch):
        select_convention(V, [("sigma", 1, 0, basis_vec(0))])


def test_only_some_conventions_are_equivariant():
    good = [c for c in CONVENTIONS if not equivariance_failures(flip(V, V) @ r_matrix(V, V, c), V, V)]
    assert CONVENTION in good
    assert len(good) < len(CONVENTIONS)


def test_sigma_inverse():
    assert (sigma_inv(V, V).matrix @ sigma(V, V).matrix).is_identity()
    assert (sigma(V, V).matrix @ sigma_inv(V, V).matrix).is_identity()


def module_pairs():
    cl, ext = clifford(), exterior()
    C, W = cl.module, ext.module
    return {"V,V": (V, V), "V,Cl": (V, C), "Cl,V": (C, V), "V,Ext": (V, W), "V,V0": (V, trivial())}


@pytest.mark.parametrize("name", ["V,V", "V,Cl", "Cl,V", "V,Ext", "V,V0"])
def test_equivariance(name):
    M, N = module_pairs()[name]
    for op in (sigma, sigma_tilde):
        assert equivariance_failures(op(M, N).matrix, M, N) == []
    assert equivariance_failures(sigma_inv(M, N).matrix, M, N) == []


@pytest.mark.parametrize("name", ["V,V", "V,Cl", "Cl,V", "V,Ext", "V,V0"])
def test_sigma_tilde_involutive(name):
    M, N = module_pairs()[name]
    assert (sigma_tilde(N, M).matrix @ sigma_tilde(M, N).matrix).is_identity()


def test_sigma_tilde_involutive_on_cl_cl():
    C = clifford().module
    S = sigma_tilde(C, C).matrix
    assert S.shape == (64, 64)
    assert (S @ S).is_identity()


def test_sigma_is_not_involutive():
    s = sigma(V, V).matrix
    assert not (s @ s).is_identity()


def test_yang_baxter():
    s = sigma(V, V).matrix
    I = Matrix.identity(3)
    s12, s23 = s.kron(I), I.kron(s)
    assert s12 @ s23 @ s12 == s23 @ s12 @ s23


def test_hexagon_tensor_naturality():
    # sigma_{V, V (x) V} = (1 (x) sigma)(sigma (x) 1)
    VV = tensor(V, V)
    I = Matrix.identity(3)
    s = sigma(V, V).matrix
    assert sigma(V, VV).matrix == I.kron(s) @ s.kron(I)


def test_eigenvalues_on_summands():
    st = sigma_tilde(V, V).matrix
    for s in decompose(tensor(V, V)).summands:
        sign = -1 if s.highest_weight == 2 else 1
        for v in s.basis:
            assert st.apply(v) == [sign * x for x in v]


def test_wedge_ideal_dimension():
    assert len(wedge_relation_ideal(V)) == 6


def test_terms_convention():
    # terms(i, j) lists coef * n_a (x) m_b
    terms = sigma_inv(V, V).terms(1, 0)
    assert terms == [(0, 1, f.one)]


@pytest.mark.parametrize("name", ["V,V", "V,Cl", "V,Ext"])
def test_flip_at_q_one(name):
    M, N = module_pairs()[name]
    P = flip(M, N)
    for op in (sigma, sigma_tilde):
        m = op(M, N).matrix
        assert all(specialize(m[i, j], 1, 1) == P[i, j] for i in range(m.rows) for j in range(m.cols))


def test_point_field_agrees_with_symbolic():
    P = PointField(2, 1)
    Vp = v2pi(P)
    sym = sigma_tilde(V, V).matrix
    pt = sigma_tilde(Vp, Vp).matrix
    for i, j in itertools.product(range(9), repeat=2):
        assert specialize(sym[i, j], 2, 1) == pt[i, j]
