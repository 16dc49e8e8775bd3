import itertools

import pytest

from qcartan.algebra import BASIS
from qcartan.braiding import sigma_tilde
from qcartan.linalg import Matrix, rank
from qcartan.qcl import DegreeExceeded, RouteDisagreement, clifford
from qcartan.qext import cohomology, exterior
from qcartan.repn import invariants, tensor
from qcartan.scalar import SYMBOLIC, PointField, specialize
from qcartan.uq import UqWord, adjoint_matrix, counit

f = SYMBOLIC
q, c = f.q, f.c
cl = clifford()
ext = exterior()
v2, v0, vm2 = cl.gens()
one = cl.one()
top = v2 * v0 * vm2
E3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def ad(i):
    aE, aF, aK = (adjoint_matrix(g) for g in "EFK")
    return [aE, (aE @ aF).scale(1 / q**2) - aF @ aE, aK @ aF][i]


def beta_half(x):
    """beta rescaled by 1/2: the normalisation that makes the displayed constants hold."""
    return cl.beta(x) * (f.one / 2)


def test_relations():
    assert (v2 * v2).is_zero()
    assert (vm2 * vm2).is_zero()
    assert v0 * v2 == -(v2 * v0) / q**2
    assert vm2 * v0 == -(v0 * vm2) / q**2
    assert v0 * v0 == (1 - q**4) / q**3 * (v2 * vm2) + one * ((q**2 + 1) / q * c)
    assert vm2 * v2 == -(v2 * vm2) + one * ((q**2 + 1) / q**2 * c)


def test_relations_from_braiding():
    assert all(r.is_zero() for *_, r in cl.relations_from_braiding())


def test_associativity():
    for a, b, x in itertools.product(cl.basis(), repeat=3):
        assert (a * b) * x == a * (b * x)


def test_form_symmetric_and_invariant():
    form = cl.form_vector()
    assert form @ sigma_tilde(cl.V, cl.V).matrix == form
    VV = tensor(cl.V, cl.V)
    for g in ("E", "F", "K", "k"):
        assert form @ VV.action(g) == Matrix.identity(1).scale(counit(g)) @ form


def test_module_algebra_on_generators():
    # E(ab) = E(a) K(b) + a E(b) for generator pairs
    E, K = cl.action("E"), cl.action("K")
    for a, b in itertools.product(cl.gens(), repeat=2):
        assert cl.apply(E, a * b) == cl.apply(E, a) * cl.apply(K, b) + a * cl.apply(E, b)


def test_alpha_relations():
    E, F, K, k = (cl.alpha_generator(g) for g in "EFKk")
    assert K * k == one and k * K == one
    assert K * E == q**2 * (E * K)
    assert K * F == (F * K) / q**2
    assert E * F - F * E == (K - k) / (q - 1 / q)


def test_alpha_displays():
    aZ = cl.alpha(UqWord({("E", "F"): 1 / q**2, ("F", "E"): -1}))
    aY = cl.alpha(UqWord({("K", "F"): 1}))
    assert aZ == (v2 * vm2) / c - one
    assert aY == -(q / ((1 + q**2) * c)) * (v0 * vm2)


def test_alpha_is_multiplicative_on_words():
    for a, b in itertools.product("EFKk", repeat=2):
        w = UqWord.word(a, b)
        assert cl.alpha(w) == cl.alpha_generator(a) * cl.alpha_generator(b)


@pytest.mark.parametrize("g", ["E", "F", "K", "k"])
def test_lie_by_conjugation(g):
    assert cl.lie_conjugation(g) == cl.action(g)
    assert set(cl.lie_routes(g)) == {"action", "conjugation"}


@pytest.mark.parametrize("x", E3)
def test_lie_by_conjugation_slq(x):
    assert cl.lie_conjugation_slq(x) == cl.lie(x)


@pytest.mark.parametrize("x", E3)
def test_bracket_route_is_twice_the_lie_derivative(x):
    assert cl.lie_bracket_route(x) == cl.lie(x).scale(2)
    with pytest.raises(RouteDisagreement):
        cl.lie_routes(x)


def test_beta_morphism_up_to_two():
    for i, j in itertools.product(range(3), repeat=2):
        lhs = cl.bracket(cl.beta(E3[i]), cl.beta(E3[j]))
        assert lhs == cl.beta(ad(i).column(j)) * 2


def test_d_on_generators_is_beta():
    for i, x in enumerate(E3):
        assert cl.d_apply(cl.gen(i)) == cl.beta(x)


def test_iota_gamma_is_half_beta():
    g = cl.gamma()
    for i, x in enumerate(E3):
        assert cl.contract(i, g) == cl.beta(x) * (f.one / 2)


def test_halved_beta_satisfies_all_displays():
    # with beta/2: d x = 2 beta(x), iota_x gamma = beta(x), [beta(x), -] = L_x,
    # [beta(x), beta(y)] = beta(ad_x y) and beta(X) = -v2 v0 / (2c)
    g = cl.gamma()
    assert beta_half(E3[0]) == -(v2 * v0) / (2 * c)
    for i, x in enumerate(E3):
        assert cl.d_apply(cl.gen(i)) == beta_half(x) * 2
        assert cl.contract(i, g) == beta_half(x)
        assert cl.bracket_operator(beta_half(x)) == cl.lie(x)
    for i, j in itertools.product(range(3), repeat=2):
        assert cl.bracket(beta_half(E3[i]), beta_half(E3[j])) == beta_half(ad(i).column(j))


def test_ad_is_skew_through_sigma_tilde():
    st = sigma_tilde(cl.V, cl.V)
    for i, j in itertools.product(range(3), repeat=2):
        total = [f.zero] * 3
        for a, b, x in st.terms(i, j):
            total = [t + x * v for t, v in zip(total, ad(a).column(b))]
        assert total == [-v for v in ad(i).column(j)]


def test_bracket_skew_and_filtration():
    B, S = cl.bracket_matrix, cl.sigma_tilde_cl.matrix
    assert (B + B @ S @ cl._sign_matrix()).is_zero()
    for i, wi in enumerate(BASIS):
        for j, wj in enumerate(BASIS):
            br = cl.bracket(cl.basis_element(i), cl.basis_element(j))
            assert br.degree() <= max(len(wi) + len(wj) - 1, 0)


def test_gamma():
    g = cl.gamma()
    assert g * g == one * ((1 + q**2) / (4 * c * q))
    for h in "EFKk":
        assert cl.apply(cl.action(h), g) == g * counit(h)


def test_differential():
    D = cl.d
    assert (D @ D).is_zero()
    assert cl.bracket_operator(cl.gamma()) == D
    assert cl.d_apply(v2) == -(v2 * v0) / c
    assert cl.d_apply(vm2) == -(v0 * vm2) / c
    for g in ("E", "F", "K", "k"):
        assert cl.action(g) @ D == D @ cl.action(g)


@pytest.mark.parametrize("i, name", [(0, "v2"), (1, "v0"), (2, "vm2")])
def test_cartan_formula(i, name):
    io = cl.iota(i)
    assert cl.lie(name) == io @ cl.d + cl.d @ io


def test_cartan_instance():
    assert cl.apply(cl.lie("v2"), vm2) == v0


def test_contraction_is_the_form_on_generators():
    for i, j in itertools.product(range(3), repeat=2):
        assert cl.contract(i, cl.gen(j)) == one * cl.form[i, j]


def test_contraction_values():
    a = cl.contract(0, cl.contract(1, top))
    b = cl.contract(1, cl.contract(0, top))
    assert a == (1 + q**2) / q * c**2 * v2
    assert cl.contract(0, top) == c * (v2 * v0)
    assert b == -(1 + q**2) / q**3 * c**2 * v2
    assert b == -a / q**2


def test_contractions_anticommute():
    st = sigma_tilde(cl.V, cl.V)
    for x, y in itertools.product(range(3), repeat=2):
        total = cl.iota(x) @ cl.iota(y)
        for a, b, coef in st.terms(x, y):
            total = total + (cl.iota(a) @ cl.iota(b)).scale(coef)
        assert total.is_zero()


def test_duality():
    for x, y, z in itertools.product(range(3), repeat=3):
        lhs = cl.apply(cl.iota(x) @ cl.iota(y) @ cl.d, cl.gen(z)).scalar_part()
        rhs = sum((a * cl.form[k, z] for k, a in enumerate(ad(x).column(y))), f.zero)
        assert lhs == rhs


def test_associated_graded():
    for i, wi in enumerate(BASIS):
        for j, wj in enumerate(BASIS):
            k = len(wi) + len(wj)
            if k <= 3:
                prod = cl.basis_element(i) * cl.basis_element(j)
                assert cl.symbol(prod, k) == ext.basis_element(i) * ext.basis_element(j)
    for i in range(3):
        for j, w in enumerate(BASIS):
            if w:
                got = cl.symbol(cl.contract(i, cl.basis_element(j)), len(w) - 1)
                assert got == ext.contract(i, ext.basis_element(j))


def test_symbols():
    e2, e0, em2 = ext.gens()
    assert cl.symbol(vm2 * v2, 2) == -(e2 * em2)
    assert cl.symbol(cl.gamma(), 3) == -(e2 * e0 * em2) / (2 * c**2)
    with pytest.raises(DegreeExceeded):
        cl.symbol(top, 2)


def test_leibniz_counterexamples():
    expected = {
        "sigma": -(c * (q**4 - 1) / q**2) * v0,
        "sigma_inv": cl.zero(),
        "sigma_tilde": -(c * (q**4 - 1) / (1 + q**4)) * v0,
    }
    true = (c * (1 - q**2) / q**2) * v0
    cases = cl.leibniz_counterexamples()
    assert [x.name for x in cases] == ["sigma", "sigma_inv", "sigma_tilde"]
    for case in cases:
        assert case.candidate == expected[case.name]
        assert case.true_value == true
        assert not case.difference.is_zero()


def test_invariants():
    inv = invariants(cl.module)
    assert len(inv) == 2
    assert rank(Matrix.from_columns(inv + [one.coeffs, cl.gamma().coeffs])) == 2


def test_cohomology_vanishes():
    H = cohomology(cl.d, cl.parities(), 2)
    assert sum(H.dims.values()) == 0
    assert sum(H.kernel_dims.values()) == 4
    assert sum(H.image_dims.values()) == 4


def test_rho_decomposition():
    r = cl.rho_decomposition()
    assert r.image_alpha_dim == 4
    assert r.multiplication_rank == 8
    assert r.contractions_in_image == [True, True, True]
    assert r.gamma_square == (1 + q**2) / (4 * c * q)
    assert r.lambda_beta == [f.one / 2] * 3
    assert r.lambda_dual == [f.one] * 3


def test_classical_limit():
    at1 = lambda e: [specialize(x, 1, 1) for x in e.coeffs]
    for i, j in itertools.product(range(3), repeat=2):
        anti = cl.gen(i) * cl.gen(j) + cl.gen(j) * cl.gen(i)
        assert at1(anti) == [2 * specialize(cl.form[i, j], 1, 1)] + [0] * 7


def test_point_field_agrees():
    P = PointField(2, 3)
    clp = clifford(P)
    for i, j in itertools.product(range(8), repeat=2):
        sym = cl.basis_element(i) * cl.basis_element(j)
        pt = clp.basis_element(i) * clp.basis_element(j)
        assert [specialize(x, 2, 3) for x in sym.coeffs] == pt.coeffs
