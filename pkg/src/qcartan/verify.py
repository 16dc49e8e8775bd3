"""Registry of identity checks and the report they produce.

Each check is a function of the coefficient field returning
``(passed, lhs, rhs)``.  Quantities whose displayed constants are in doubt
are not checks; they are collected as findings with the solved and the
displayed value side by side.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from typing import Callable

from .algebra import BASIS, INDEX
from .braiding import (
    CONVENTION,
    flip,
    select_convention,
    sigma,
    sigma_inv,
    sigma_tilde,
    wedge_relation_ideal,
    equivariance_failures,
)
from .linalg import Matrix, NoSolution, rank
from .qcl import clifford, _proportionality
from .qext import cohomology, exterior
from .repn import decompose, invariants, tensor, v2pi
from .scalar import SYMBOLIC, PointField, Scalar, q_int, specialize
from .uq import UqWord, adjoint_matrix, antipode_word, coproduct, counit, normalize

__all__ = ["Check", "CheckResult", "Finding", "VerificationReport", "CHECKS", "SUITES", "run", "findings"]

SUITES = ("scalar", "uq", "braiding", "ext", "cl")


@dataclass(frozen=True)
class Check:
    id: str
    suite: str
    anchor: str
    fn: Callable


@dataclass
class CheckResult:
    id: str
    status: str
    lhs: str
    rhs: str
    anchor: str


@dataclass
class Finding:
    id: str
    quantity: str
    solved: str
    displayed: str
    agrees: bool


@dataclass
class VerificationReport:
    suite: str
    checks: list
    timing: dict
    configuration: dict
    findings: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [asdict(c) for c in self.checks],
            "timing": self.timing,
            "configuration": self.configuration,
            "findings": [asdict(f) for f in self.findings],
        }


CHECKS: dict[str, Check] = {}


def check(id: str, anchor: str):
    def deco(fn):
        if id in CHECKS:
            raise ValueError(f"duplicate check id {id}")
        CHECKS[id] = Check(id, id.split(".")[0], anchor, fn)
        return fn

    return deco


# helpers

def _eq(lhs, rhs):
    return lhs == rhs, str(lhs), str(rhs)


def _mat_eq(lhs: Matrix, rhs: Matrix, what: str = ""):
    bad = sum(1 for i in range(lhs.rows) for j in range(lhs.cols) if lhs.data[i][j] != rhs.data[i][j])
    shape = f"{lhs.rows}x{lhs.cols}"
    return bad == 0, f"{what} {shape}: {bad} differing entries".strip(), "0 differing entries"


def _all(results):
    """Combine (ok, lhs, rhs) triples, reporting the first failure."""
    n = 0
    for ok, lhs, rhs in results:
        n += 1
        if not ok:
            return False, lhs, rhs
    return True, f"{n} cases", f"{n} cases"


def _q1():
    return PointField(1, 1)


def _at_one(m: Matrix) -> Matrix:
    """Entrywise specialization of a symbolic matrix at q = c = 1."""
    return Matrix([[specialize(x, 1, 1) for x in row] for row in m.data], _q1())


E3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _ad(field, i):
    """ad of X, Z, Y on sl_q(2) in the basis (X, Z, Y)."""
    aE, aF, aK = (adjoint_matrix(g, field) for g in "EFK")
    return [aE, (aE @ aF).scale(field.q_power(-2)) - aF @ aE, aK @ aF][i]


# scalar

def _random_scalar(rng: random.Random) -> Scalar:
    def poly():
        return {(rng.randint(0, 6), rng.randint(0, 2)): rng.randint(-5, 5) for _ in range(rng.randint(1, 3))}

    num = poly()
    den = poly()
    if not any(den.values()):
        den = {(0, 0): 1}
    return Scalar.from_terms(num, den)


def _random_triples(n=40):
    rng = random.Random(20240)
    return [tuple(_random_scalar(rng) for _ in range(3)) for _ in range(n)]


@check("scalar.field-axioms", "field axioms of Q(u, c)")
def _(f):
    out = []
    for a, b, c in _random_triples():
        out.append(_eq((a + b) + c, a + (b + c)))
        out.append(_eq((a * b) * c, a * (b * c)))
        out.append(_eq(a * (b + c), a * b + a * c))
        out.append(_eq(a * b, b * a))
        out.append(_eq(a - a, Scalar(0)))
        if a:
            out.append(_eq(a * a.inv(), Scalar(1)))
    return _all(out)


@check("scalar.canonical-idempotent", "canonical form is idempotent")
def _(f):
    return _all(_eq(x.canonical().canonical(), x.canonical()) for t in _random_triples() for x in t)


@check("scalar.specialize-homomorphism", "specialization is a ring homomorphism")
def _(f):
    qv, cv = (f.q_value, f.c_value) if not f.symbolic else (Fraction(7, 5), Fraction(1))
    out = []
    for a, b, _c in _random_triples():
        try:
            sa, sb = specialize(a, qv, cv), specialize(b, qv, cv)
            sab, sapb = specialize(a * b, qv, cv), specialize(a + b, qv, cv)
        except ArithmeticError:
            continue
        out.append(_eq(sab, sa * sb))
        out.append(_eq(sapb, sa + sb))
    return _all(out)


@check("scalar.q-integers", "q-integers [n] = (q^n - q^-n)/(q - q^-1)")
def _(f):
    q = f.q
    return _all(_eq(q_int(n, f), (q**n - f.one / q**n) / (q - f.one / q)) for n in range(1, 7))


# uq

def _random_words(n=200, seed=7):
    rng = random.Random(seed)
    return [tuple(rng.choice("EFKk") for _ in range(rng.randint(0, 6))) for _ in range(n)]


@check("uq.confluence", "PBW normal form is independent of association order")
def _(f):
    out = []
    rng = random.Random(11)
    for w in _random_words():
        i = rng.randint(0, len(w))
        j = rng.randint(i, len(w))
        a, b, c = (UqWord({p: 1}, f) for p in (w[:i], w[i:j], w[j:]))
        left = normalize(normalize(a * b) * c)
        right = normalize(a * normalize(b * c))
        out.append((left.terms == right.terms and left.is_normal(), str(left), str(right)))
    return _all(out)


@check("uq.hopf-antipode", "sum S(g_(1)) g_(2) = counit(g) 1")
def _(f):
    out = []
    for g in ("E", "F", "K", "k"):
        total = UqWord({}, f)
        for a, b in coproduct(g, f):
            total = total + antipode_word(a) * b
        out.append(_eq(normalize(total), UqWord.one(f) * counit(g)))
    return _all(out)


@check("uq.adjoint-closure", "ad_g preserves span(X, Z, Y)")
def _(f):
    try:
        mats = [adjoint_matrix(g, f) for g in "EFKk"]
    except ArithmeticError as e:
        return False, str(e), "closed"
    return True, f"{len(mats)} generators closed", "closed"


@check("uq.adjoint-k-inverse", "ad_K ad_K^-1 = id")
def _(f):
    m = adjoint_matrix("K", f) @ adjoint_matrix("k", f)
    return _mat_eq(m, Matrix.identity(3, f))


@check("uq.adjoint-nilpotent", "ad_E^3 = ad_F^3 = 0")
def _(f):
    z = Matrix.zeros(3, 3, f)
    ok1, *_ = _mat_eq(adjoint_matrix("E", f).power(3), z)
    ok2, *_ = _mat_eq(adjoint_matrix("F", f).power(3), z)
    return ok1 and ok2, f"E^3 zero: {ok1}, F^3 zero: {ok2}", "both zero"


@check("uq.adjoint-matrices", "ad on (X, Z, Y) matches the frozen fixtures")
def _(f):
    q = f.q
    z, one = f.zero, f.one
    E = Matrix([[z, -(1 + q**2) / q, z], [z, z, one], [z, z, z]], f)
    F = Matrix([[z, z, z], [-one, z, z], [z, (1 + q**2) / q, z]], f)
    K = Matrix.diag([q**2, one, f.q_power(-2)], f)
    return _all(_mat_eq(adjoint_matrix(g, f), m, g) for g, m in (("E", E), ("F", F), ("K", K)))


@check("uq.module-v2pi", "V2pi satisfies the U_q(sl2) relations")
def _(f):
    bad = v2pi(f).invariant_violations()
    return not bad, ", ".join(bad) or "none violated", "none violated"


@check("uq.module-tensor", "V2pi (x) V2pi satisfies the U_q(sl2) relations")
def _(f):
    V = v2pi(f)
    bad = tensor(V, V).invariant_violations()
    return not bad, ", ".join(bad) or "none violated", "none violated"


@check("uq.decompose-vv", "V2pi (x) V2pi = V4pi + V2pi + V0")
def _(f):
    V = v2pi(f)
    d = decompose(tensor(V, V))
    return _eq(d.highest_weights(), [4, 2, 0])


@check("uq.decompose-roundtrip", "summand bases conjugate the actions to block form")
def _(f):
    V = v2pi(f)
    M = tensor(V, V)
    d = decompose(M)
    B = d.change_of_basis()
    Binv = B.inverse()
    out = []
    for g in ("E", "F", "K"):
        blocked = Binv @ M.action(g) @ B
        off = 0
        for s in d.summands:
            for i in range(M.dim):
                for j in range(off, off + s.dim):
                    if blocked.data[i][j] and not off <= i < off + s.dim:
                        return False, f"{g} leaves summand {s.highest_weight}", "block diagonal"
            off += s.dim
        out.append((True, g, g))
    return _all(out)


# braiding

def _anchor_vectors(f):
    q = f.q
    z, one = f.zero, f.one
    v = lambda entries: [entries.get(k, z) for k in range(9)]
    # index of a (x) b is 3a + b with 0 = v2, 1 = v0, 2 = v-2
    return {
        "sigma": v({1: one, 3: (q**4 - 1) / q**2}),
        "sigma_inv": v({1: one}),
        "sigma_tilde": v({1: 2 * q**2 / (1 + q**4), 3: (q**4 - 1) / (1 + q**4)}),
    }


@check("braiding.anchor-sigma", "sigma(v0 (x) v2) = v2 (x) v0 + q^-2 (q^4 - 1) v0 (x) v2")
def _(f):
    V = v2pi(f)
    return _eq(sigma(V, V).apply_basis(1, 0), _anchor_vectors(f)["sigma"])


@check("braiding.anchor-sigma-inv", "sigma^-1(v0 (x) v2) = v2 (x) v0")
def _(f):
    V = v2pi(f)
    return _eq(sigma_inv(V, V).apply_basis(1, 0), _anchor_vectors(f)["sigma_inv"])


@check("braiding.anchor-sigma-tilde", "normalised braiding of v0 (x) v2")
def _(f):
    V = v2pi(f)
    return _eq(sigma_tilde(V, V).apply_basis(1, 0), _anchor_vectors(f)["sigma_tilde"])


@check("braiding.convention", "exactly one R-matrix convention is equivariant and hits the anchors")
def _(f):
    V = v2pi(f)
    a = _anchor_vectors(f)
    try:
        conv = select_convention(V, [("sigma", 1, 0, a["sigma"]), ("sigma_inv", 1, 0, a["sigma_inv"])])
    except ArithmeticError as e:
        return False, str(e), str(CONVENTION)
    return _eq(conv, CONVENTION)


@check("braiding.sigma-inverse", "sigma^-1 sigma = id on V (x) V")
def _(f):
    V = v2pi(f)
    return _mat_eq(sigma_inv(V, V).matrix @ sigma(V, V).matrix, Matrix.identity(9, f))


@check("braiding.equivariance", "sigma, sigma^-1 and the normalised braiding commute with U_q(sl2)")
def _(f):
    V = v2pi(f)
    cl = clifford(f)
    out = []
    for name, op, M, N in (
        ("sigma", sigma(V, V), V, V),
        ("sigma_inv", sigma_inv(V, V), V, V),
        ("sigma_tilde", sigma_tilde(V, V), V, V),
        ("sigma_tilde V Cl", cl.sigma_tilde_v_cl, V, cl.module),
    ):
        bad = equivariance_failures(op.matrix, M, N)
        out.append((not bad, f"{name}: fails for {bad}", f"{name}: equivariant"))
    return _all(out)


def _pairs(f):
    cl, ext = clifford(f), exterior(f)
    V, C, W = cl.V, cl.module, ext.module
    return V, C, W, [("V,V", V, V), ("V,Cl", V, C), ("Cl,V", C, V), ("Cl,Cl", C, C), ("V,Ext", V, W), ("Ext,Ext", W, W)]


@check("braiding.involutive", "normalised braiding squares to the identity")
def _(f):
    *_, pairs = _pairs(f)
    out = []
    for name, M, N in pairs:
        prod = sigma_tilde(N, M).matrix @ sigma_tilde(M, N).matrix
        out.append(_mat_eq(prod, Matrix.identity(M.dim * N.dim, f), name))
    return _all(out)


@check("braiding.yang-baxter", "braid relation on V (x) V (x) V")
def _(f):
    V = v2pi(f)
    s = sigma(V, V).matrix
    I = Matrix.identity(3, f)
    s12, s23 = s.kron(I), I.kron(s)
    return _mat_eq(s12 @ s23 @ s12, s23 @ s12 @ s23, "27x27")


@check("braiding.naturality", "normalised braiding on Cl (x) Cl restricts to V (x) Cl")
def _(f):
    cl = clifford(f)
    big = cl.sigma_tilde_cl.matrix
    small = cl.sigma_tilde_v_cl.matrix
    bad = 0
    for i in range(3):
        for j in range(8):
            src = (1 + i) * 8 + j
            for k in range(8):
                for a in range(8):
                    x = big.data[k * 8 + a][src]
                    y = small.data[k * 3 + (a - 1)][i * 8 + j] if 1 <= a <= 3 else f.zero
                    if x != y:
                        bad += 1
    return bad == 0, f"{bad} differing entries", "0 differing entries"


@check("braiding.eigenvalues", "normalised braiding is +1 on V4pi and V0, -1 on V2pi")
def _(f):
    V = v2pi(f)
    st = sigma_tilde(V, V).matrix
    out = []
    for s in decompose(tensor(V, V)).summands:
        sign = -1 if s.highest_weight == 2 else 1
        for v in s.basis:
            out.append(_eq(st.apply(v), [sign * x for x in v]))
    return _all(out)


@check("braiding.wedge-ideal", "image of 1 + normalised braiding has dimension 6")
def _(f):
    return _eq(len(wedge_relation_ideal(v2pi(f))), 6)


@check("braiding.q1-flip", "at q = 1 every braiding is the flip")
def _(f):
    *_, pairs = _pairs(SYMBOLIC)
    out = []
    for name, M, N in pairs:
        P = _at_one(flip(M, N))
        out.append(_mat_eq(_at_one(sigma(M, N).matrix), P, "sigma " + name))
        out.append(_mat_eq(_at_one(sigma_tilde(M, N).matrix), P, "sigma_tilde " + name))
    V = pairs[0][1]
    out.append(_mat_eq(_at_one(sigma_inv(V, V).matrix), _at_one(flip(V, V)), "sigma_inv V,V"))
    return _all(out)


# shared algebra checks

def _relations(A, expected):
    out = []
    for (i, j), want in expected.items():
        got = A.gen(i) * A.gen(j)
        out.append(_eq(got, want))
    return _all(out)


def _assoc(A):
    B = A.basis()
    bad = 0
    for a, b, c in itertools.product(B, repeat=3):
        if (a * b) * c != a * (b * c):
            bad += 1
    return bad == 0, f"{bad} of 512 triples fail", "0 of 512 triples fail"


def _module_algebra(A):
    f = A.field
    out = []
    B = A.basis()
    for g in ("E", "F", "K", "k"):
        for a, b in itertools.product(range(8), repeat=2):
            lhs = A.apply(A.action(g), B[a] * B[b])
            rhs = A.zero()
            for x, y in coproduct(g, f):
                rhs = rhs + A.apply(_word_action(A, x), B[a]) * A.apply(_word_action(A, y), B[b])
            out.append(_eq(lhs, rhs))
    return _all(out)


def _word_action(A, w: UqWord) -> Matrix:
    total = Matrix.zeros(8, 8, A.field)
    for word, x in w.terms.items():
        total = total + A.action_word(word).scale(x)
    return total


def _cartan(A, D):
    out = []
    for i, name in enumerate(("v2", "v0", "vm2")):
        io = A.iota(i)
        out.append(_mat_eq(A.lie(name), io @ D + D @ io, f"L_{name}"))
    return _all(out)


def _anticommutation(A):
    V = A.V
    st = sigma_tilde(V, V)
    out = []
    for x, y in itertools.product(range(3), repeat=2):
        total = A.iota(x) @ A.iota(y)
        for a, b, coef in st.terms(x, y):  # sum coef y_a (x) x_b
            total = total + (A.iota(a) @ A.iota(b)).scale(coef)
        out.append(_mat_eq(total, Matrix.zeros(8, 8, A.field), f"({x},{y})"))
    return _all(out)


def _invariant_span(A, expected):
    inv = invariants(A.module)
    f = A.field
    if len(inv) != len(expected):
        return False, f"{len(inv)} invariants", f"{len(expected)} invariants"
    r = rank(Matrix.from_columns(inv + [e.coeffs for e in expected], f))
    return r == len(expected), f"span rank {r}", f"span rank {len(expected)}"


def _d_equivariant(A, D):
    return _all(_mat_eq(A.action(g) @ D, D @ A.action(g), g) for g in ("E", "F", "K", "k"))


# ext

def _ext_expected(ext):
    f = ext.field
    q = f.q
    v2, v0, vm2 = ext.gens()
    return {
        (0, 0): ext.zero(),
        (2, 2): ext.zero(),
        (1, 0): -f.q_power(-2) * (v2 * v0),
        (2, 1): -f.q_power(-2) * (v0 * vm2),
        (1, 1): ((1 - q**4) / q**3) * (v2 * vm2),
        (2, 0): -(v2 * vm2),
    }


@check("ext.relations", "wedge relations on generators")
def _(f):
    return _relations(exterior(f), _ext_expected(exterior(f)))


@check("ext.from-braiding", "wedge table is the quotient by the image of 1 + normalised braiding")
def _(f):
    try:
        exterior(f).from_braiding()
    except ArithmeticError as e:
        return False, str(e), "table reproduced"
    return True, "table reproduced", "table reproduced"


@check("ext.associativity", "wedge product is associative")
def _(f):
    return _assoc(exterior(f))


@check("ext.supercommutative", "a b = -m(normalised braiding(a (x) b)) on generators")
def _(f):
    ext = exterior(f)
    st = sigma_tilde(ext.V, ext.V)
    out = []
    for i, j in itertools.product(range(3), repeat=2):
        rhs = ext.zero()
        for a, b, x in st.terms(i, j):
            rhs = rhs - x * (ext.gen(a) * ext.gen(b))
        out.append(_eq(ext.gen(i) * ext.gen(j), rhs))
    return _all(out)


@check("ext.module-algebra", "U_q(sl2) acts on the exterior algebra through the coproduct")
def _(f):
    return _module_algebra(exterior(f))


@check("ext.d-generators", "d on generators")
def _(f):
    ext = exterior(f)
    q, c = f.q, f.c
    v2, v0, vm2 = ext.gens()
    expected = [-(v2 * v0) / c, ((1 + q**2) / (q * c)) * (v2 * vm2), -(v0 * vm2) / c]
    return _all(_eq(ext.d_apply(ext.gen(i)), expected[i]) for i in range(3))


@check("ext.d-squared", "d^2 = 0 on the exterior algebra")
def _(f):
    D = exterior(f).d
    return _mat_eq(D @ D, Matrix.zeros(8, 8, f))


@check("ext.d-equivariant", "d commutes with the U_q(sl2)-action")
def _(f):
    ext = exterior(f)
    return _d_equivariant(ext, ext.d)


@check("ext.operator-form", "d is a combination of v-2 L_X, v0 L_Z, v2 L_Y")
def _(f):
    ext = exterior(f)
    try:
        a, b, e = ext.operator_form().solved
    except NoSolution:
        return False, "no solution", "solution exists"
    v2, v0, vm2 = ext.gens()
    rebuilt = (
        (ext.lmul(vm2) @ ext.lie("X")).scale(a)
        + (ext.lmul(v0) @ ext.lie("Z")).scale(b)
        + (ext.lmul(v2) @ ext.lie("Y")).scale(e)
    )
    return _mat_eq(rebuilt, ext.d)


@check("ext.contraction-graded", "wedge contraction table is the associated graded of the Clifford one")
def _(f):
    ext, cl = exterior(f), clifford(f)
    out = []
    for i in range(3):
        for j, w in enumerate(BASIS):
            want = ext.contract(i, ext.basis_element(j))
            got = cl.symbol(cl.contract(i, cl.basis_element(j)), max(len(w) - 1, 0), ext) if w else ext.zero()
            out.append(_eq(got, want))
    return _all(out)


@check("ext.contraction-anticommute", "contractions anticommute through the normalised braiding on the exterior algebra")
def _(f):
    return _anticommutation(exterior(f))


@check("ext.cartan", "L_x = iota_x d + d iota_x on the exterior algebra")
def _(f):
    ext = exterior(f)
    return _cartan(ext, ext.d)


@check("ext.cartan-instances", "L_v2 v-2 = v0 and L_v2(v0 v-2) = -(1+q^2)/q v2 v-2")
def _(f):
    ext = exterior(f)
    q = f.q
    v2, v0, vm2 = ext.gens()
    L = ext.lie("v2")
    return _all(
        [
            _eq(ext.apply(L, vm2), v0),
            _eq(ext.apply(L, v0 * vm2), -((1 + q**2) / q) * (v2 * vm2)),
            _eq(ext.d_apply(ext.contract(0, v0 * vm2)), -((1 + q**2) / q) * (v2 * vm2)),
        ]
    )


@check("ext.iota-top", "iota of the top monomial on itself is c^3 (1+q^2)/q^2")
def _(f):
    ext = exterior(f)
    q, c = f.q, f.c
    top = ext.basis_element(INDEX[(0, 1, 2)])
    return _eq(ext.contract((0, 1, 2), top), ext.one() * (c**3 * (1 + q**2) / q**2))


@check("ext.iota-v-2-top", "iota_v-2 of the top monomial is c v0 v-2")
def _(f):
    ext = exterior(f)
    v2, v0, vm2 = ext.gens()
    return _eq(ext.contract(2, v2 * v0 * vm2), f.c * (v0 * vm2))


@check("ext.invariants", "invariants of the exterior algebra are spanned by 1 and the top monomial")
def _(f):
    ext = exterior(f)
    return _invariant_span(ext, [ext.one(), ext.basis_element(7)])


@check("ext.cohomology", "H(exterior, d) has dimensions (1, 0, 0, 1)")
def _(f):
    ext = exterior(f)
    H = cohomology(ext.d, ext.degrees())
    dims = tuple(H.dims[g] for g in range(4))
    reps = H.representatives
    ok = dims == (1, 0, 0, 1)
    if ok:
        span = Matrix.from_columns(reps[0] + reps[3] + [ext.one().coeffs, ext.basis_element(7).coeffs], f)
        ok = rank(span) == 2
    return ok, f"dims {dims}", "dims (1, 0, 0, 1), representatives 1 and the top monomial"


@check("ext.q1-classical", "at q = 1 the wedge relations are anticommutativity")
def _(f):
    ext = exterior(SYMBOLIC)
    out = []
    for i, j in itertools.product(range(3), repeat=2):
        anti = ext.gen(i) * ext.gen(j) + ext.gen(j) * ext.gen(i)
        out.append(_eq([specialize(x, 1, 1) for x in anti.coeffs], [0] * 8))
    return _all(out)


@check("ext.q1-cohomology", "at q = 1, H(exterior, d) has dimensions (1, 0, 0, 1)")
def _(f):
    ext = exterior(SYMBOLIC)
    H = cohomology(_at_one(ext.d), ext.degrees())
    return _eq(tuple(H.dims[g] for g in range(4)), (1, 0, 0, 1))


# cl

def _cl_expected(cl):
    f = cl.field
    q, c = f.q, f.c
    v2, v0, vm2 = cl.gens()
    return {
        (0, 0): cl.zero(),
        (2, 2): cl.zero(),
        (1, 0): -f.q_power(-2) * (v2 * v0),
        (2, 1): -f.q_power(-2) * (v0 * vm2),
        (1, 1): ((1 - q**4) / q**3) * (v2 * vm2) + (q**2 + 1) / q * c,
        (2, 0): -(v2 * vm2) + (q**2 + 1) / q**2 * c,
    }


@check("cl.relations", "Clifford relations on generators")
def _(f):
    return _relations(clifford(f), _cl_expected(clifford(f)))


@check("cl.relations-from-braiding", "v w + m(normalised braiding(v (x) w)) = 2<v, w>")
def _(f):
    rel = clifford(f).relations_from_braiding()
    return _all(_eq(r, clifford(f).zero()) for *_, r in rel)


@check("cl.associativity", "Clifford product is associative")
def _(f):
    return _assoc(clifford(f))


@check("cl.form-symmetric", "the form is symmetric with respect to the normalised braiding")
def _(f):
    cl = clifford(f)
    form = cl.form_vector()
    return _mat_eq(form @ sigma_tilde(cl.V, cl.V).matrix, form)


@check("cl.form-invariant", "the form is U_q(sl2)-invariant")
def _(f):
    cl = clifford(f)
    form = cl.form_vector()
    VV = tensor(cl.V, cl.V)
    out = []
    for g in ("E", "F", "K", "k"):
        eps = Matrix.identity(1, f).scale(counit(g))
        out.append(_mat_eq(form @ VV.action(g), eps @ form, g))
    return _all(out)


@check("cl.module-algebra", "U_q(sl2) acts on Cl through the coproduct")
def _(f):
    return _module_algebra(clifford(f))


@check("cl.alpha-relations", "alpha images satisfy the U_q(sl2) relations")
def _(f):
    cl = clifford(f)
    q = f.q
    E, F, K, k = (cl.alpha_generator(g) for g in "EFKk")
    one = cl.one()
    return _all(
        [
            _eq(K * k, one),
            _eq(k * K, one),
            _eq(K * E, q**2 * (E * K)),
            _eq(K * F, f.q_power(-2) * (F * K)),
            _eq(E * F - F * E, (K - k) / (q - f.one / q)),
        ]
    )


@check("cl.alpha-displays", "alpha(Z) = v2 v-2 / c - 1 and alpha(Y) = -q/((1+q^2)c) v0 v-2")
def _(f):
    cl = clifford(f)
    q, c = f.q, f.c
    v2, v0, vm2 = cl.gens()
    aZ = cl.alpha(UqWord({("E", "F"): f.q_power(-2), ("F", "E"): -1}, f))
    aY = cl.alpha(UqWord({("K", "F"): 1}, f))
    return _all([_eq(aZ, (v2 * vm2) / c - 1), _eq(aY, -(q / ((1 + q**2) * c)) * (v0 * vm2))])


@check("cl.lie-conjugation", "x |> w = sum alpha(x_(1)) w alpha(S x_(2)) for generators and X, Z, Y")
def _(f):
    cl = clifford(f)
    out = [_mat_eq(cl.lie_conjugation(g), cl.action(g), g) for g in "EFKk"]
    out += [_mat_eq(cl.lie_conjugation_slq(x), cl.lie(x), str(x)) for x in E3]
    return _all(out)


@check("cl.lie-bracket", "L_x w = [beta(x), w] for x in X, Z, Y")
def _(f):
    cl = clifford(f)
    return _all(_mat_eq(cl.lie_bracket_route(x), cl.lie(x), "XZY"[i]) for i, x in enumerate(E3))


@check("cl.beta-morphism", "[beta(x), beta(y)] = beta(ad_x y)")
def _(f):
    cl = clifford(f)
    out = []
    for i, j in itertools.product(range(3), repeat=2):
        out.append(_eq(cl.bracket(cl.beta(E3[i]), cl.beta(E3[j])), cl.beta(_ad(f, i).column(j))))
    return _all(out)


@check("cl.ad-skew", "ad o normalised braiding = -ad on sl_q(2)")
def _(f):
    st = sigma_tilde(v2pi(f), v2pi(f))
    out = []
    for i, j in itertools.product(range(3), repeat=2):
        total = [f.zero] * 3
        for a, b, x in st.terms(i, j):
            total = [t + x * v for t, v in zip(total, _ad(f, a).column(b))]
        out.append(_eq(total, [-v for v in _ad(f, i).column(j)]))
    return _all(out)


@check("cl.bracket-skew", "the braided bracket is skew through the normalised braiding")
def _(f):
    cl = clifford(f)
    B, S, sg = cl.bracket_matrix, cl.sigma_tilde_cl.matrix, cl._sign_matrix()
    return _mat_eq(B + B @ S @ sg, Matrix.zeros(8, 64, f))


@check("cl.bracket-filtration", "the bracket lowers filtration degree by one")
def _(f):
    cl = clifford(f)
    out = []
    for i, wi in enumerate(BASIS):
        for j, wj in enumerate(BASIS):
            br = cl.bracket(cl.basis_element(i), cl.basis_element(j))
            bound = max(len(wi) + len(wj) - 1, 0)
            out.append((br.degree() <= bound, f"deg [{i},{j}] = {br.degree()}", f"<= {bound}"))
    return _all(out)


@check("cl.gamma-square", "gamma^2 = (1+q^2)/(4cq)")
def _(f):
    cl = clifford(f)
    g = cl.gamma()
    return _eq(g * g, cl.one() * ((1 + f.q**2) / (4 * f.c * f.q)))


@check("cl.gamma-invariant", "gamma is U_q(sl2)-invariant")
def _(f):
    cl = clifford(f)
    g = cl.gamma()
    return _all(_eq(cl.apply(cl.action(h), g), g * counit(h)) for h in "EFKk")


@check("cl.d-squared", "d^2 = 0 on Cl")
def _(f):
    D = clifford(f).d
    return _mat_eq(D @ D, Matrix.zeros(8, 8, f))


@check("cl.d-bracket", "d w = [gamma, w] with the normalised braiding")
def _(f):
    cl = clifford(f)
    return _mat_eq(cl.bracket_operator(cl.gamma()), cl.d)


@check("cl.d-generators", "d v2 = -v2 v0 / c and d v-2 = -v0 v-2 / c")
def _(f):
    cl = clifford(f)
    v2, v0, vm2 = cl.gens()
    return _all([_eq(cl.d_apply(v2), -(v2 * v0) / f.c), _eq(cl.d_apply(vm2), -(v0 * vm2) / f.c)])


@check("cl.d-equivariant", "d commutes with the U_q(sl2)-action on Cl")
def _(f):
    cl = clifford(f)
    return _d_equivariant(cl, cl.d)


@check("cl.cartan", "L_x = iota_x d + d iota_x on Cl")
def _(f):
    cl = clifford(f)
    return _cartan(cl, cl.d)


@check("cl.cartan-instance", "L_v2 v-2 = v0 on Cl")
def _(f):
    cl = clifford(f)
    return _eq(cl.apply(cl.lie("v2"), cl.gen(2)), cl.gen(1))


@check("cl.contraction-form", "iota_x v = <x, v> on generators")
def _(f):
    cl = clifford(f)
    return _all(_eq(cl.contract(i, cl.gen(j)), cl.one() * cl.form.data[i][j]) for i in range(3) for j in range(3))


@check("cl.contraction-values", "iota_v2 iota_v0 and iota_v0 iota_v2 on v2 v0 v-2")
def _(f):
    cl = clifford(f)
    q, c = f.q, f.c
    v2, v0, vm2 = cl.gens()
    top = v2 * v0 * vm2
    a = cl.contract(0, cl.contract(1, top))
    b = cl.contract(1, cl.contract(0, top))
    return _all(
        [
            _eq(a, ((1 + q**2) / q) * c**2 * v2),
            _eq(cl.contract(0, top), c * (v2 * v0)),
            _eq(b, -((1 + q**2) / q**3) * c**2 * v2),
            _eq(b, -f.q_power(-2) * a),
        ]
    )


@check("cl.contraction-anticommute", "contractions anticommute through the normalised braiding on Cl")
def _(f):
    return _anticommutation(clifford(f))


@check("cl.contraction-naturality", "contraction through V (x) Cl agrees with the restriction from Cl (x) Cl")
def _(f):
    cl = clifford(f)
    S = cl.sigma_tilde_cl
    out = []
    for i in range(3):
        cols = []
        for j in range(8):
            braided = cl.zero()
            for a, b, x in S.terms(1 + i, j):
                braided = braided + x * (cl.basis_element(a) * cl.basis_element(b))
            sign = -1 if len(BASIS[j]) % 2 else 1
            cols.append(((cl.gen(i) * cl.basis_element(j) - braided * sign) * (f.one / 2)).coeffs)
        out.append(_mat_eq(Matrix.from_columns(cols, f), cl.iota(i), f"iota_{i}"))
    return _all(out)


@check("cl.duality", "iota_x iota_y d z = <ad_x y, z>")
def _(f):
    cl = clifford(f)
    D = cl.d
    out = []
    for x, y, z in itertools.product(range(3), repeat=3):
        lhs = cl.apply(cl.iota(x) @ cl.iota(y) @ D, cl.gen(z)).scalar_part()
        rhs = sum((a * cl.form.data[k][z] for k, a in enumerate(_ad(f, x).column(y))), f.zero)
        out.append(_eq(lhs, rhs))
    return _all(out)


@check("cl.associated-graded", "symbols of products, of d and of contractions are the exterior ones")
def _(f):
    cl, ext = clifford(f), exterior(f)
    out = []
    for i, wi in enumerate(BASIS):
        for j, wj in enumerate(BASIS):
            k = len(wi) + len(wj)
            prod = cl.basis_element(i) * cl.basis_element(j)
            want = ext.basis_element(i) * ext.basis_element(j)
            got = cl.symbol(prod, k, ext) if k <= 3 else ext.zero()
            if k > 3:
                ok = prod.degree() <= 3
                out.append((ok, f"degree {prod.degree()}", "<= 3"))
            else:
                out.append(_eq(got, want))
    for j, w in enumerate(BASIS):
        if len(w) < 3:
            got = cl.symbol(cl.d_apply(cl.basis_element(j)), len(w) + 1, ext)
            out.append(_eq(got, ext.d_apply(ext.basis_element(j))))
    return _all(out)


@check("cl.symbol-examples", "symbols of v-2 v2 and gamma")
def _(f):
    cl, ext = clifford(f), exterior(f)
    v2, v0, vm2 = cl.gens()
    e2, e0, em2 = ext.gens()
    return _all(
        [
            _eq(cl.symbol(vm2 * v2, 2, ext), -(e2 * em2)),
            _eq(cl.symbol(cl.gamma(), 3, ext), -(f.one / (2 * f.c**2)) * (e2 * e0 * em2)),
        ]
    )


@check("cl.leibniz-cases", "the three naive Leibniz rules for iota_v0(v2 v-2) fail with the displayed values")
def _(f):
    cl = clifford(f)
    q, c = f.q, f.c
    v0 = cl.gen(1)
    cases = cl.leibniz_counterexamples()
    want = {
        "sigma": -(c * (q**4 - 1) / q**2) * v0,
        "sigma_inv": cl.zero(),
        "sigma_tilde": -(c * (q**4 - 1) / (1 + q**4)) * v0,
    }
    true = (c * (1 - q**2) / q**2) * v0
    out = []
    for case in cases:
        out.append(_eq(case.candidate, want[case.name]))
        out.append(_eq(case.true_value, true))
        lam = _proportionality(case.difference, v0)
        out.append((lam is not None and bool(lam), f"{case.name} difference {case.difference}", "nonzero multiple of v0"))
    return _all(out)


@check("cl.invariants", "invariants of Cl are spanned by 1 and gamma")
def _(f):
    cl = clifford(f)
    return _invariant_span(cl, [cl.one(), cl.gamma()])


@check("cl.cohomology", "H(Cl, d) = 0 with kernel and image of dimension 4")
def _(f):
    cl = clifford(f)
    H = cohomology(cl.d, cl.parities(), 2)
    ker, im = sum(H.kernel_dims.values()), sum(H.image_dims.values())
    total = sum(H.dims.values())
    return (total, ker, im) == (0, 4, 4), f"H = {total}, ker {ker}, im {im}", "H = 0, ker 4, im 4"


@check("cl.rho", "span{1, gamma} (x) im alpha -> Cl is onto, im alpha has dimension 4")
def _(f):
    r = clifford(f).rho_decomposition()
    got = (r.image_alpha_dim, r.multiplication_rank, all(r.contractions_in_image))
    return got == (4, 8, True), f"dim {got[0]}, rank {got[1]}, iota gamma in im alpha: {got[2]}", "dim 4, rank 8, True"


@check("cl.q1-classical", "at q = c = 1 the Clifford relations are classical")
def _(f):
    cl = clifford(SYMBOLIC)
    at1 = lambda e: [specialize(x, 1, 1) for x in e.coeffs]
    out = []
    form = _at_one(cl.form)
    for i, j in itertools.product(range(3), repeat=2):
        anti = cl.gen(i) * cl.gen(j) + cl.gen(j) * cl.gen(i)
        out.append(_eq(at1(anti), [2 * form.data[i][j]] + [0] * 7))
    classical = {(0, 2): 1, (2, 0): 1, (1, 1): 2}
    out += [_eq(form.data[i][j], classical.get((i, j), 0)) for i in range(3) for j in range(3)]
    v2, v0, vm2 = cl.gens()
    out.append(_eq(at1(cl.gamma()), at1(-(v0 + v2 * v0 * vm2) / 2)))
    return _all(out)


# findings

def findings(f) -> list[Finding]:
    """Solved constants next to the displayed ones; disagreements are flagged, not failed."""
    out = []
    cl, ext = clifford(f), exterior(f)
    q, c = f.q, f.c
    g = cl.gamma()
    lam1 = [_proportionality(cl.d_apply(cl.gen(i)), cl.beta(x)) for i, x in enumerate(E3)]
    lam2 = [_proportionality(cl.contract(i, g), cl.beta(x)) for i, x in enumerate(E3)]
    lam3 = []
    for x in E3:
        br, act = cl.lie_bracket_route(x), cl.lie(x)
        lam3.append(_matrix_ratio(br, act))
    lam4 = []
    for i, j in itertools.product(range(3), repeat=2):
        lhs, rhs = cl.bracket(cl.beta(E3[i]), cl.beta(E3[j])), cl.beta(_ad(f, i).column(j))
        if rhs:
            lam4.append(_proportionality(lhs, rhs))
    for name, lams, shown, label in (
        ("lambda1", lam1, 2, "d x = lambda1 beta(x)"),
        ("lambda2", lam2, 1, "iota_x gamma = lambda2 beta(x)"),
        ("bracket-route", lam3, 1, "[beta(x), -] = lambda L_x"),
        ("beta-morphism", lam4, 1, "[beta(x), beta(y)] = lambda beta(ad_x y)"),
    ):
        common = lams[0] if all(l == lams[0] for l in lams) else None
        out.append(Finding(name, label, _show(common if common is not None else lams), str(shown), common == shown))
    op = ext.operator_form()
    for k, (s, d, ok) in enumerate(zip(op.solved, op.displayed, op.agrees)):
        out.append(Finding(f"operator-form-{'abe'[k]}", f"coefficient of {['v-2 L_X', 'v0 L_Z', 'v2 L_Y'][k]} in d", str(s), str(d), ok))
    top = ext.basis_element(7)
    val = ext.contract((0, 1, 2), top).scalar_part()
    shown = c**3 * (1 + q**2) / q**2
    out.append(Finding("iota-top", "iota of the top monomial on itself", str(val), str(shown), val == shown))
    rho = cl.rho_decomposition()
    lam = rho.lambda_dual
    common = lam[0] if all(l == lam[0] for l in lam) else None
    out.append(Finding("rho-dual", "iota_x gamma . gamma* = lambda x", _show(common if common is not None else lam), "1", common == 1))
    return out


def _matrix_ratio(a: Matrix, b: Matrix):
    lam = None
    for i in range(b.rows):
        for j in range(b.cols):
            if b.data[i][j]:
                lam = a.data[i][j] / b.data[i][j]
                break
        if lam is not None:
            break
    if lam is None or a != b.scale(lam):
        return None
    return lam


def _show(x) -> str:
    if isinstance(x, list):
        return "[" + ", ".join(str(t) for t in x) + "]"
    return str(x)


# running

def make_field(q=None, c=None):
    """SYMBOLIC when q is None; otherwise the point field, rejecting q in {0, 1, -1} and c = 0."""
    if q is None:
        if c is not None:
            raise ValueError("c may only be fixed together with q")
        return SYMBOLIC
    q = Fraction(q)
    c = Fraction(1) if c is None else Fraction(c)
    if q in (0, 1, -1):
        raise ValueError(f"q = {q} is not allowed; choose a rational other than 0, 1, -1")
    if c == 0:
        raise ValueError("c must be nonzero")
    return PointField(q, c)


def run(suite: str = "all", field=SYMBOLIC, with_findings: bool = True) -> VerificationReport:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    start = time.perf_counter()
    per_check = {}
    results = []
    for cid in sorted(CHECKS):
        chk = CHECKS[cid]
        if suite != "all" and chk.suite != suite:
            continue
        t0 = time.perf_counter()
        try:
            ok, lhs, rhs = chk.fn(field)
        except Exception as e:  # a crash is a failed check, not a failed run
            ok, lhs, rhs = False, f"{type(e).__name__}: {e}", "no error"
        per_check[cid] = round(time.perf_counter() - t0, 4)
        results.append(CheckResult(cid, "pass" if ok else "fail", lhs, rhs, chk.anchor))
    found = []
    if with_findings and suite in ("all", "cl", "ext"):
        t0 = time.perf_counter()
        found = findings(field)
        per_check["findings"] = round(time.perf_counter() - t0, 4)
    timing = {"total_seconds": round(time.perf_counter() - start, 4), "checks": per_check}
    return VerificationReport(suite, results, timing, field.config(), found)
