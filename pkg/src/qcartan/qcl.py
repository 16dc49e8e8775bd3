"""The q-deformed Clifford algebra Cl_q(sl2) and its Cartan calculus."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .algebra import BASIS, AlgebraElement, FilteredAlgebra
from .braiding import sigma, sigma_inv, sigma_tilde
from .linalg import Matrix, NoSolution, image_basis, rank, solve
from .qext import ExteriorAlgebra, exterior
from .scalar import SYMBOLIC
from .uq import SlqElement, UqWord, antipode_word, coproduct, normalize

__all__ = [
    "CliffordAlgebra",
    "clifford",
    "RouteDisagreement",
    "RankDeficient",
    "DegreeExceeded",
    "LeibnizCase",
    "RhoReport",
]


class RouteDisagreement(ArithmeticError):
    pass


class RankDeficient(ArithmeticError):
    pass


class DegreeExceeded(ValueError):
    pass


def cl_rules(field) -> dict:
    q, c = field.q, field.c
    qm2 = field.q_power(-2)
    return {
        (0, 0): [],
        (2, 2): [],
        (1, 0): [((0, 1), -qm2)],
        (2, 1): [((1, 2), -qm2)],
        (1, 1): [((0, 2), (1 - q**4) / q**3), ((), (q**2 + 1) / q * c)],
        (2, 0): [((0, 2), -field.one), ((), (q**2 + 1) / q**2 * c)],
    }


@dataclass
class LeibnizCase:
    name: str
    braiding_terms: list  # [(omega_index, x_index, coefficient)] of the braided x (x) omega
    candidate: AlgebraElement
    true_value: AlgebraElement

    @property
    def difference(self):
        return self.candidate - self.true_value


@dataclass
class RhoReport:
    image_alpha_dim: int
    image_alpha_basis: list
    multiplication_rank: int
    gamma_square: object
    contractions_in_image: list  # per generator x: bool
    lambda_beta: list  # iota_x gamma = lambda * beta(x)
    lambda_dual: list  # iota_x gamma . gamma* = lambda * x


class CliffordAlgebra(FilteredAlgebra):
    short = "Cl"
    name = "q-deformed Clifford algebra"

    def __init__(self, field=SYMBOLIC):
        super().__init__(field, cl_rules(field))

    # bilinear form
    @cached_property
    def form(self) -> Matrix:
        f = self.field
        q, c = f.q, f.c
        z = f.zero
        return Matrix([[z, z, c], [z, f.q_power(-3) * (1 + q**2) * c, z], [f.q_power(-2) * c, z, z]], f)

    def form_vector(self) -> Matrix:
        """The form as a 1 x 9 matrix on V (x) V."""
        return Matrix([[self.form.data[i][j] for i in range(3) for j in range(3)]], self.field)

    def relations_from_braiding(self) -> list[tuple[int, int, AlgebraElement]]:
        """Residues of v w + m(sigma_tilde(v (x) w)) - 2<v, w> for all generator pairs."""
        st = sigma_tilde(self.V, self.V)
        out = []
        for i in range(3):
            for j in range(3):
                total = self.gen(i) * self.gen(j)
                for a, b, x in st.terms(i, j):
                    total = total + x * (self.gen(a) * self.gen(b))
                total = total - self.one() * (2 * self.form.data[i][j])
                out.append((i, j, total))
        return out

    # braidings with Cl
    @cached_property
    def sigma_tilde_cl(self):
        return sigma_tilde(self.module, self.module)

    @cached_property
    def sigma_tilde_v_cl(self):
        return sigma_tilde(self.V, self.module)

    def _sign_matrix(self) -> Matrix:
        p = self.parities()
        return Matrix.diag([(-1) ** (p[i] * p[j]) for i in range(8) for j in range(8)], self.field)

    @cached_property
    def bracket_matrix(self) -> Matrix:
        """[-,-]_sigma as an 8 x 64 matrix on Cl (x) Cl."""
        m = self.mult_matrix
        return m - m @ self.sigma_tilde_cl.matrix @ self._sign_matrix()

    def bracket(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        return self.element(self.bracket_matrix.apply(_kron(a.coeffs, b.coeffs)))

    def bracket_operator(self, a: AlgebraElement) -> Matrix:
        """omega -> [a, omega]_sigma."""
        return self.operator(lambda w: self.bracket(a, w))

    # contractions
    @cached_property
    def _iota_gens(self) -> list[Matrix]:
        f = self.field
        st = self.sigma_tilde_v_cl
        half = f.one / 2
        mats = []
        for i in range(3):
            cols = []
            for j in range(8):
                w = self.basis_element(j)
                braided = self.zero()
                for a, b, x in st.terms(i, j):  # sum x * omega_a (x) v_b
                    braided = braided + x * (self.basis_element(a) * self.gen(b))
                sign = -1 if BASIS[j] and len(BASIS[j]) % 2 else 1
                col = (self.gen(i) * w - braided * sign) * half
                cols.append(col.coeffs)
            mats.append(Matrix.from_columns(cols, f))
        return mats

    def iota(self, x) -> Matrix:
        """Contraction by a degree-1 element (index or 3-vector)."""
        if isinstance(x, int):
            return self._iota_gens[x]
        f = self.field
        total = Matrix.zeros(8, 8, f)
        for i, coef in enumerate(x):
            if coef:
                total = total + self._iota_gens[i].scale(coef)
        return total

    def contract(self, x, a: AlgebraElement) -> AlgebraElement:
        return self.apply(self.iota(x), a)

    # gamma and the differential
    def gamma(self) -> AlgebraElement:
        f = self.field
        c = f.c
        v2, v0, vm2 = self.gens()
        return (v0 * c + v2 * v0 * vm2) * (-(f.one / (2 * c**2)))

    @cached_property
    def d(self) -> Matrix:
        g = self.gamma()
        cols = []
        for j, w in enumerate(self.basis()):
            sign = -1 if len(BASIS[j]) % 2 else 1
            cols.append((g * w - (w * g) * sign).coeffs)
        return Matrix.from_columns(cols, self.field)

    def d_apply(self, a: AlgebraElement) -> AlgebraElement:
        return self.apply(self.d, a)

    # moment maps
    def alpha_generator(self, g: str) -> AlgebraElement:
        f = self.field
        q, c = f.q, f.c
        v2, v0, vm2 = self.gens()
        k_coef = (q**3 - q) / ((1 + q**2) * c)
        return {
            "E": -(q / ((1 + q**2) * c)) * (v2 * v0),
            "F": -(q**2 / ((1 + q**2) * c)) * (v0 * vm2),
            "K": k_coef * (v2 * vm2) + f.q_power(-1),
            "k": -k_coef * (v2 * vm2) + q,
        }[g]

    def alpha(self, w: UqWord) -> AlgebraElement:
        out = self.zero()
        for word, x in normalize(w).terms.items():
            t = self.one()
            for g in word:
                t = t * self.alpha_generator(g)
            out = out + t * x
        return out

    def beta(self, x) -> AlgebraElement:
        if not isinstance(x, SlqElement):
            x = SlqElement(*x, field=self.field)
        f = self.field
        return self.alpha(x.to_uq()) * ((1 + f.q**2) / f.q)

    # Lie derivatives by the three routes
    def lie_conjugation(self, g: str) -> Matrix:
        """x |> omega = sum alpha(x_(1)) omega alpha(S(x_(2))) for a generator x."""
        f = self.field
        total = Matrix.zeros(8, 8, f)
        for a, b in coproduct(g, f):
            left = self.alpha(a)
            right = self.alpha(antipode_word(b))
            total = total + self.lmul(left) @ self.rmul(right)
        return total

    def lie_conjugation_slq(self, x) -> Matrix:
        f = self.field
        cx, cz, cy = (f(t) for t in x)
        E, F, K = (self.lie_conjugation(g) for g in ("E", "F", "K"))
        LZ = (E @ F).scale(f.q_power(-2)) - F @ E
        return E.scale(cx) + LZ.scale(cz) + (K @ F).scale(cy)

    def lie_bracket_route(self, x) -> Matrix:
        """omega -> [beta(x), omega]_sigma for x in sl_q(2)."""
        return self.bracket_operator(self.beta(x))

    def lie_routes(self, x) -> dict[str, Matrix]:
        """All available routes for x (generator name or sl_q(2) triple); raises on disagreement."""
        if isinstance(x, str):
            routes = {"action": self.action(x), "conjugation": self.lie_conjugation(x)}
        else:
            routes = {
                "action": self.lie(tuple(x)),
                "conjugation": self.lie_conjugation_slq(x),
                "bracket": self.lie_bracket_route(x),
            }
        ref = routes["action"]
        for name, m in routes.items():
            if m != ref:
                raise RouteDisagreement(f"route {name} differs from the module action for {x}")
        return routes

    # remark: none of the naive Leibniz rules for iota works
    def leibniz_counterexamples(self) -> list[LeibnizCase]:
        x, w, mu = 1, 0, 2  # x = v0, omega = v2, mu = v-2
        V = self.V
        true = self.contract(x, self.gen(w) * self.gen(mu))
        cases = []
        for name, op in (
            ("sigma", sigma(V, V)),
            ("sigma_inv", sigma_inv(V, V)),
            ("sigma_tilde", sigma_tilde(V, V)),
        ):
            terms = op.terms(x, w)  # braided x (x) omega = sum coef omega_a (x) x_b
            cand = self.contract(x, self.gen(w)) * self.gen(mu)
            for a, b, coef in terms:
                # (-1)^{p(omega)} with omega odd
                cand = cand - (self.gen(a) * self.contract(b, self.gen(mu))) * coef
            cases.append(LeibnizCase(name, terms, cand, true))
        return cases

    # rho-decomposition
    def image_alpha(self, max_length: int = 4) -> list[list]:
        """Span of alpha on PBW words of growing length until the dimension stabilises."""
        f = self.field
        vecs: list[list] = []
        dim = 0
        words = [()]
        for length in range(max_length + 1):
            if length:
                words = [w + (g,) for w in words for g in ("E", "F", "K", "k")]
            for w in words:
                vecs.append(self.alpha(UqWord({w: 1}, f)).coeffs)
            basis = image_basis(Matrix.from_columns(vecs, f))
            if length and len(basis) == dim:
                return basis
            dim = len(basis)
            vecs = basis
        return vecs

    def rho_decomposition(self) -> RhoReport:
        f = self.field
        q, c = f.q, f.c
        im = self.image_alpha()
        g = self.gamma()
        products = []
        for left in (self.one(), g):
            for v in im:
                products.append((left * self.element(v)).coeffs)
        r = rank(Matrix.from_columns(products, f))
        gsq = (g * g).scalar_part()
        gstar = g * (4 * q * c / (1 + q**2))
        im_mat = Matrix.from_columns(im, f)
        in_image, lam_beta, lam_dual = [], [], []
        for i, x in enumerate(((1, 0, 0), (0, 1, 0), (0, 0, 1))):
            ig = self.contract(i, g)
            try:
                solve(im_mat, ig.coeffs)
                in_image.append(True)
            except NoSolution:
                in_image.append(False)
            lam_beta.append(_proportionality(ig, self.beta(x)))
            lam_dual.append(_proportionality(ig * gstar, self.gen(i)))
        return RhoReport(len(im), im, r, gsq, in_image, lam_beta, lam_dual)

    # associated graded
    def symbol(self, a: AlgebraElement, k: int, target: ExteriorAlgebra | None = None) -> AlgebraElement:
        if a.degree() > k:
            raise DegreeExceeded(f"element has filtration degree {a.degree()} > {k}")
        ext = target or exterior(self.field)
        return ext.element(a.component(k).coeffs)


def _kron(a, b) -> list:
    return [x * y for x in a for y in b]


def _proportionality(a: AlgebraElement, b: AlgebraElement):
    """lambda with a == lambda * b, or None."""
    i = next((n for n, x in enumerate(b.coeffs) if x), None)
    if i is None:
        return None
    lam = a.coeffs[i] / b.coeffs[i]
    return lam if a == b * lam else None


def clifford(field=SYMBOLIC) -> CliffordAlgebra:
    """The shared instance over ``field``."""
    return _clifford(field)


@lru_cache(maxsize=None)
def _clifford(field) -> CliffordAlgebra:
    return CliffordAlgebra(field)
