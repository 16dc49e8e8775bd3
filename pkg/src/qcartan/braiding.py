"""R-matrix braiding and Drinfeld's normalised braiding on module pairs.

sigma_{M,N} = flip o R with R built from

    kappa(m (x) n) = q^(wt(m) wt(n) / 2) m (x) n
    Theta = sum_k q^(s k(k-1)/2) (q - q^-1)^k / [k]! E^k (x) F^k

Texts disagree on the order of kappa and Theta and on the sign s.  All four
variants are enumerated by :func:`select_convention`; only one is equivariant
and reproduces the anchor values on V2pi (x) V2pi, and it is frozen in
:data:`CONVENTION`.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, image_basis
from .repn import ModuleSpec, decompose, restrict, tensor
from .scalar import q_factorial

__all__ = [
    "BraidingOp",
    "NormalisedBraidingOp",
    "Convention",
    "CONVENTION",
    "CONVENTIONS",
    "r_matrix",
    "ConventionMismatch",
    "NonScalarSquare",
    "NonMonomialScalar",
    "flip",
    "sigma",
    "sigma_inv",
    "sigma_tilde",
    "wedge_relation_ideal",
    "select_convention",
    "equivariance_failures",
]


class ConventionMismatch(ArithmeticError):
    pass


class NonScalarSquare(ArithmeticError):
    pass


class NonMonomialScalar(ArithmeticError):
    pass


@dataclass(frozen=True)
class Convention:
    kappa_first: bool  # R = Theta o kappa when True, kappa o Theta otherwise
    theta_sign: int  # s in q^(s k(k-1)/2)


CONVENTIONS = tuple(Convention(kf, s) for kf in (True, False) for s in (1, -1))
# fixed by select_convention(); tests re-run the selection
CONVENTION = Convention(kappa_first=False, theta_sign=1)


@dataclass(eq=False)
class BraidingOp:
    """A linear map M (x) N -> N (x) M."""

    source: tuple[ModuleSpec, ModuleSpec]
    matrix: Matrix

    @property
    def field(self):
        return self.matrix.field

    def apply(self, vec) -> list:
        return self.matrix.apply(vec)

    def apply_basis(self, i: int, j: int) -> list:
        """Image of (i-th basis vector of M) (x) (j-th basis vector of N)."""
        M, N = self.source
        f = self.field
        v = [f.zero] * (M.dim * N.dim)
        v[i * N.dim + j] = f.one
        return self.apply(v)

    def terms(self, i: int, j: int) -> list[tuple[int, int, object]]:
        """Nonzero (a, b, coef) with image = sum coef * n_a (x) m_b."""
        M, N = self.source
        out = self.apply_basis(i, j)
        return [(k // M.dim, k % M.dim, x) for k, x in enumerate(out) if x]


class NormalisedBraidingOp(BraidingOp):
    pass


def flip(M: ModuleSpec, N: ModuleSpec) -> Matrix:
    f = M.field
    P = Matrix.zeros(N.dim * M.dim, M.dim * N.dim, f)
    for i in range(M.dim):
        for j in range(N.dim):
            P.data[j * M.dim + i][i * N.dim + j] = f.one
    return P


def _kappa(M: ModuleSpec, N: ModuleSpec) -> Matrix:
    f = M.field
    return Matrix.diag([f.q_power(Fraction(a * b, 2)) for a in M.weights for b in N.weights], f)


def _theta(M: ModuleSpec, N: ModuleSpec, sign: int) -> Matrix:
    f = M.field
    out = Matrix.identity(M.dim * N.dim, f)
    Ek, Fk = M.E, N.F
    k = 1
    while not Ek.is_zero() and not Fk.is_zero():
        coef = f.q_power(Fraction(sign * k * (k - 1), 2)) * (f.q - f.one / f.q) ** k / q_factorial(k, f)
        out = out + Ek.kron(Fk).scale(coef)
        Ek, Fk = Ek @ M.E, Fk @ N.F
        k += 1
    return out


def r_matrix(M: ModuleSpec, N: ModuleSpec, conv: Convention = CONVENTION) -> Matrix:
    kap, th = _kappa(M, N), _theta(M, N, conv.theta_sign)
    return th @ kap if conv.kappa_first else kap @ th


_cache: dict = {}
_lock = threading.Lock()


def _memo(kind, M, N, conv, build):
    key = (kind, id(M), id(N), conv)
    with _lock:
        hit = _cache.get(key)
    if hit is not None and hit[0] is M and hit[1] is N:
        return hit[2]
    val = build()
    with _lock:
        _cache[key] = (M, N, val)
    return val


def sigma(M: ModuleSpec, N: ModuleSpec, conv: Convention = CONVENTION) -> BraidingOp:
    return _memo("sigma", M, N, conv, lambda: BraidingOp((M, N), flip(M, N) @ r_matrix(M, N, conv)))


def sigma_inv(M: ModuleSpec, N: ModuleSpec, conv: Convention = CONVENTION) -> BraidingOp:
    """The inverse of sigma_{N,M}, as a map M (x) N -> N (x) M."""
    return _memo("sigma_inv", M, N, conv, lambda: BraidingOp((M, N), _inverse_sigma(N, M, conv)))


def _inverse_sigma(N, M, conv) -> Matrix:
    # sigma^-1 = R^-1 o flip; R is unipotent Theta times diagonal kappa
    kap = _kappa(N, M)
    kap_inv = kap.map(lambda x: x and (kap.field.one / x))
    th = _theta(N, M, conv.theta_sign)
    th_inv = _unipotent_inverse(th)
    r_inv = kap_inv @ th_inv if conv.kappa_first else th_inv @ kap_inv
    return r_inv @ flip(M, N)


def _unipotent_inverse(th: Matrix) -> Matrix:
    # th = 1 + nilpotent; sum the geometric series
    n = th.rows
    one = Matrix.identity(n, th.field)
    nil = th - one
    out, term = one, one
    for _ in range(n):
        term = -(term @ nil)
        if term.is_zero():
            return out
        out = out + term
    raise ArithmeticError("Theta - 1 is not nilpotent")


def equivariance_failures(op: Matrix, M: ModuleSpec, N: ModuleSpec) -> list[str]:
    """Generators g for which g o op != op o g, where op: M (x) N -> N (x) M."""
    MN, NM = tensor(M, N), tensor(N, M)
    return [g for g in ("E", "F", "K", "k") if NM.action(g) @ op != op @ MN.action(g)]


def sigma_tilde(M: ModuleSpec, N: ModuleSpec, conv: Convention = CONVENTION) -> NormalisedBraidingOp:
    """sigma o (sigma_{N,M} o sigma_{M,N})^(-1/2), rescaled on each irreducible summand."""
    return _memo("sigma_tilde", M, N, conv, lambda: _build_sigma_tilde(M, N, conv))


def _build_sigma_tilde(M, N, conv) -> NormalisedBraidingOp:
    f = M.field
    s = sigma(M, N, conv).matrix
    T = sigma(N, M, conv).matrix @ s
    dm, dn = decompose(M), decompose(N)
    BM, BN = dm.change_of_basis(), dn.change_of_basis()
    # middle: the rescaling operator in the basis BM (x) BN
    middle = Matrix.zeros(M.dim * N.dim, M.dim * N.dim, f)
    offs_m = _offsets(dm)
    offs_n = _offsets(dn)
    for a, sa in enumerate(dm.summands):
        for b, sb in enumerate(dn.summands):
            Ma = restrict(M, sa.basis)
            Nb = restrict(N, sb.basis)
            pair = tensor(Ma, Nb)
            dp = decompose(pair)
            # ambient index of pair coordinate (i, j)
            amb = [(offs_m[a] + i) * N.dim + offs_n[b] + j for i in range(Ma.dim) for j in range(Nb.dim)]
            emb = Matrix.from_columns(
                [[x for x in _kron_vec(sa.basis[i], sb.basis[j])] for i in range(Ma.dim) for j in range(Nb.dim)], f
            )
            Q = dp.change_of_basis()
            scales = []
            for summand in dp.summands:
                vecs = [emb.apply(v) for v in summand.basis]
                lam = _eigenvalue(T, vecs, f)
                k = f.q_exponent(lam)
                if k is None:
                    raise NonMonomialScalar(f"sigma^2 acts by {lam}, not a power of q")
                scales.extend([f.q_power(-k / 2)] * summand.dim)
            block = Q @ Matrix.diag(scales, f) @ Q.inverse()
            for r, ar in enumerate(amb):
                for cidx, ac in enumerate(amb):
                    middle.data[ar][ac] = block.data[r][cidx]
    basis_change = BM.kron(BN)
    rescale = basis_change @ middle @ basis_change.inverse()
    return NormalisedBraidingOp((M, N), s @ rescale)


def _offsets(d) -> list[int]:
    out, acc = [], 0
    for s in d.summands:
        out.append(acc)
        acc += s.dim
    return out


def _kron_vec(a, b) -> list:
    return [x * y for x in a for y in b]


def _eigenvalue(T: Matrix, vecs, f):
    lam = None
    for v in vecs:
        tv = T.apply(v)
        i = next(j for j, x in enumerate(v) if x)
        mu = tv[i] / v[i]
        if lam is None:
            lam = mu
        if mu != lam or any(a != lam * b for a, b in zip(tv, v)):
            raise NonScalarSquare("sigma_{N,M} sigma_{M,N} is not scalar on an irreducible summand")
    return lam


def wedge_relation_ideal(M: ModuleSpec, conv: Convention = CONVENTION) -> list[list]:
    """Basis of the image of id + sigma_tilde on M (x) M."""
    st = sigma_tilde(M, M, conv).matrix
    return image_basis(Matrix.identity(M.dim * M.dim, M.field) + st)


def select_convention(M: ModuleSpec, anchors) -> Convention:
    """The unique convention whose braiding on M (x) M is equivariant and hits every anchor.

    ``anchors`` is a list of ``(kind, i, j, expected_vector)`` with kind in
    {"sigma", "sigma_inv"}.
    """
    ok = []
    for conv in CONVENTIONS:
        s = flip(M, M) @ r_matrix(M, M, conv)
        if equivariance_failures(s, M, M):
            continue
        si = _inverse_sigma(M, M, conv)
        mats = {"sigma": s, "sigma_inv": si}
        good = True
        for kind, i, j, expected in anchors:
            v = [M.field.zero] * (M.dim * M.dim)
            v[i * M.dim + j] = M.field.one
            if mats[kind].apply(v) != list(expected):
                good = False
        if good:
            ok.append(conv)
    if len(ok) != 1:
        raise ConventionMismatch(f"{len(ok)} conventions reproduce the anchors: {ok}")
    return ok[0]
