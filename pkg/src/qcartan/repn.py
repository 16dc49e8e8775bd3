"""Finite-dimensional type-1 U_q(sl2)-modules given by generator matrices."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .linalg import Matrix, kernel, solve
from .scalar import SYMBOLIC
from .uq import adjoint_matrix

__all__ = [
    "ModuleSpec",
    "Summand",
    "Decomposition",
    "DecompositionIncomplete",
    "v2pi",
    "trivial",
    "tensor",
    "decompose",
    "invariants",
    "restrict",
]


class DecompositionIncomplete(ArithmeticError):
    pass


@dataclass(eq=False)
class ModuleSpec:
    name: str
    labels: list[str]
    weights: list[int]
    E: Matrix
    F: Matrix
    K: Matrix
    Kinv: Matrix
    field: object = SYMBOLIC

    @property
    def dim(self) -> int:
        return len(self.labels)

    def action(self, g: str) -> Matrix:
        return {"E": self.E, "F": self.F, "K": self.K, "k": self.Kinv, "Kinv": self.Kinv}[g]

    def weight_indices(self, w: int) -> list[int]:
        return [i for i, x in enumerate(self.weights) if x == w]

    def invariant_violations(self) -> list[str]:
        """Names of the defining identities that fail; empty when the module is valid."""
        f = self.field
        n = self.dim
        bad = []
        if self.K != Matrix.diag([f.q_power(w) for w in self.weights], f):
            bad.append("K diagonal with q^weight")
        if not (self.K @ self.Kinv).is_identity():
            bad.append("K Kinv = 1")
        if self.K @ self.E != (self.E @ self.K).scale(f.q_power(2)):
            bad.append("KE = q^2 EK")
        if self.K @ self.F != (self.F @ self.K).scale(f.q_power(-2)):
            bad.append("KF = q^-2 FK")
        comm = self.E @ self.F - self.F @ self.E
        rhs = (self.K - self.Kinv).scale(f.one / (f.q - f.one / f.q))
        if comm != rhs:
            bad.append("[E,F] = (K-K^-1)/(q-q^-1)")
        if any(m.shape != (n, n) for m in (self.E, self.F, self.K, self.Kinv)):
            bad.append("shapes")
        return bad


def _weight_module(name, labels, weights, E, F, field) -> ModuleSpec:
    K = Matrix.diag([field.q_power(w) for w in weights], field)
    Kinv = Matrix.diag([field.q_power(-w) for w in weights], field)
    return ModuleSpec(name, list(labels), list(weights), E, F, K, Kinv, field)


def v2pi(field=SYMBOLIC) -> ModuleSpec:
    """The quantised adjoint module on (v2, v0, v-2), actions taken from ad on (X, Z, Y)."""
    return ModuleSpec(
        "V2pi",
        ["v2", "v0", "vm2"],
        [2, 0, -2],
        adjoint_matrix("E", field),
        adjoint_matrix("F", field),
        adjoint_matrix("K", field),
        adjoint_matrix("k", field),
        field,
    )


def trivial(field=SYMBOLIC) -> ModuleSpec:
    z = Matrix.zeros(1, 1, field)
    return _weight_module("V0", ["1"], [0], z, z.copy(), field)


def tensor(M: ModuleSpec, N: ModuleSpec) -> ModuleSpec:
    """M (x) N with E -> E(x)K + 1(x)E, F -> F(x)1 + K^-1(x)F, K -> K(x)K."""
    f = M.field
    IM, IN = Matrix.identity(M.dim, f), Matrix.identity(N.dim, f)
    E = M.E.kron(N.K) + IM.kron(N.E)
    F = M.F.kron(IN) + M.Kinv.kron(N.F)
    labels = [f"{a}(x){b}" for a in M.labels for b in N.labels]
    weights = [a + b for a in M.weights for b in N.weights]
    return ModuleSpec(f"{M.name}(x){N.name}", labels, weights, E, F, M.K.kron(N.K), M.Kinv.kron(N.Kinv), f)


@dataclass
class Summand:
    highest_weight: int
    hw_vector: list
    basis: list  # [v, Fv, F^2 v, ...] in the ambient coordinates

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass
class Decomposition:
    module: ModuleSpec
    summands: list[Summand] = dc_field(default_factory=list)

    def change_of_basis(self) -> Matrix:
        cols = [v for s in self.summands for v in s.basis]
        return Matrix.from_columns(cols, self.module.field)

    def highest_weights(self) -> list[int]:
        return [s.highest_weight for s in self.summands]


def decompose(M: ModuleSpec) -> Decomposition:
    """Split M into irreducibles, highest weights in decreasing order.

    Highest-weight vectors are the kernel basis of E on each weight space; the
    rest of each copy is generated by repeated F.
    """
    f = M.field
    out = Decomposition(M)
    for w in sorted({x for x in M.weights if x >= 0}, reverse=True):
        idx = M.weight_indices(w)
        sub = M.E.submatrix(range(M.dim), idx)
        for kv in kernel(sub):
            v = [f.zero] * M.dim
            for i, x in zip(idx, kv):
                v[i] = x
            basis = [v]
            for k in range(w):
                basis.append(M.F.apply(basis[-1]))
                if not any(basis[-1]):
                    raise DecompositionIncomplete(f"F^{k + 1} kills a weight-{w} highest-weight vector")
            if any(M.F.apply(basis[-1])):
                raise DecompositionIncomplete(f"F^{w + 1} does not kill a weight-{w} highest-weight vector")
            out.summands.append(Summand(w, v, basis))
    if sum(s.dim for s in out.summands) != M.dim:
        raise DecompositionIncomplete(f"summands cover {sum(s.dim for s in out.summands)} of {M.dim} dimensions")
    return out


def restrict(M: ModuleSpec, basis: Sequence[Sequence], name: str | None = None) -> ModuleSpec:
    """The submodule spanned by ``basis`` (weight vectors), in that basis."""
    f = M.field
    B = Matrix.from_columns(basis, f)

    def coords(vec):
        return solve(B, vec)

    weights = []
    for v in basis:
        kv = M.K.apply(v)
        i = next(j for j, x in enumerate(v) if x)
        e = f.q_exponent(kv[i] / v[i])
        if e is None or e.denominator != 1:
            raise ValueError("basis vector is not a weight vector")
        weights.append(int(e))
    E = Matrix.from_columns([coords(M.E.apply(v)) for v in basis], f)
    F = Matrix.from_columns([coords(M.F.apply(v)) for v in basis], f)
    labels = [f"b{i}" for i in range(len(basis))]
    return _weight_module(name or f"sub({M.name})", labels, weights, E, F, f)


def invariants(M: ModuleSpec) -> list[list]:
    """Basis of the joint kernel of E, F and K - 1."""
    f = M.field
    n = M.dim
    stacked = Matrix._raw(
        [row[:] for row in M.E.data] + [row[:] for row in M.F.data] + (M.K - Matrix.identity(n, f)).data,
        f,
        n,
    )
    return kernel(stacked)
