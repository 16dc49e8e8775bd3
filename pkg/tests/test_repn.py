import pytest

from qcartan.linalg import Matrix, rank
from qcartan.repn import DecompositionIncomplete, ModuleSpec, decompose, invariants, restrict, tensor, trivial, v2pi
from qcartan.scalar import SYMBOLIC, PointField

q = SYMBOLIC.q


@pytest.mark.parametrize("field", [SYMBOLIC, PointField(3, 1)], ids=["symbolic", "q=3"])
def test_modules_satisfy_relations(field):
    V = v2pi(field)
    assert V.invariant_violations() == []
    assert tensor(V, V).invariant_violations() == []
    assert tensor(V, trivial(field)).invariant_violations() == []


def test_v2pi_weights_and_labels():
    V = v2pi()
    assert V.dim == 3
    assert V.weights == [2, 0, -2]
    assert V.labels == ["v2", "v0", "vm2"]
    assert V.weight_indices(0) == [1]


def test_tensor_weights_and_coproduct():
    V = v2pi()
    VV = tensor(V, V)
    assert VV.dim == 9
    assert VV.weights == [a + b for a in (2, 0, -2) for b in (2, 0, -2)]
    # E acts on v0 (x) v0 as E v0 (x) K v0 + v0 (x) E v0
    v = [0] * 9
    v[4] = 1
    out = VV.E.apply(v)
    e = -(1 + q**2) / q  # E v0 = e v2
    assert out[1] == e and out[3] == e
    assert all(x == 0 for i, x in enumerate(out) if i not in (1, 3))


def test_decompose_tensor_square():
    V = v2pi()
    VV = tensor(V, V)
    d = decompose(VV)
    assert d.highest_weights() == [4, 2, 0]
    assert [s.dim for s in d.summands] == [5, 3, 1]
    assert rank(d.change_of_basis()) == 9
    for s in d.summands:
        assert all(x == 0 for x in VV.E.apply(s.hw_vector))


def test_decompose_rejects_broken_module():
    V = v2pi()
    bad = ModuleSpec("bad", V.labels, V.weights, V.E, Matrix.zeros(3, 3), V.K, V.Kinv)
    with pytest.raises(DecompositionIncomplete):
        decompose(bad)


def test_restrict_recovers_v2pi():
    V = v2pi()
    VV = tensor(V, V)
    middle = decompose(VV).summands[1]
    sub = restrict(VV, middle.basis)
    assert sub.weights == [2, 0, -2]
    assert sub.invariant_violations() == []


def test_invariants():
    V = v2pi()
    assert invariants(V) == []
    (inv,) = invariants(tensor(V, V))
    VV = tensor(V, V)
    for g in "EF":
        assert all(x == 0 for x in VV.action(g).apply(inv))
    assert VV.K.apply(inv) == inv
    assert len(invariants(trivial())) == 1
