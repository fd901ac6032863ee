import pytest

from chevmod.liealg.chevalley import structure_constants
from chevmod.liealg.reps import build_small_rep, check_commutation, commutator, mat_mul
from chevmod.liealg.roots import CartanType, LieError, build_root_system

CASES = [
    (CartanType("A", 3), 1, 4),
    (CartanType("A", 3), 2, 6),
    (CartanType("B", 3), 1, 7),
    (CartanType("B", 4), 4, 16),
    (CartanType("C", 3), 1, 6),
    (CartanType("D", 4), 1, 8),
    (CartanType("D", 5), 1, 10),
    (CartanType("D", 5), 5, 16),
    (CartanType("E", 6), 1, 27),
    (CartanType("E", 6), 6, 27),
    (CartanType("E", 7), 7, 56),
]


@pytest.mark.parametrize("kind,weight,dim", CASES, ids=lambda x: str(x))
def test_dimension_and_relations(kind, weight, dim):
    rep = build_small_rep(kind, weight)
    assert rep.dim == dim
    assert len(set(rep.weights)) == dim  # minuscule or vector: weights are multiplicity free
    assert check_commutation(rep, structure_constants(build_root_system(kind))) == []


def test_highest_weight_present():
    rep = build_small_rep(CartanType("E", 7), 7)
    hw = tuple(1 if i == 6 else 0 for i in range(7))
    assert hw in rep.weights


def test_root_vectors_nilpotent_on_minuscule():
    # on a minuscule module every root vector squares to zero
    rep = build_small_rep(CartanType("E", 6), 1)
    for r in build_root_system(CartanType("E", 6)).roots:
        assert mat_mul(rep.matrix(r), rep.matrix(r)) == {}


def test_commutator_antisymmetric():
    rep = build_small_rep(CartanType("D", 5), 1)
    a, b = rep.matrix((1, 0, 0, 0, 0)), rep.matrix((0, 1, 0, 0, 0))
    ab, ba = commutator(a, b), commutator(b, a)
    assert ab == {k: -v for k, v in ba.items()}


@pytest.mark.parametrize("kind,weight", [(CartanType("E", 8), 1), (CartanType("G", 2), 1), (CartanType("A", 2), 3)])
def test_unsupported(kind, weight):
    with pytest.raises(LieError):
        build_small_rep(kind, weight)
