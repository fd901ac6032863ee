import random
from fractions import Fraction

import pytest

from chevmod.classical import (
    BilinearSpace,
    ClassicalError,
    admissible_pairs,
    enumerate_bilinear_tensor,
    enumerate_exterior_square,
    enumerate_symmetric_square,
    enumerate_tensor_gl,
    enumerator_classes,
    finite_field_classes,
    literal_row_constraint_violations,
    orbit_dimension,
    split_parity,
    witt_invariants,
)
from chevmod.linalg import dense_rank, matmul, transpose

PARAMS = range(1, 9)


def _space(case, n):
    return BilinearSpace.split_skew(n) if case == "C" else BilinearSpace.split_symmetric(n)


def _cases(max_n=8):
    for n in range(1, max_n + 1):
        yield ("B" if n % 2 else "D"), n
        if n % 2 == 0:
            yield "C", n


# ---- counts and closed-form dimensions --------------------------------------

@pytest.mark.parametrize("n1", PARAMS)
def test_tensor_counts_and_dims(n1):
    for n2 in PARAMS:
        orbits = enumerate_tensor_gl(n1, n2)
        assert len(orbits) == min(n1, n2) + 1
        for o in orbits:
            r = o.rank_a
            assert dense_rank(o.representative) == r
            assert orbit_dimension(o) == r * (n1 + n2 - r)


@pytest.mark.parametrize("n", PARAMS)
def test_symmetric_square(n):
    orbits = enumerate_symmetric_square(n)
    assert len(orbits) == n + 1
    for o in orbits:
        r = o.rank_a
        assert dense_rank(o.representative) == r
        assert orbit_dimension(o) == r * (2 * n - r + 1) // 2


@pytest.mark.parametrize("n", range(2, 9))
def test_exterior_square(n):
    orbits = enumerate_exterior_square(n)
    assert len(orbits) == n // 2 + 1
    for o in orbits:
        a = o.representative
        assert all(a[i][j] == -a[j][i] for i in range(n) for j in range(n))
        p = o.rank_a // 2
        assert dense_rank(a) == 2 * p
        assert orbit_dimension(o) == p * (2 * n - 2 * p - 1)


def test_quoted_examples():
    assert [orbit_dimension(o) for o in reversed(enumerate_exterior_square(6))] == [15, 14, 9, 0]
    assert [orbit_dimension(o) for o in reversed(enumerate_exterior_square(5))] == [10, 7, 0]
    assert [orbit_dimension(o) for o in reversed(enumerate_symmetric_square(3))] == [6, 5, 3, 0]


def test_invalid_parameters():
    with pytest.raises(ClassicalError):
        enumerate_tensor_gl(0, 3)
    with pytest.raises(ClassicalError):
        enumerate_exterior_square(1)
    with pytest.raises(ClassicalError):
        BilinearSpace.split_skew(3)
    with pytest.raises(ClassicalError):
        enumerate_bilinear_tensor(2, BilinearSpace.zero(4))
    with pytest.raises(ClassicalError):
        BilinearSpace(2, "symmetric", ((0, 1), (2, 0)))


# ---- bilinear tensor modules ------------------------------------------------

@pytest.mark.parametrize("case,n", list(_cases()))
def test_bilinear_enumeration(case, n):
    space = _space(case, n)
    for k in PARAMS:
        orbits = enumerate_bilinear_tensor(k, space)
        pairs = admissible_pairs(k, n, case)
        split = [o for o in orbits if o.split_tag]
        if case == "D" and k >= n // 2:
            # the pair appears exactly for rank_a = q, witt_rank = 0
            assert sorted(o.split_tag for o in split) == ["+", "-"]
            assert {(o.rank_a, o.witt_rank) for o in split} == {(n // 2, 0)}
            assert {split_parity(o.representative, space) for o in split} == {0, 1}
        else:
            assert not split
        assert len(orbits) == len(pairs) + len(split) // 2
        keys = [o.key for o in orbits]
        assert len(set(keys)) == len(keys)
        for o in orbits:
            assert len(o.representative) == k
            assert witt_invariants(o.representative, space) == (o.rank_a, o.witt_rank)


@pytest.mark.parametrize("case,n", list(_cases()))
def test_inequalities(case, n):
    space = _space(case, n)
    for k in PARAMS:
        for o in enumerate_bilinear_tensor(k, space):
            r, w = o.rank_a, o.witt_rank
            assert 0 <= w <= r <= min(k, n)
            # the isotropic part of the row space sits in the radical of its own restriction
            assert 2 * r - w <= n
            if case == "C":
                assert w % 2 == 0


def test_witt_rank_example():
    space = BilinearSpace.split_symmetric(6)
    assert [(o.rank_a, o.witt_rank) for o in enumerate_bilinear_tensor(1, space)] == [(0, 0), (1, 0), (1, 1)]


def test_literal_row_bound_drops_orbits():
    # the bound 2s + p <= k would reject isotropic rank-2 rows when k = 3
    extra = literal_row_constraint_violations(3, BilinearSpace.split_symmetric(6))
    assert any(o.rank_a - o.witt_rank >= 2 for o in extra)


@pytest.mark.parametrize("case,n,k", [("D", 6, 3), ("B", 5, 3), ("C", 6, 2), ("D", 8, 4), ("B", 7, 1)])
def test_bilinear_dims_are_distinct_by_key(case, n, k):
    space = _space(case, n)
    orbits = enumerate_bilinear_tensor(k, space)
    dims = {}
    for o in orbits:
        dims.setdefault((o.rank_a, o.witt_rank), set()).add(orbit_dimension(o, space))
    # the split pair has equal dimensions
    assert all(len(v) == 1 for v in dims.values())
    zero = [o for o in orbits if o.rank_a == 0][0]
    assert orbit_dimension(zero, space) == 0
    full = max(orbit_dimension(o, space) for o in orbits)
    assert full == k * n


# ---- isometry invariance ----------------------------------------------------

def _identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _outer(col, row):
    return [[c * r for r in row] for c in col]


def _random_vector(rng, n):
    return [Fraction(rng.randint(-2, 2)) for _ in range(n)]


def _reflection(rng, space):
    """x -> x - 2 B(x, v) / B(v, v) v, acting on row vectors."""
    n = space.dim
    while True:
        v = _random_vector(rng, n)
        jv = [sum(space.gram[i][t] * v[t] for t in range(n)) for i in range(n)]
        q = sum(a * b for a, b in zip(v, jv))
        if q:
            break
    o = _outer(jv, v)
    return [[_identity(n)[i][j] - 2 * o[i][j] / q for j in range(n)] for i in range(n)]


def _transvection(rng, space):
    """x -> x + c B(x, v) v, an isometry of a skew form."""
    n = space.dim
    v = _random_vector(rng, n)
    c = Fraction(rng.choice([1, -1, 2, 3]), rng.choice([1, 2]))
    jv = [sum(space.gram[i][t] * v[t] for t in range(n)) for i in range(n)]
    o = _outer(jv, v)
    return [[_identity(n)[i][j] + c * o[i][j] for j in range(n)] for i in range(n)]


def _random_gl(rng, k):
    while True:
        g = [[Fraction(rng.randint(-3, 3)) for _ in range(k)] for _ in range(k)]
        if dense_rank(g) == k:
            return g


TRIALS = 120


@pytest.mark.parametrize("case,n,k", [("D", 6, 3), ("B", 5, 3), ("C", 6, 3), ("D", 4, 2), ("B", 7, 4), ("C", 4, 2)])
def test_witt_invariants_under_isometries(case, n, k):
    rng = random.Random(1000 * n + k)
    space = _space(case, n)
    gram = [list(r) for r in space.gram]
    reps = [o.representative for o in enumerate_bilinear_tensor(k, space)]
    for trial in range(TRIALS):
        if trial % 2:
            a = [_random_vector(rng, n) for _ in range(k)]
        else:
            a = [list(r) for r in rng.choice(reps)]
        before = witt_invariants(a, space)
        parity = split_parity(a, space)
        g = _random_gl(rng, k)
        isom = _transvection(rng, space) if case == "C" else _reflection(rng, space)
        assert matmul(matmul(isom, gram), transpose(isom)) == gram
        b = matmul(matmul(g, a), isom)
        assert witt_invariants(b, space) == before
        if parity is not None:
            # one reflection swaps the two families of maximal isotropic subspaces, two preserve them
            assert split_parity(b, space) == 1 - parity
            c = matmul(b, _reflection(rng, space))
            assert split_parity(c, space) == parity


# ---- finite-field oracle ----------------------------------------------------

@pytest.mark.parametrize("case,n", list(_cases(6)))
@pytest.mark.parametrize("k", [1, 2])
def test_finite_field_oracle_f3(case, n, k):
    space = _space(case, n)
    assert finite_field_classes(k, space, 3) == enumerator_classes(k, space)


@pytest.mark.parametrize("case,n", [c for c in _cases(4)])
def test_finite_field_oracle_f5(case, n):
    space = _space(case, n)
    for k in (1, 2):
        if k * n <= 8:
            assert finite_field_classes(k, space, 5) == enumerator_classes(k, space)


def test_oracle_rejects_large_k():
    with pytest.raises(ClassicalError):
        finite_field_classes(3, BilinearSpace.split_symmetric(3))
