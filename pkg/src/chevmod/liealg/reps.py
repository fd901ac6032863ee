"""Small representations in a weight basis with exact sparse matrices.

Minuscule modules use the Weyl orbit of the highest weight; every simple
generator moves one weight to a neighbour with coefficient 1, and the other
root vectors are generated through the extraspecial brackets.  The B_n vector
module is written down directly.  Every module is checked against the
Chevalley commutation relations at construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .chevalley import ChevalleyBasis, structure_constants
from .roots import CartanType, LieError, Root, add, build_root_system, neg

SparseMatrix = dict  # (row, col) -> Fraction

MINUSCULE = {
    "A": lambda n: set(range(1, n + 1)),
    "B": lambda n: {n},
    "C": lambda n: {1},
    "D": lambda n: {1, n - 1, n},
    "E": lambda n: {6: {1, 6}, 7: {7}, 8: set()}[n],
    "F": lambda n: set(),
    "G": lambda n: set(),
}


@dataclass(frozen=True)
class Representation:
    kind: CartanType
    highest_weight: int
    dim: int
    weights: tuple  # Dynkin labels <mu, alpha_i^vee>
    action: dict = field(repr=False)  # Root -> SparseMatrix

    def matrix(self, r: Root) -> SparseMatrix:
        return self.action[tuple(r)]

    def cartan_matrix(self, coroot_coords) -> SparseMatrix:
        out = {}
        for k, mu in enumerate(self.weights):
            v = sum(Fraction(c) * m for c, m in zip(coroot_coords, mu))
            if v:
                out[(k, k)] = v
        return out

    def dense(self, m: SparseMatrix) -> list[list[Fraction]]:
        d = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for (i, j), v in m.items():
            d[i][j] = v
        return d


def mat_mul(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    by_row: dict = {}
    for (i, j), v in b.items():
        by_row.setdefault(i, []).append((j, v))
    out: dict = {}
    for (i, k), v in a.items():
        for j, w in by_row.get(k, ()):
            nv = out.get((i, j), 0) + v * w
            if nv:
                out[(i, j)] = nv
            else:
                out.pop((i, j), None)
    return out


def mat_add(a: SparseMatrix, b: SparseMatrix, cb=1) -> SparseMatrix:
    out = dict(a)
    for key, v in b.items():
        nv = out.get(key, 0) + cb * v
        if nv:
            out[key] = nv
        else:
            out.pop(key, None)
    return out


def commutator(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    return mat_add(mat_mul(a, b), mat_mul(b, a), -1)


def _weight_orbit(kind: CartanType, index: int) -> list[tuple]:
    system = build_root_system(kind)
    n = kind.rank
    top = tuple(1 if i == index - 1 else 0 for i in range(n))
    # alpha_i in Dynkin labels is column i of the Cartan matrix
    cols = [tuple(system.cartan[j][i] for j in range(n)) for i in range(n)]
    seen = [top]
    known = {top}
    k = 0
    while k < len(seen):
        mu = seen[k]
        k += 1
        for i in range(n):
            if mu[i] > 0:
                if mu[i] != 1:
                    raise LieError(f"{kind} weight {index} is not minuscule")
                nu = tuple(m - c for m, c in zip(mu, cols[i]))
                if nu not in known:
                    known.add(nu)
                    seen.append(nu)
    return seen


def _simple_minuscule(kind: CartanType, index: int):
    weights = _weight_orbit(kind, index)
    pos = {w: k for k, w in enumerate(weights)}
    n = kind.rank
    system = build_root_system(kind)
    cols = [tuple(system.cartan[j][i] for j in range(n)) for i in range(n)]
    raise_, lower = [], []
    for i in range(n):
        e, f = {}, {}
        for k, mu in enumerate(weights):
            if mu[i] == 1:
                nu = tuple(m - c for m, c in zip(mu, cols[i]))
                f[(pos[nu], k)] = Fraction(1)
                e[(k, pos[nu])] = Fraction(1)
        raise_.append(e)
        lower.append(f)
    return weights, raise_, lower


def _simple_b_vector(n: int):
    # basis order: e_1..e_n, e_0, e_-n..e_-1 ; weights +-eps_i and 0
    dim = 2 * n + 1

    def idx(i):  # i in 1..n, 0, -n..-1
        if i > 0:
            return i - 1
        if i == 0:
            return n
        return dim + i

    raise_, lower = [], []
    for i in range(1, n):
        e = {(idx(i), idx(i + 1)): Fraction(1), (idx(-(i + 1)), idx(-i)): Fraction(-1)}
        f = {(idx(i + 1), idx(i)): Fraction(1), (idx(-i), idx(-(i + 1))): Fraction(-1)}
        raise_.append(e)
        lower.append(f)
    raise_.append({(idx(n), idx(0)): Fraction(1), (idx(0), idx(-n)): Fraction(-1)})
    lower.append({(idx(0), idx(n)): Fraction(2), (idx(-n), idx(0)): Fraction(-2)})
    # Dynkin labels of eps_i: <eps_i, alpha_j^vee>
    def eps(i):
        lab = [0] * n
        for j in range(1, n):
            lab[j - 1] = (1 if i == j else 0) - (1 if i == j + 1 else 0)
        lab[n - 1] = 2 if i == n else 0
        return lab

    weights = [None] * dim
    for i in range(1, n + 1):
        weights[idx(i)] = tuple(eps(i))
        weights[idx(-i)] = tuple(-x for x in eps(i))
    weights[idx(0)] = (0,) * n
    return weights, raise_, lower


def _generate(basis: ChevalleyBasis, raise_, lower) -> dict:
    system = basis.system
    action = {}
    for i in range(system.rank):
        a = system.simple_root(i + 1)
        action[a] = raise_[i]
        action[neg(a)] = lower[i]
    for xi in system.positive_roots:
        if sum(xi) < 2:
            continue
        alpha, beta = basis.extraspecial[xi]
        nab = basis.N(alpha, beta)
        c = commutator(action[alpha], action[beta])
        action[xi] = {k: v / nab for k, v in c.items()}
        # [X_-a, X_-b] = N_{-a,-b} X_{-xi} = -N_{a,b} X_{-xi}
        c = commutator(action[neg(alpha)], action[neg(beta)])
        action[neg(xi)] = {k: -v / nab for k, v in c.items()}
    return action


def check_commutation(rep: Representation, basis: ChevalleyBasis) -> list[tuple]:
    """Return the root pairs whose commutator violates the Chevalley relations."""
    system = basis.system
    bad = []
    roots = system.roots
    for a in roots:
        for b in roots:
            lhs = commutator(rep.action[a], rep.action[b])
            s = add(a, b)
            if not any(s):
                rhs = rep.cartan_matrix(system.coroot(a))
            elif system.is_root(s):
                rhs = {k: v * basis.N(a, b) for k, v in rep.action[s].items()}
            else:
                rhs = {}
            if lhs != rhs:
                bad.append((a, b))
    # [h_i, X_r] = <r, alpha_i^vee> X_r
    for i in range(system.rank):
        h = rep.cartan_matrix(tuple(1 if j == i else 0 for j in range(system.rank)))
        for r in roots:
            want = {k: v * system.pairing(r, i) for k, v in rep.action[r].items() if system.pairing(r, i)}
            if commutator(h, rep.action[r]) != want:
                bad.append((("h", i + 1), r))
    return bad


@lru_cache(maxsize=None)
def build_small_rep(kind: CartanType, fundamental_index: int) -> Representation:
    """Minuscule modules, and the vector module of B_n (fundamental weight 1)."""
    n = kind.rank
    if not 1 <= fundamental_index <= n:
        raise LieError(f"no fundamental weight {fundamental_index} for {kind}")
    basis = structure_constants(build_root_system(kind))
    if fundamental_index in MINUSCULE[kind.family](n):
        weights, raise_, lower = _simple_minuscule(kind, fundamental_index)
    elif kind.family == "B" and fundamental_index == 1:
        weights, raise_, lower = _simple_b_vector(n)
    else:
        raise LieError(f"unsupported representation {kind} weight {fundamental_index}")
    action = _generate(basis, raise_, lower)
    rep = Representation(kind, fundamental_index, len(weights), tuple(weights), action)
    bad = check_commutation(rep, basis)
    if bad:
        raise LieError(f"{kind} weight {fundamental_index}: relations fail at {bad[:3]}")
    return rep
