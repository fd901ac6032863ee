"""Orbits of classical internal modules, classified by rank invariants.

Matrices are k x N with rows in the bilinear space, so the pulled-back form
of A is A J A^t.  Orbits of GL(k) x O(J) are labelled by rank(A) and the
Witt rank rank(A J A^t); for an even split symmetric form the connected
group splits the totally isotropic orbit of maximal dimension in two.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import Echelon, dense_rank, matmul, rank_mod_p, transpose


class ClassicalError(ValueError):
    pass


Matrix = tuple  # tuple of tuples of Fraction


def _mat(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def _zeros(r: int, c: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * c for _ in range(r)]


@dataclass(frozen=True)
class BilinearSpace:
    dim: int
    symmetry: str  # "symmetric", "skew" or "zero"
    gram: Matrix = field(repr=False)

    def __post_init__(self):
        if self.symmetry not in ("symmetric", "skew", "zero"):
            raise ClassicalError(f"unknown symmetry {self.symmetry!r}")
        g = self.gram
        if len(g) != self.dim or any(len(r) != self.dim for r in g):
            raise ClassicalError("gram matrix has the wrong shape")
        sign = {"symmetric": 1, "skew": -1}.get(self.symmetry)
        for i in range(self.dim):
            for j in range(self.dim):
                if sign is None:
                    if g[i][j]:
                        raise ClassicalError("zero form with a nonzero gram entry")
                elif g[i][j] != sign * g[j][i]:
                    raise ClassicalError(f"gram matrix is not {self.symmetry}")

    @property
    def nondegenerate(self) -> bool:
        return self.dim == 0 or dense_rank(self.gram) == self.dim

    @classmethod
    def split_symmetric(cls, n: int) -> "BilinearSpace":
        """Anti-diagonal form: basis e_1..e_q, [middle], f_q..f_1 with (e_i, f_i) = 1."""
        return cls(n, "symmetric", _mat([[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)]))

    @classmethod
    def split_skew(cls, n: int) -> "BilinearSpace":
        if n % 2:
            raise ClassicalError("a nondegenerate skew form needs even dimension")
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][n - 1 - i] = 1 if i < n // 2 else -1
        return cls(n, "skew", _mat(rows))

    @classmethod
    def zero(cls, n: int) -> "BilinearSpace":
        return cls(n, "zero", _mat(_zeros(n, n)))


@dataclass(frozen=True)
class ClassicalOrbit:
    module: str  # "bilinear", "tensor", "sym2" or "ext2"
    rank_a: int
    witt_rank: int | None
    representative: Matrix = field(repr=False)
    split_tag: str | None = None

    @property
    def key(self) -> tuple:
        return (self.rank_a, self.witt_rank, self.split_tag)


def _check_shape(a, cols: int) -> None:
    if any(len(r) != cols for r in a):
        raise ClassicalError(f"expected {cols} columns")


def witt_invariants(a, space: BilinearSpace) -> tuple[int, int]:
    _check_shape(a, space.dim)
    a = _mat(a)
    if not a:
        return 0, 0
    pulled = matmul(matmul(a, space.gram), transpose(a))
    return dense_rank(a), dense_rank(pulled)


def enumerate_tensor_gl(n1: int, n2: int) -> list[ClassicalOrbit]:
    if n1 < 1 or n2 < 1:
        raise ClassicalError("sizes must be positive")
    out = []
    for r in range(min(n1, n2) + 1):
        m = _zeros(n1, n2)
        for t in range(r):
            m[t][t] = Fraction(1)
        out.append(ClassicalOrbit("tensor", r, None, _mat(m)))
    return out


def enumerate_symmetric_square(n: int) -> list[ClassicalOrbit]:
    if n < 1:
        raise ClassicalError("n must be positive")
    out = []
    for r in range(n + 1):
        m = _zeros(n, n)
        for t in range(r):
            m[t][t] = Fraction(1)
        out.append(ClassicalOrbit("sym2", r, None, _mat(m)))
    return out


def exterior_representative(n: int, p: int) -> Matrix:
    """Blocks J_p in the corners (reverse identity, opposite signs), zero middle."""
    m = _zeros(n, n)
    for t in range(p):
        m[t][n - p + (p - 1 - t)] = Fraction(1)
        m[n - p + (p - 1 - t)][t] = Fraction(-1)
    return _mat(m)


def enumerate_exterior_square(n: int) -> list[ClassicalOrbit]:
    if n < 2:
        raise ClassicalError("n must be at least 2")
    return [ClassicalOrbit("ext2", 2 * p, None, exterior_representative(n, p)) for p in range(n // 2 + 1)]


def _unit(n: int, i: int, c=1) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return v


def _case(space: BilinearSpace) -> str:
    if not space.nondegenerate or space.symmetry == "zero":
        raise ClassicalError("the bilinear enumerator needs a nondegenerate form")
    if space.symmetry == "skew":
        expected = BilinearSpace.split_skew(space.dim).gram
        case = "C"
    else:
        expected = BilinearSpace.split_symmetric(space.dim).gram
        case = "B" if space.dim % 2 else "D"
    if space.gram != expected:
        raise ClassicalError("the enumerator works in the standard split basis")
    return case


def admissible_pairs(k: int, n: int, case: str) -> list[tuple[int, int]]:
    """(rank_a, witt_rank) pairs allowed by the rank inequalities."""
    out = []
    for r in range(min(k, n) + 1):
        for w in range(r + 1):
            if 2 * r - w > n:
                continue
            if case == "C" and w % 2:
                continue
            out.append((r, w))
    return out


def _bilinear_rep(k: int, n: int, case: str, r: int, w: int, split: bool) -> Matrix:
    s = r - w
    q = n // 2
    e = lambda i: _unit(n, i)  # e_{i+1}
    f = lambda i: _unit(n, n - 1 - i)  # f_{i+1}
    rows: list[list[Fraction]] = []
    if case == "C":
        p = w // 2
        rows += [e(i) for i in range(p)] + [f(i) for i in range(p)]
        rows += [e(i) for i in range(p, p + s)]
    else:
        rows += [e(i) for i in range(s)]
        if split:
            rows[-1] = f(s - 1)
        # anisotropic rows e_j +- f_j / 2 from the unused hyperbolic pairs
        aniso = []
        for j in range(s, q):
            aniso.append([a + b / 2 for a, b in zip(e(j), f(j))])
            aniso.append([a - b / 2 for a, b in zip(e(j), f(j))])
        if case == "B":
            aniso.append(_unit(n, q))
        rows += aniso[:w]
    rows += [[Fraction(0)] * n for _ in range(k - len(rows))]
    return _mat(rows)


def enumerate_bilinear_tensor(k: int, space: BilinearSpace) -> list[ClassicalOrbit]:
    if k < 1:
        raise ClassicalError("k must be positive")
    case = _case(space)
    n = space.dim
    out = []
    for r, w in admissible_pairs(k, n, case):
        if case == "D" and w == 0 and r == n // 2 and r > 0:
            for tag, split in (("+", False), ("-", True)):
                out.append(ClassicalOrbit("bilinear", r, w, _bilinear_rep(k, n, case, r, w, split), tag))
        else:
            out.append(ClassicalOrbit("bilinear", r, w, _bilinear_rep(k, n, case, r, w, False)))
    return out


def literal_row_constraint_violations(k: int, space: BilinearSpace) -> list[ClassicalOrbit]:
    """Orbits excluded if the extra row bound 2s + p <= k is read literally.

    Here s = rank_a - witt_rank counts isotropic rows and p = witt_rank.
    """
    return [o for o in enumerate_bilinear_tensor(k, space) if 2 * (o.rank_a - o.witt_rank) + o.witt_rank > k]


def split_parity(a, space: BilinearSpace) -> int | None:
    """For a maximal totally isotropic row space: dim(row space meet span(e_1..e_q)) mod 2."""
    n = space.dim
    if space.symmetry != "symmetric" or n % 2:
        return None
    rank_a, witt = witt_invariants(a, space)
    q = n // 2
    if rank_a != q or witt != 0:
        return None
    base = [_unit(n, i) for i in range(q)]
    meet = rank_a + q - dense_rank(list(a) + base)
    return meet % 2


# ---- L-orbit dimensions through the tangent map ----------------------------

def _tangent_rank(images) -> int:
    ech = Echelon()
    for img in images:
        row = {}
        for idx, v in enumerate(x for r in img for x in r):
            if v:
                row[idx] = v
        ech.add(row)
    return ech.rank


def _elementary(n: int, i: int, j: int):
    m = _zeros(n, n)
    m[i][j] = Fraction(1)
    return m


def _lie_algebra_of_form(space: BilinearSpace):
    """Basis of {Y : Y^t J + J Y = 0} as J^{-1} S with S skew (symmetric J) or symmetric (skew J)."""
    n = space.dim
    jinv = transpose(space.gram)  # J is a signed permutation here, so J^{-1} = J^t
    if _mat(matmul(jinv, space.gram)) != _mat([[1 if i == j else 0 for j in range(n)] for i in range(n)]):
        raise ClassicalError("gram matrix is not a signed permutation")
    basis = []
    for i in range(n):
        for j in range(i, n):
            s = _zeros(n, n)
            if space.symmetry == "symmetric":
                if i == j:
                    continue
                s[i][j], s[j][i] = Fraction(1), Fraction(-1)
            else:
                s[i][j] = Fraction(1)
                s[j][i] = Fraction(1)
            basis.append(matmul(jinv, s))
    return basis


def orbit_dimension(orbit: ClassicalOrbit, space: BilinearSpace | None = None) -> int:
    """Dimension of the GL x G orbit of the representative (equals the L-orbit dimension)."""
    a = orbit.representative
    rows, cols = len(a), len(a[0])
    images = []
    if orbit.module == "bilinear":
        if space is None:
            raise ClassicalError("bilinear orbits need their space")
        for i in range(rows):
            for j in range(rows):
                images.append(matmul(_elementary(rows, i, j), a))
        for y in _lie_algebra_of_form(space):
            images.append(matmul(a, transpose(y)))
    elif orbit.module == "tensor":
        for i in range(rows):
            for j in range(rows):
                images.append(matmul(_elementary(rows, i, j), a))
        for i in range(cols):
            for j in range(cols):
                images.append(matmul(a, _elementary(cols, i, j)))
    elif orbit.module in ("sym2", "ext2"):
        for i in range(rows):
            for j in range(rows):
                x = _elementary(rows, i, j)
                xa, axt = matmul(x, a), matmul(a, transpose(x))
                images.append(tuple(tuple(u + v for u, v in zip(r1, r2)) for r1, r2 in zip(xa, axt)))
    else:
        raise ClassicalError(f"unknown module {orbit.module!r}")
    return _tangent_rank(images)


# ---- finite-field oracle ----------------------------------------------------

def finite_field_classes(k: int, space: BilinearSpace, p: int = 3) -> set:
    """Exhaustively collect (rank, Witt rank, split parity) over all k x N matrices mod p, k <= 2.

    Over F_p, Witt classes rather than single orbits are counted: nondegenerate
    subspaces there also carry a discriminant, which has no analogue over C.
    """
    if k not in (1, 2):
        raise ClassicalError("the finite-field oracle handles k = 1 or 2")
    n = space.dim
    q = n // 2
    gram = [[int(x) % p for x in r] for r in space.gram]
    even_symmetric = space.symmetry == "symmetric" and n % 2 == 0
    vecs = list(itertools.product(range(p), repeat=n))
    jv = [tuple(sum(g[t] * v[t] for t in range(n)) % p for g in gram) for v in vecs]
    inv = {x: pow(x, -1, p) for x in range(1, p)}

    def line(v):
        lead = next((x for x in v if x), 0)
        return tuple(x * inv[lead] % p for x in v) if lead else None

    lines = [line(v) for v in vecs]
    norms = [sum(x * y for x, y in zip(v, w)) % p for v, w in zip(vecs, jv)]
    base = [[1 if c == i else 0 for c in range(n)] for i in range(q)]

    def parity(rows, r, w):
        if not even_symmetric or r != q or w != 0:
            return None
        return (r + q - rank_mod_p([list(x) for x in rows] + base, p)) % 2

    seen = set()
    if k == 1:
        for v, nv, ln in zip(vecs, norms, lines):
            r = 1 if ln else 0
            seen.add((r, 1 if nv else 0, parity([v], r, 1 if nv else 0)))
        return seen
    for iu, u in enumerate(vecs):
        for iv, v in enumerate(vecs):
            a, d = norms[iu], norms[iv]
            b = sum(x * y for x, y in zip(u, jv[iv])) % p
            c = sum(x * y for x, y in zip(v, jv[iu])) % p
            if (a * d - b * c) % p:
                w = 2
            else:
                w = 1 if (a or b or c or d) else 0
            lu, lv = lines[iu], lines[iv]
            if lu is None and lv is None:
                r = 0
            elif lu is None or lv is None or lu == lv:
                r = 1
            else:
                r = 2
            seen.add((r, w, parity([u, v], r, w)))
    return seen


def enumerator_classes(k: int, space: BilinearSpace) -> set:
    even_symmetric = space.symmetry == "symmetric" and space.dim % 2 == 0
    return {
        (o.rank_a, o.witt_rank, split_parity(o.representative, space) if even_symmetric else None)
        for o in enumerate_bilinear_tensor(k, space)
    }
