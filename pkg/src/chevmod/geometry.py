"""Orbit dimensions, sl2-triples and weighted Dynkin diagrams."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial

from .linalg import Echelon, solve
from .liealg.chevalley import AlgebraElement, ChevalleyBasis, bracket, structure_constants
from .liealg.roots import LieError, Root, RootSystem, add, build_root_system, neg
from .parabolic import ParabolicGrading


class TripleError(LieError):
    pass


@dataclass(frozen=True)
class WeightedDynkinDiagram:
    values: tuple

    def __post_init__(self):
        if any(v not in (0, 1, 2) for v in self.values):
            raise LieError(f"weighted Dynkin diagram {self.values} has a value outside 0..2")

    def __str__(self) -> str:
        return "".join(str(v) for v in self.values)

    @classmethod
    def parse(cls, s: str) -> "WeightedDynkinDiagram":
        return cls(tuple(int(ch) for ch in s.strip()))


@dataclass(frozen=True)
class Sl2Triple:
    e: AlgebraElement
    h: AlgebraElement
    f: AlgebraElement


def orbit_dimension(basis: ChevalleyBasis, g: ParabolicGrading, i: int, x: AlgebraElement) -> int:
    """Rank of Lie(L) -> u_i, l |-> [l, x]."""
    system = basis.system
    piece = set(g.piece(i).roots)
    if any(v for v in x.cartan_part) or any(r not in piece for r in x.root_part):
        raise LieError(f"element is not supported in piece {i}")
    if not x.root_part:
        return 0
    col = {r: k for k, r in enumerate(g.piece(i).roots)}
    ech = Echelon()
    for j in range(system.rank):
        row = {}
        for r, c in x.root_part.items():
            v = c * system.pairing(r, j)
            if v:
                row[col[r]] = row.get(col[r], 0) + v
        ech.add(row)
    n = basis.n_constants
    for b in g.levi_positive_roots:
        for beta in (b, neg(b)):
            row = {}
            for r, c in x.root_part.items():
                nb = n.get((beta, r))
                if nb:
                    k = col[add(beta, r)]
                    row[k] = row.get(k, 0) + c * nb
            ech.add({k: v for k, v in row.items() if v})
    return ech.rank


class _Coords:
    """Coordinates on g: simple coroots first, then roots in system order."""

    def __init__(self, system: RootSystem):
        self.system = system
        self.n = system.rank
        self.roots = system.roots
        self.rindex = {r: self.n + k for k, r in enumerate(self.roots)}
        self.size = self.n + len(self.roots)

    def ad_column(self, basis: ChevalleyBasis, e: AlgebraElement, b: int) -> dict:
        """Coordinates of [e, basis element b]; e has no Cartan part."""
        sysm = self.system
        out: dict = {}
        if b < self.n:
            for r, c in e.root_part.items():
                v = -c * sysm.pairing(r, b)
                if v:
                    out[self.rindex[r]] = v
            return out
        gamma = self.roots[b - self.n]
        for r, c in e.root_part.items():
            s = add(r, gamma)
            if not any(s):
                for i, k in enumerate(sysm.coroot(r)):
                    if k:
                        out[i] = out.get(i, 0) + c * k
            else:
                nb = basis.n_constants.get((r, gamma))
                if nb:
                    idx = self.rindex[s]
                    out[idx] = out.get(idx, 0) + c * nb
        return {k: v for k, v in out.items() if v}

    def element(self, vec: dict) -> AlgebraElement:
        cart = [Fraction(0)] * self.n
        rp = {}
        for k, v in vec.items():
            if not v:
                continue
            if k < self.n:
                cart[k] = Fraction(v)
            else:
                rp[self.roots[k - self.n]] = Fraction(v)
        return AlgebraElement(self.system, tuple(cart), rp)


def _triple_in_cartan(basis: ChevalleyBasis, e: AlgebraElement):
    system = basis.system
    co = _Coords(system)
    cols = {b: co.ad_column(basis, e, b) for b in range(co.size)}
    # rows of the linear system indexed by output coordinate
    by_out: dict = {}
    for b, colv in cols.items():
        for k, v in colv.items():
            by_out.setdefault(k, {})[b] = v
    eqs = []
    for k in range(co.n, co.size):
        eqs.append((by_out.get(k, {}), 0))
    for beta in e.root_part:
        coeffs: dict = {}
        for i in range(co.n):
            w = system.pairing(beta, i)
            if w:
                for b, v in by_out.get(i, {}).items():
                    coeffs[b] = coeffs.get(b, 0) + w * v
        eqs.append(({b: v for b, v in coeffs.items() if v}, 2))
    sol = solve(eqs, co.size)
    if sol is None:
        return None
    hvec = {}
    for b, fb in sol.items():
        for k, v in cols[b].items():
            if k < co.n:
                hvec[k] = hvec.get(k, 0) + fb * v
    h = co.element(hvec)
    # f in the (-2)-eigenspace of ad h with [e, f] = h
    allowed = [b for b in range(co.n, co.size) if h.eval_root(co.roots[b - co.n]) == -2]
    eqs2 = []
    for k in range(co.size):
        row = {}
        for b in allowed:
            v = cols[b].get(k)
            if v:
                row[b] = v
        eqs2.append((row, hvec.get(k, 0)))
    sol2 = solve(eqs2, co.size)
    if sol2 is None:
        return None
    f = co.element(sol2)
    t = Sl2Triple(e, h, f)
    if not check_triple(basis, t):
        return None
    return t


def check_triple(basis: ChevalleyBasis, t: Sl2Triple) -> bool:
    return (
        bracket(basis, t.h, t.e) == t.e.scale(2)
        and bracket(basis, t.h, t.f) == t.f.scale(-2)
        and bracket(basis, t.e, t.f) == t.h
        and not t.e.is_zero()
    )


def exp_ad(basis: ChevalleyBasis, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """exp(ad x) y for nilpotent ad x."""
    out = y
    term = y
    k = 1
    while True:
        term = bracket(basis, x, term)
        if term.is_zero():
            return out
        out = out + term.scale(Fraction(1, factorial(k)))
        k += 1


def jm_triple(basis: ChevalleyBasis, e: AlgebraElement, conjugators=None) -> Sl2Triple:
    """Jacobson-Morozov triple with h in the Cartan.

    On failure, e is moved by exp(ad t X_gamma) for gamma in `conjugators`
    (default: all roots) and t in +-1, +-2, +-3, and the search is repeated.
    """
    if e.is_zero() or any(e.cartan_part):
        raise TripleError("e must be a nonzero combination of root vectors")
    t = _triple_in_cartan(basis, e)
    if t is not None:
        return t
    system = basis.system
    gammas = list(conjugators) if conjugators is not None else list(system.roots)
    for gamma in gammas:
        for tt in (1, -1, 2, -2, 3, -3):
            x = AlgebraElement.root_vector(system, gamma, tt)
            e2 = exp_ad(basis, x, e)
            if any(e2.cartan_part) or e2.is_zero():
                continue
            t = _triple_in_cartan(basis, e2)
            if t is not None:
                return t
    raise TripleError("no sl2-triple with h in the Cartan found within the retry budget")


def dominant(system: RootSystem, values) -> tuple:
    """Move (alpha_i(h)) into the dominant chamber by simple reflections."""
    v = list(values)
    a = system.cartan
    n = system.rank
    while True:
        i = next((k for k in range(n) if v[k] < 0), None)
        if i is None:
            return tuple(v)
        vi = v[i]
        for j in range(n):
            v[j] -= vi * a[i][j]


def h_values(system: RootSystem, h: AlgebraElement) -> tuple:
    return tuple(h.eval_root(system.simple_root(i + 1)) for i in range(system.rank))


def ad_jordan_type(basis: ChevalleyBasis, e: AlgebraElement) -> dict:
    """Jordan block sizes of ad e on g, as {size: count}."""
    co = _Coords(basis.system)
    ranks = [co.size]
    vecs = [{b: Fraction(1)} for b in range(co.size)]
    cols: dict = {}
    while ranks[-1]:
        nxt = []
        for v in vecs:
            out: dict = {}
            for b, c in v.items():
                if b not in cols:
                    cols[b] = co.ad_column(basis, e, b)
                for k, w in cols[b].items():
                    out[k] = out.get(k, 0) + c * w
            out = {k: w for k, w in out.items() if w}
            if out:
                nxt.append(out)
        ech = Echelon()
        for v in nxt:
            ech.add(v)
        ranks.append(ech.rank)
        vecs = nxt
    # blocks of size >= j number rank(A^(j-1)) - rank(A^j)
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))] + [0]
    sizes = {j: at_least[j - 1] - at_least[j] for j in range(1, len(at_least))}
    return {j: c for j, c in sizes.items() if c}


def _grading_profile(sizes: dict) -> tuple:
    """Dimensions of the nonnegative ad h eigenspaces for an sl2-module with these block sizes."""
    top = max(sizes) - 1
    return tuple(sum(c for s, c in sizes.items() if s - 1 >= k and (s - 1 - k) % 2 == 0) for k in range(top + 1))


@lru_cache(maxsize=None)
def _profile_index(system: RootSystem) -> dict:
    index: dict = {}
    for vals in product((0, 1, 2), repeat=system.rank):
        counts = [0] * (2 * sum(system.highest_root) + 1)
        counts[0] = system.rank
        for r in system.positive_roots:
            s = sum(c * v for c, v in zip(r, vals))
            counts[s] += 2 if s == 0 else 1
        while len(counts) > 1 and not counts[-1]:
            counts.pop()
        index.setdefault(tuple(counts), []).append(vals)
    return index


def diagram_from_jordan_type(basis: ChevalleyBasis, e: AlgebraElement) -> WeightedDynkinDiagram:
    """Weighted Dynkin diagram read off the ad h eigenspace dimensions.

    Needs no triple in the Cartan.  Raises TripleError when two dominant
    diagrams share the eigenspace dimensions (e.g. triality images in D4).
    """
    system = basis.system
    if e.is_zero():
        return WeightedDynkinDiagram((0,) * system.rank)
    found = _profile_index(system).get(_grading_profile(ad_jordan_type(basis, e)), [])
    if len(found) != 1:
        raise TripleError(f"{len(found)} diagrams match the Jordan type of ad e")
    return WeightedDynkinDiagram(found[0])


def weighted_dynkin(basis: ChevalleyBasis, e: AlgebraElement, conjugators=None) -> WeightedDynkinDiagram:
    """Via an sl2-triple with h in the Cartan.

    When no such triple exists for e itself, the Jordan type of ad e decides,
    and only if that is ambiguous is e conjugated by `conjugators`.
    """
    system = basis.system
    if e.is_zero():
        return WeightedDynkinDiagram((0,) * system.rank)
    if any(e.cartan_part):
        raise TripleError("e must be a nonzero combination of root vectors")
    t = _triple_in_cartan(basis, e)
    if t is None:
        try:
            return diagram_from_jordan_type(basis, e)
        except TripleError:
            t = jm_triple(basis, e, conjugators)
    vals = dominant(system, h_values(system, t.h))
    if any(Fraction(v).denominator != 1 for v in vals):
        raise LieError("non-integral h")
    return WeightedDynkinDiagram(tuple(int(v) for v in vals))


def nilpotent_orbit_dim(system: RootSystem, wdd: WeightedDynkinDiagram) -> int:
    vals = wdd.values if isinstance(wdd, WeightedDynkinDiagram) else tuple(wdd)
    g0 = system.rank
    g1 = 0
    for r in system.positive_roots:
        s = sum(c * v for c, v in zip(r, vals))
        if s == 0:
            g0 += 2
        elif s == 1:
            g1 += 1
    return system.dim - g0 - g1


@lru_cache(maxsize=None)
def minimal_orbit_diagram(system: RootSystem) -> WeightedDynkinDiagram:
    basis = structure_constants(system)
    return weighted_dynkin(basis, AlgebraElement.root_vector(system, system.highest_root))


def is_minimal_orbit(system: RootSystem, wdd: WeightedDynkinDiagram) -> bool:
    vals = wdd.values if isinstance(wdd, WeightedDynkinDiagram) else tuple(wdd)
    return vals == minimal_orbit_diagram(system).values


def basepoint(system: RootSystem, roots) -> AlgebraElement:
    return AlgebraElement.from_roots(system, roots)
