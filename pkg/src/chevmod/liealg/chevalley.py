"""Chevalley basis: structure constants and the bracket on the full algebra.

Signs follow the extraspecial-pair convention: for every non-simple positive
root xi, the pair (alpha, xi - alpha) with alpha minimal in the root order gets
N = +(p + 1).  All other constants follow from Carter's identities.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .roots import CartanType, LieError, Root, RootSystem, add, build_root_system, neg, sub


@dataclass(frozen=True)
class ChevalleyBasis:
    system: RootSystem
    n_constants: dict = field(repr=False)  # (Root, Root) -> int, whenever a sum is a root
    extraspecial: dict = field(repr=False)  # xi -> (alpha, beta)

    def N(self, a: Root, b: Root) -> int:
        return self.n_constants.get((a, b), 0)


def _string_p(system: RootSystem, a: Root, b: Root) -> int:
    """Largest p with b - p*a a root."""
    p = 0
    cur = sub(b, a)
    while system.is_root(cur):
        p += 1
        cur = sub(cur, a)
    return p


@lru_cache(maxsize=None)
def structure_constants(system: RootSystem) -> ChevalleyBasis:
    pos = system.positive_roots
    order = {r: k for k, r in enumerate(pos)}
    posset = set(pos)
    table: dict[tuple, int] = {}

    def nn(r):
        return system.norm2(r)

    def n_any(a: Root, b: Root) -> Fraction:
        """N_{a,b} for arbitrary roots, reduced to already known positive pairs."""
        s = add(a, b)
        if not system.is_root(s):
            return Fraction(0)
        apos, bpos = a in posset, b in posset
        if apos and bpos:
            return Fraction(table[(a, b)])
        if not apos and not bpos:
            return -n_any(neg(a), neg(b))
        if not apos:
            return -n_any(b, a)
        c = neg(s)
        if c in posset:
            # a + b + c = 0 with a, c positive: N_ab / (c,c) = N_ca / (b,b)
            return Fraction(nn(c), nn(b)) * n_any(c, a)
        # b, c negative: N_ab / (c,c) = N_bc / (a,a) and N_bc = -N_{-b,-c}
        return -Fraction(nn(c), nn(a)) * n_any(neg(b), neg(c))

    extraspecial = {}
    for xi in pos:
        if sum(xi) < 2:
            continue
        pairs = [(r, sub(xi, r)) for r in pos if order[r] < order[xi] and sub(xi, r) in posset]
        alpha, beta = min(pairs, key=lambda pr: order[pr[0]])
        extraspecial[xi] = (alpha, beta)
        nab = _string_p(system, alpha, beta) + 1
        table[(alpha, beta)] = nab
        table[(beta, alpha)] = -nab
        for r, s in pairs:
            if (r, s) in table:
                continue
            t2 = Fraction(0)
            if system.is_root(sub(beta, r)):
                t2 = n_any(beta, neg(r)) * n_any(alpha, neg(s)) / nn(sub(beta, r))
            t3 = Fraction(0)
            if system.is_root(sub(alpha, r)):
                t3 = n_any(neg(r), alpha) * n_any(beta, neg(s)) / nn(sub(alpha, r))
            val = Fraction(nn(xi)) * (t2 + t3) / nab
            if val.denominator != 1 or val == 0:
                raise LieError(f"structure constant failure at {r}+{s}")
            table[(r, s)] = int(val)
            table[(s, r)] = -int(val)

    full: dict[tuple, int] = {}
    roots = system.roots
    for a in roots:
        for b in roots:
            if system.is_root(add(a, b)):
                v = n_any(a, b)
                assert v.denominator == 1
                full[(a, b)] = int(v)
    return ChevalleyBasis(system, full, extraspecial)


def chevalley_basis(kind: CartanType) -> ChevalleyBasis:
    return structure_constants(build_root_system(kind))


@dataclass(frozen=True)
class AlgebraElement:
    """h-part over the simple coroots plus a sparse root-vector part."""

    system: RootSystem
    cartan_part: tuple
    root_part: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if len(self.cartan_part) != self.system.rank:
            raise LieError("cartan part has wrong length")
        for r in self.root_part:
            if not self.system.is_root(r):
                raise LieError(f"{r} is not a root")

    @classmethod
    def zero(cls, system: RootSystem) -> "AlgebraElement":
        return cls(system, (Fraction(0),) * system.rank, {})

    @classmethod
    def root_vector(cls, system: RootSystem, r: Root, c=1) -> "AlgebraElement":
        return cls(system, (Fraction(0),) * system.rank, {tuple(r): Fraction(c)})

    @classmethod
    def from_roots(cls, system: RootSystem, roots, coeffs=None) -> "AlgebraElement":
        part: dict = {}
        for k, r in enumerate(roots):
            c = Fraction(1 if coeffs is None else coeffs[k])
            part[tuple(r)] = part.get(tuple(r), 0) + c
        return cls(system, (Fraction(0),) * system.rank, {r: c for r, c in part.items() if c})

    @classmethod
    def cartan(cls, system: RootSystem, coords) -> "AlgebraElement":
        return cls(system, tuple(Fraction(c) for c in coords), {})

    @classmethod
    def coroot(cls, system: RootSystem, r: Root) -> "AlgebraElement":
        """H_r expressed over the simple coroots."""
        return cls.cartan(system, system.coroot(r))

    def is_zero(self) -> bool:
        return not any(self.cartan_part) and not self.root_part

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same(self, other)
        rp = dict(self.root_part)
        for r, c in other.root_part.items():
            v = rp.get(r, 0) + c
            if v:
                rp[r] = v
            else:
                rp.pop(r, None)
        cp = tuple(a + b for a, b in zip(self.cartan_part, other.cartan_part))
        return AlgebraElement(self.system, cp, rp)

    def scale(self, c) -> "AlgebraElement":
        c = Fraction(c)
        if not c:
            return AlgebraElement.zero(self.system)
        return AlgebraElement(
            self.system,
            tuple(c * a for a in self.cartan_part),
            {r: c * v for r, v in self.root_part.items()},
        )

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (
            self.system.kind == other.system.kind
            and tuple(self.cartan_part) == tuple(other.cartan_part)
            and dict(self.root_part) == dict(other.root_part)
        )

    def __hash__(self):
        return hash((self.cartan_part, frozenset(self.root_part.items())))

    def eval_root(self, r: Root) -> Fraction:
        """r(h) for the Cartan part h."""
        sysm = self.system
        return sum((c * sysm.pairing(r, i) for i, c in enumerate(self.cartan_part) if c), Fraction(0))


def _same(x: AlgebraElement, y: AlgebraElement) -> None:
    if x.system.kind != y.system.kind:
        raise LieError("elements live in different algebras")


def bracket(basis: ChevalleyBasis, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _same(x, y)
    if x.system.kind != basis.system.kind:
        raise LieError("basis and elements live in different algebras")
    system = basis.system
    n = system.rank
    cart = [Fraction(0)] * n
    out: dict = {}

    def acc(r, v):
        if v:
            nv = out.get(r, 0) + v
            if nv:
                out[r] = nv
            else:
                out.pop(r, None)

    # [h, X_r] = r(h) X_r
    if any(x.cartan_part):
        for r, c in y.root_part.items():
            acc(r, c * x.eval_root(r))
    if any(y.cartan_part):
        for r, c in x.root_part.items():
            acc(r, -c * y.eval_root(r))
    for a, ca in x.root_part.items():
        for b, cb in y.root_part.items():
            s = add(a, b)
            if not any(s):
                # [X_a, X_{-a}] = H_a
                for i, k in enumerate(system.coroot(a)):
                    cart[i] += ca * cb * k
            else:
                nab = basis.n_constants.get((a, b))
                if nab:
                    acc(s, ca * cb * nab)
    return AlgebraElement(system, tuple(cart), out)
