"""Cartan types and root systems in Bourbaki numbering."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

Root = tuple  # coefficient vector over the simple roots


class LieError(ValueError):
    pass


_RANK_RULES = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        rule = _RANK_RULES.get(self.family)
        if rule is None:
            raise LieError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or not rule(self.rank):
            raise LieError(f"invalid rank {self.rank} for family {self.family}")

    @classmethod
    def parse(cls, token: str) -> "CartanType":
        m = re.fullmatch(r"\s*([A-Ga-g])(\d+)\s*", token)
        if not m:
            raise LieError(f"bad type token {token!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def display_name(self) -> str:
        """Name of the split real group, as used in the orbit tables."""
        n = self.rank
        return {
            "A": f"SL({n + 1})",
            "B": f"SO({n + 1},{n})",
            "C": f"Sp({2 * n})",
            "D": f"SO({n},{n})",
        }.get(self.family, str(self))


def _diagram(kind: CartanType) -> tuple[list[tuple[int, int]], list[int]]:
    """Edges (0-based) and squared root lengths (short = 1)."""
    f, n = kind.family, kind.rank
    chain = [(i, i + 1) for i in range(n - 1)]
    if f == "A":
        return chain, [2] * n
    if f == "B":
        return chain, [2] * (n - 1) + [1]
    if f == "C":
        return chain, [1] * (n - 1) + [2]
    if f == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)], [2] * n
    if f == "E":
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
        return edges, [2] * n
    if f == "F":
        return chain, [2, 2, 1, 1]
    return chain, [1, 3]  # G2, alpha_1 short


def cartan_matrix(kind: CartanType) -> tuple[tuple[int, ...], ...]:
    """a[i][j] = <alpha_j, alpha_i^vee> = 2(alpha_i, alpha_j) / (alpha_i, alpha_i)."""
    edges, lengths = _diagram(kind)
    n = kind.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        ip2 = -max(lengths[i], lengths[j])  # 2(alpha_i, alpha_j)
        a[i][j] = ip2 // lengths[i]
        a[j][i] = ip2 // lengths[j]
    return tuple(tuple(r) for r in a)


@dataclass(frozen=True)
class RootSystem:
    kind: CartanType
    cartan: tuple
    positive_roots: tuple
    highest_root: Root
    symmetrizer: tuple  # squared lengths; diag(symmetrizer) @ cartan is symmetric
    index: dict = field(compare=False, repr=False)

    @property
    def rank(self) -> int:
        return self.kind.rank

    @property
    def roots(self) -> tuple:
        """Positive roots followed by their negatives, in the same order."""
        return self.positive_roots + tuple(neg(r) for r in self.positive_roots)

    @property
    def dim(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    def simple_root(self, i: int) -> Root:
        """Simple root alpha_i with 1-based i."""
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def is_root(self, v) -> bool:
        return tuple(v) in self.index

    def pairing(self, r: Root, i: int) -> int:
        """<r, alpha_i^vee> for a 0-based simple index i."""
        row = self.cartan[i]
        return sum(c * a for c, a in zip(r, row))

    def ip2(self, r: Root, s: Root) -> int:
        """Twice the invariant inner product (short roots have (a, a) = 1)."""
        tot = 0
        for i, ri in enumerate(r):
            if ri:
                d = self.symmetrizer[i]
                row = self.cartan[i]
                tot += ri * d * sum(a * sj for a, sj in zip(row, s))
        return tot

    def norm2(self, r: Root) -> int:
        """Squared length (r, r) in units where short roots have length 1."""
        return self.ip2(r, r) // 2

    def coroot(self, r: Root) -> tuple:
        """Coefficients of r^vee over the simple coroots."""
        nr = self.norm2(r)
        out = []
        for c, d in zip(r, self.symmetrizer):
            q, rem = divmod(c * d, nr)
            assert rem == 0
            out.append(q)
        return tuple(out)


def neg(r: Root) -> Root:
    return tuple(-c for c in r)


def add(r: Root, s: Root) -> Root:
    return tuple(a + b for a, b in zip(r, s))


def sub(r: Root, s: Root) -> Root:
    return tuple(a - b for a, b in zip(r, s))


def height(r: Root) -> int:
    return sum(r)


@lru_cache(maxsize=None)
def build_root_system(kind: CartanType) -> RootSystem:
    a = cartan_matrix(kind)
    n = kind.rank
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    found = set(simple)
    level = list(simple)
    while level:
        nxt = set()
        for r in level:
            for i in range(n):
                # alpha_i-string through r: p steps down, q steps up
                p = 0
                s = list(r)
                while True:
                    s[i] -= 1
                    if tuple(s) in found:
                        p += 1
                    else:
                        break
                pair = sum(c * x for c, x in zip(r, a[i]))
                if p - pair > 0:
                    up = tuple(c + (1 if j == i else 0) for j, c in enumerate(r))
                    if up not in found:
                        nxt.add(up)
        found |= nxt
        level = sorted(nxt)
    pos = tuple(sorted(found, key=lambda r: (sum(r), r)))
    theta = pos[-1]
    _, lengths = _diagram(kind)
    index = {r: k for k, r in enumerate(pos)}
    npos = len(pos)
    for k, r in enumerate(pos):
        index[neg(r)] = npos + k
    return RootSystem(kind, a, pos, theta, tuple(lengths), index)


def root_label(r: Root) -> str:
    if any(c < 0 for c in r):
        return "-" + "".join(str(-c) for c in r)
    return "".join(str(c) for c in r)


def parse_root_label(system: RootSystem, label: str) -> Root:
    """Parse a digit string such as '1211'; a leading '-' gives a negative root."""
    s = label.strip()
    sign = 1
    if s.startswith("-"):
        sign, s = -1, s[1:]
    if len(s) != system.rank or not s.isdigit():
        raise LieError(f"label {label!r} does not have {system.rank} digits")
    r = tuple(sign * int(ch) for ch in s)
    if r not in system.index:
        raise LieError(f"{label!r} is not a root of {system.kind}")
    return r


def positive_root_count(kind: CartanType) -> int:
    """Closed-form count of positive roots."""
    n = kind.rank
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, 0),
        "F": 24,
        "G": 6,
    }[kind.family]


def supported_types(max_rank: int = 8) -> list[CartanType]:
    out = [CartanType("A", n) for n in range(1, max_rank + 1)]
    out += [CartanType("B", n) for n in range(2, max_rank + 1)]
    out += [CartanType("C", n) for n in range(2, max_rank + 1)]
    out += [CartanType("D", n) for n in range(3, max_rank + 1)]
    out += [CartanType("E", n) for n in (6, 7, 8) if n <= max_rank]
    out += [CartanType("F", 4), CartanType("G", 2)]
    return out
