"""Standard parabolics, Levi types and the graded pieces of the nilradical."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .liealg.chevalley import AlgebraElement, bracket, structure_constants
from .liealg.roots import CartanType, LieError, Root, RootSystem, add, build_root_system, root_label, supported_types


@dataclass(frozen=True)
class GradedPiece:
    index: int
    roots: tuple

    @property
    def dim(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class LeviComponent:
    kind: CartanType
    nodes: tuple  # ambient 1-based node of the component's Bourbaki node 1, 2, ...

    @property
    def display_name(self) -> str:
        return self.kind.display_name


@dataclass(frozen=True)
class ParabolicGrading:
    system: RootSystem
    marked: frozenset
    pieces: tuple
    components: tuple  # LeviComponent

    @property
    def levi_components(self) -> tuple:
        return tuple(c.kind for c in self.components)

    @property
    def m(self) -> int:
        return len(self.pieces)

    def piece(self, i: int) -> GradedPiece:
        if not 1 <= i <= len(self.pieces):
            raise LieError(f"piece {i} out of range 1..{len(self.pieces)}")
        return self.pieces[i - 1]

    @property
    def levi_nodes(self) -> tuple:
        return tuple(j for j in range(1, self.system.rank + 1) if j not in self.marked)

    @property
    def levi_positive_roots(self) -> tuple:
        return tuple(r for r in self.system.positive_roots if not any(r[j - 1] for j in self.marked))

    def degree(self, r: Root) -> int:
        return sum(r[j - 1] for j in self.marked)


@dataclass(frozen=True)
class ModuleDescriptor:
    levi_type: tuple
    highest_weight: dict  # ambient node -> nonnegative integer
    dim: int
    name: str
    highest_root: Root

    def weight_string(self) -> str:
        parts = []
        for j in sorted(self.highest_weight):
            c = self.highest_weight[j]
            if c:
                parts.append(f"w{j}" if c == 1 else f"{c}w{j}")
        return "+".join(parts) if parts else "0"


def _candidate_types(r: int) -> list[CartanType]:
    out = [CartanType("A", r)]
    if r >= 2:
        out.append(CartanType("B", r))
    if r >= 3:
        out.append(CartanType("C", r))
    if r >= 4:
        out.append(CartanType("D", r))
    if r in (6, 7, 8):
        out.append(CartanType("E", r))
    if r == 4:
        out.append(CartanType("F", 4))
    if r == 2:
        out.append(CartanType("G", 2))
    return out


def _match(sub: list[list[int]]) -> tuple[CartanType, tuple]:
    """Identify a connected Cartan submatrix; return type and local ordering."""
    r = len(sub)
    for kind in _candidate_types(r):
        std = build_root_system(kind).cartan
        order: list[int] = []
        used = [False] * r

        def extend() -> bool:
            k = len(order)
            if k == r:
                return True
            for c in range(r):
                if used[c]:
                    continue
                if sub[c][c] != 2:
                    continue
                if all(sub[c][order[t]] == std[k][t] and sub[order[t]][c] == std[t][k] for t in range(k)):
                    used[c] = True
                    order.append(c)
                    if extend():
                        return True
                    order.pop()
                    used[c] = False
            return False

        if extend():
            return kind, tuple(order)
    raise LieError("unrecognised Dynkin diagram")


def levi_decomposition(system: RootSystem, nodes) -> tuple:
    """Connected components of the sub-diagram on `nodes`, as LeviComponents."""
    nodes = sorted(nodes)
    a = system.cartan
    comps = []
    seen: set = set()
    for start in nodes:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        k = 0
        while k < len(comp):
            u = comp[k]
            k += 1
            for v in nodes:
                if v not in seen and a[u - 1][v - 1] != 0:
                    seen.add(v)
                    comp.append(v)
        comp.sort()
        sub = [[a[u - 1][v - 1] for v in comp] for u in comp]
        kind, order = _match(sub)
        comps.append(LeviComponent(kind, tuple(comp[o] for o in order)))
    return tuple(comps)


@lru_cache(maxsize=None)
def _grade(system: RootSystem, marked: frozenset) -> ParabolicGrading:
    m = sum(system.highest_root[j - 1] for j in marked)
    buckets: list[list] = [[] for _ in range(m)]
    for r in system.positive_roots:
        d = sum(r[j - 1] for j in marked)
        if d:
            buckets[d - 1].append(r)
    pieces = tuple(GradedPiece(i + 1, tuple(b)) for i, b in enumerate(buckets))
    comps = levi_decomposition(system, [j for j in range(1, system.rank + 1) if j not in marked])
    return ParabolicGrading(system, marked, pieces, comps)


def grade_nilradical(system: RootSystem, marked) -> ParabolicGrading:
    if isinstance(marked, int):
        marked = {marked}
    marked = frozenset(marked)
    if not marked:
        raise LieError("marked node set must be nonempty")
    if any(not 1 <= j <= system.rank for j in marked):
        raise LieError(f"marked nodes must lie in 1..{system.rank}")
    return _grade(system, marked)


def grading(kind: CartanType | str, node) -> ParabolicGrading:
    if isinstance(kind, str):
        kind = CartanType.parse(kind)
    return grade_nilradical(build_root_system(kind), node)


def levi_type(g: ParabolicGrading) -> tuple:
    return g.levi_components


def weyl_dimension(g: ParabolicGrading, weight: dict) -> int:
    """Weyl dimension formula over [L, L] for Dynkin labels on the Levi nodes."""
    system = g.system
    num = Fraction(1)
    for r in g.levi_positive_roots:
        co = system.coroot(r)
        top = sum(c * (weight.get(j + 1, 0) + 1) for j, c in enumerate(co) if c)
        bot = sum(co)
        num *= Fraction(top, bot)
    assert num.denominator == 1
    return int(num)


def piece_highest_roots(g: ParabolicGrading, i: int) -> list[Root]:
    piece = set(g.piece(i).roots)
    simples = [g.system.simple_root(j) for j in g.levi_nodes]
    return [r for r in g.piece(i).roots if not any(add(r, s) in piece for s in simples)]


_NAMES_A = {1: "Standard", 2: "Exterior square", 3: "Exterior cube"}


def _component_name(kind: CartanType, labels: tuple) -> str:
    nz = [(k + 1, c) for k, c in enumerate(labels) if c]
    if not nz:
        return "Trivial"
    n = kind.rank
    if kind.family == "A" and len(nz) == 1:
        k, c = nz[0]
        k = min(k, n + 1 - k)
        if c == 1:
            return _NAMES_A.get(k, f"Exterior power {k}")
        if k == 1:
            return {2: "Symmetric square", 3: "Symmetric cube"}.get(c, f"Symmetric power {c}")
    if kind.family in "BD" and nz == [(1, 1)]:
        return "Vector"
    if kind.family == "C" and nz == [(1, 1)]:
        return "Standard"
    if kind.family in "BD" and len(nz) == 1 and nz[0][1] == 1 and nz[0][0] >= n - (1 if kind.family == "D" else 0):
        return "Spin"
    if kind.family == "E" and kind.rank == 6 and nz in ([(1, 1)], [(6, 1)]):
        return "27"
    if kind.family == "E" and kind.rank == 7 and nz == [(7, 1)]:
        return "56"
    return "V(" + "+".join(f"{c if c > 1 else ''}w{k}" for k, c in nz) + ")"


def component_labels(g: ParabolicGrading, weight: dict) -> list[tuple]:
    """(component type, Dynkin labels in the component's own numbering)."""
    return [(c.kind, tuple(weight.get(j, 0) for j in c.nodes)) for c in g.components]


def module_descriptor(g: ParabolicGrading, i: int) -> ModuleDescriptor:
    if len(g.marked) != 1:
        raise LieError("module descriptors are only defined for maximal parabolics")
    tops = piece_highest_roots(g, i)
    if len(tops) != 1:
        raise LieError(f"piece {i} has {len(tops)} highest roots")
    lam = tops[0]
    hw = {j: g.system.pairing(lam, j - 1) for j in g.levi_nodes}
    dim = weyl_dimension(g, hw)
    if dim != g.piece(i).dim:
        raise LieError(f"Weyl dimension {dim} disagrees with piece size {g.piece(i).dim}")
    names = [_component_name(k, lab) for k, lab in component_labels(g, hw)]
    names = [nm for nm in names if nm != "Trivial"] or ["Trivial"]
    return ModuleDescriptor(g.levi_components, hw, dim, " ⊗ ".join(names), lam)


# component diagram automorphisms, as permutations of Bourbaki positions (0-based)
def _automorphisms(kind: CartanType) -> list[tuple]:
    n = kind.rank
    ident = tuple(range(n))
    if kind.family == "A" and n > 1:
        return [ident, tuple(reversed(ident))]
    if kind.family == "D" and n == 4:
        outs = []
        for p in permutations([0, 2, 3]):
            perm = [0, 1, 2, 3]
            perm[0], perm[2], perm[3] = p
            outs.append(tuple(perm))
        return outs
    if kind.family == "D":
        return [ident, tuple(list(range(n - 2)) + [n - 1, n - 2])]
    if kind.family == "E" and n == 6:
        return [ident, (5, 1, 4, 3, 2, 0)]
    return [ident]


def _canonical(kind: CartanType, labels: tuple) -> tuple:
    return min(tuple(labels[p[k]] for k in range(len(labels))) for p in _automorphisms(kind))


def module_signature(g: ParabolicGrading, i: int) -> tuple:
    """Isomorphism-invariant description: nontrivial components with canonical labels."""
    d = module_descriptor(g, i)
    sig = []
    for kind, lab in component_labels(g, d.highest_weight):
        if any(lab):
            if kind.rank == 1:
                kind = CartanType("A", 1)
            sig.append((str(kind), _canonical(kind, lab)))
    return (d.dim, tuple(sorted(sig)))


_FAMILY_ORDER = "ABCDEFG"


def _search_space(max_rank: int = 8) -> list[CartanType]:
    return sorted(supported_types(max_rank), key=lambda k: (k.rank, _FAMILY_ORDER.index(k.family)))


@lru_cache(maxsize=None)
def _first_piece_index() -> dict:
    index: dict = {}
    for kind in _search_space():
        system = build_root_system(kind)
        for node in range(1, kind.rank + 1):
            g = grade_nilradical(system, {node})
            index.setdefault(module_signature(g, 1), []).append((kind, node))
    return index


def first_piece_realizations(kind: CartanType, node: int, i: int) -> list[tuple]:
    """Every (type, node) within the search bound whose first piece matches piece i."""
    g = grading(kind, node)
    return list(_first_piece_index().get(module_signature(g, i), []))


def first_piece_realization(kind: CartanType, node: int, i: int):
    """Smallest rank first, then family order, then the highest node."""
    if i < 2:
        raise LieError("piece index must be at least 2")
    found = first_piece_realizations(kind, node, i)
    if not found:
        return None
    return min(found, key=lambda t: (t[0].rank, _FAMILY_ORDER.index(t[0].family), -t[1]))


def lower_central_series(g: ParabolicGrading) -> list[set]:
    """u^(0) = u, u^(j) = [u, u^(j-1)], each as the set of roots spanning it."""
    system = g.system
    basis = structure_constants(system)
    u = [r for p in g.pieces for r in p.roots]
    series = [set(u)]
    while series[-1]:
        prev = series[-1]
        nxt: set = set()
        for a in u:
            xa = AlgebraElement.root_vector(system, a)
            for b in prev:
                z = bracket(basis, xa, AlgebraElement.root_vector(system, b))
                nxt.update(z.root_part)
        series.append(nxt)
    return series


def lower_central_series_check(g: ParabolicGrading) -> bool:
    series = lower_central_series(g)
    for j, term in enumerate(series):
        want = {r for p in g.pieces[j:] for r in p.roots}
        if term != want:
            return False
    return len(series) == g.m + 1


def is_abelian(g: ParabolicGrading) -> bool:
    return g.m == 1


def describe(g: ParabolicGrading) -> dict:
    out = {
        "type": str(g.system.kind),
        "marked": sorted(g.marked),
        "levi": [str(k) for k in g.levi_components],
        "levi_names": [c.display_name for c in g.components],
        "pieces": [],
    }
    for p in g.pieces:
        entry = {"index": p.index, "dim": p.dim, "roots": [root_label(r) for r in p.roots]}
        if len(g.marked) == 1:
            d = module_descriptor(g, p.index)
            entry["highest_weight"] = d.weight_string()
            entry["module"] = d.name
            entry["highest_root"] = root_label(d.highest_root)
        out["pieces"].append(entry)
    return out
