"""Walk the chain obtained by deleting the highest remaining node of E6 or E7.

At each step the last-node parabolic of the simple factor containing that
node must be abelian, and its first piece must contain exactly one nonzero
orbit in the minimal nilpotent orbit, every other nonzero orbit lying in a
strictly larger nilpotent orbit.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..geometry import is_minimal_orbit, minimal_orbit_diagram, nilpotent_orbit_dim, orbit_dimension, weighted_dynkin
from ..liealg.chain import verify_chain_lemma
from ..liealg.chevalley import AlgebraElement, structure_constants
from ..liealg.roots import CartanType, build_root_system, neg, parse_root_label
from ..parabolic import grading, is_abelian, levi_decomposition
from .dataset import Dataset, load_paper_tables

# chain-lemma index attached to each E-type step
_LEMMA = {("E7", 7): 7, ("E6", 6): 6, ("D5", 5): 5}


@dataclass
class SupportStep:
    kind: CartanType
    node: int
    abelian: bool
    orbits: list = field(default_factory=list)  # (basepoint, L-orbit dim, wdd, nilpotent dim)
    minimal_dim: int = 0
    passed: bool = False
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "group": str(self.kind),
            "node": self.node,
            "abelian": self.abelian,
            "orbits": [
                {"basepoint": b, "dim": d, "wdd": w, "nilpotent_orbit_dim": n, "minimal": m}
                for b, d, w, n, m in self.orbits
            ],
            "minimal_orbit_dim": self.minimal_dim,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass
class SupportReport:
    group: str
    steps: list = field(default_factory=list)
    chain: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.steps) and all(c.passed for c in self.chain)

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "passed": self.passed,
            "steps": [s.as_dict() for s in self.steps],
            "chain_lemma": [c.as_dict() for c in self.chain],
        }


def chain_steps(group: str) -> list[tuple[CartanType, int]]:
    """(simple type, node) for each deletion, starting at E7 or E6.

    The node is in the Bourbaki numbering of the simple factor of the
    remaining diagram that contains the deleted node.
    """
    start = CartanType.parse(group)
    if start not in (CartanType("E", 6), CartanType("E", 7)):
        raise ValueError("the chain starts at E6 or E7")
    ambient = build_root_system(CartanType("E", 7))
    steps = []
    for top in range(start.rank, 0, -1):
        nodes = list(range(1, top + 1))
        for comp in levi_decomposition(ambient, nodes):
            if top in comp.nodes:
                steps.append((comp.kind, comp.nodes.index(top) + 1))
    return steps


def _a_type_basepoints(kind: CartanType, node: int) -> list[tuple]:
    """Rank-r representatives sum_{j<=r} X_{eps_{k+1-j} - eps_{k+j}} in type A."""
    n, k = kind.rank, node
    out = []
    for r in range(min(k, n + 1 - k) + 1):
        roots = []
        for j in range(1, r + 1):
            a, b = k + 1 - j, k + j
            roots.append(tuple(1 if a <= t < b else 0 for t in range(1, n + 1)))
        out.append(tuple(roots))
    return out


def _step(kind: CartanType, node: int, dataset: Dataset) -> SupportStep:
    g = grading(kind, node)
    system = g.system
    basis = structure_constants(system)
    out = SupportStep(kind, node, is_abelian(g))
    if kind.family == "A":
        candidates = _a_type_basepoints(kind, node)
    else:
        table = dataset.module(kind, node, 1)
        candidates = [tuple(parse_root_label(system, lab) for lab in r.basepoint) for r in table.records]
    levi = [r for b in g.levi_positive_roots for r in (b, neg(b))]
    for roots in candidates:
        x = AlgebraElement.from_roots(system, roots)
        w = weighted_dynkin(basis, x, conjugators=levi)
        label = "+".join("".join(map(str, r)) for r in roots) or "0"
        out.orbits.append(
            (label, orbit_dimension(basis, g, 1, x), str(w), nilpotent_orbit_dim(system, w), is_minimal_orbit(system, w))
        )
    out.minimal_dim = nilpotent_orbit_dim(system, minimal_orbit_diagram(system))
    nonzero = [o for o in out.orbits if o[0] != "0"]
    minimal = [o for o in nonzero if o[4]]
    bigger = all(o[3] > out.minimal_dim for o in nonzero if not o[4])
    out.passed = out.abelian and len(minimal) == 1 and bigger
    out.detail = (
        f"{len(minimal)} minimal of {len(nonzero)} nonzero orbits; "
        f"others have nilpotent orbit dims {sorted(o[3] for o in nonzero if not o[4])} vs minimal {out.minimal_dim}"
    )
    return out


def minimal_support_check(group: str, dataset: Dataset | None = None, chain_lemma: bool = True) -> SupportReport:
    ds = dataset or load_paper_tables()
    report = SupportReport(str(CartanType.parse(group)))
    for kind, node in chain_steps(group):
        report.steps.append(_step(kind, node, ds))
        n = _LEMMA.get((str(kind), node))
        if chain_lemma and n is not None:
            report.chain.append(verify_chain_lemma(n))
    return report
