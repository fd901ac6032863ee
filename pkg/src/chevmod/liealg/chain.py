"""The square-zero / rank argument along E7 > E6 > D5.

For n in {7, 6} the element X + X_{alpha_n}, with X a combination of the
positive root vectors of the Levi obtained by deleting node n, is pushed into
the minuscule module; requiring its square to vanish must force every
coefficient of X to be zero.  For n = 5 (D5 in its 10-dimensional module) the
square condition leaves three coefficients, and a rank bound finishes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..linalg import dense_rank
from .reps import build_small_rep, mat_add, mat_mul
from .roots import CartanType, build_root_system, root_label

CHAIN = {
    7: (CartanType("E", 7), 7),
    6: (CartanType("E", 6), 1),
    5: (CartanType("D", 5), 1),
}


@dataclass
class ChainReport:
    n: int
    group: str
    rep_dim: int
    variables: list
    eliminated: list = field(default_factory=list)  # (label, row, col, coefficient)
    survivors: list = field(default_factory=list)
    method: str = "scan"
    rank_last: int | None = None
    single_ranks: dict = field(default_factory=dict)
    rank_certificate: str | None = None
    passed: bool = False
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "group": self.group,
            "rep_dim": self.rep_dim,
            "coefficients": len(self.variables),
            "eliminated": [
                {"root": lab, "entry": [r, c], "coefficient": str(k)} for lab, r, c, k in self.eliminated
            ],
            "survivors": self.survivors,
            "method": self.method,
            "rank_last": self.rank_last,
            "single_ranks": self.single_ranks,
            "rank_certificate": self.rank_certificate,
            "passed": self.passed,
            "notes": self.notes,
        }


def _square_polynomials(rep, last, roots):
    """Entries of (sum c_k rho(X_k) + rho(X_last))^2 as {monomial: coeff}."""
    mats = [rep.matrix(r) for r in roots]
    ml = rep.matrix(last)
    polys: dict = {}

    def put(m, mono):
        for key, v in m.items():
            p = polys.setdefault(key, {})
            nv = p.get(mono, 0) + v
            if nv:
                p[mono] = nv
            else:
                p.pop(mono, None)

    put(mat_mul(ml, ml), ())
    for k, m in enumerate(mats):
        put(mat_add(mat_mul(m, ml), mat_mul(ml, m)), (k,))
        put(mat_mul(m, m), (k, k))
        for j in range(k + 1, len(mats)):
            put(mat_add(mat_mul(m, mats[j]), mat_mul(mats[j], m)), (k, j))
    return polys


def _restrict(poly: dict, dead: set) -> dict:
    return {m: v for m, v in poly.items() if not any(x in dead for x in m)}


def _scan(polys: dict, nvars: int):
    dead: set = set()
    log = []
    changed = True
    while changed:
        changed = False
        for key in sorted(polys):
            p = _restrict(polys[key], dead)
            if len(p) == 1:
                (mono, v), = p.items()
                if len(mono) == 1 and mono[0] not in dead:
                    dead.add(mono[0])
                    log.append((mono[0], key, v))
                    changed = True
    return dead, log


def _randomized(polys, alive: list, trials: int = 20, seed: int = 0) -> bool:
    """Evaluate the square at random nonzero rational points on the surviving variables."""
    rng = random.Random(seed)
    for _ in range(trials):
        pt = {k: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for k in alive}
        if not any(pt.values()):
            continue
        zero = True
        for p in polys.values():
            val = Fraction(0)
            for mono, c in p.items():
                if all(x in pt for x in mono):
                    term = c
                    for x in mono:
                        term *= pt[x]
                    val += term
            if val:
                zero = False
                break
        if zero:
            return False
    return True


def _rank_certificate(rep, last, roots) -> tuple[bool, str]:
    """Show rank(rho(X_last) + sum c_k rho(X_k)) >= 4 for all nonzero c via 4x4 minors."""
    import sympy

    syms = sympy.symbols(f"c0:{len(roots)}")
    m = sympy.zeros(rep.dim, rep.dim)
    for (i, j), v in rep.matrix(last).items():
        m[i, j] += sympy.Rational(v.numerator, v.denominator)
    for s, r in zip(syms, roots):
        for (i, j), v in rep.matrix(r).items():
            m[i, j] += s * sympy.Rational(v.numerator, v.denominator)
    rows = [i for i in range(rep.dim) if any(m[i, j] != 0 for j in range(rep.dim))]
    cols = [j for j in range(rep.dim) if any(m[i, j] != 0 for i in range(rep.dim))]
    sub = m.extract(rows, cols)
    from itertools import combinations

    minors = set()
    for rs in combinations(range(sub.rows), 4):
        for cs in combinations(range(sub.cols), 4):
            d = sympy.expand(sub.extract(list(rs), list(cs)).det())
            if d != 0:
                minors.add(d)
    if not minors:
        return False, "all 4x4 minors vanish identically"
    gb = sympy.groebner(list(minors), *syms, order="grevlex")
    for s in syms:
        if not any(gb.contains(s**e) for e in range(1, 6)):
            return False, f"{s} not in the radical of the 4x4 minor ideal"
    return True, f"{len(minors)} nonzero 4x4 minors; every coefficient lies in the radical of their ideal"


def verify_chain_lemma(n: int) -> ChainReport:
    if n not in CHAIN:
        raise ValueError("n must be 5, 6 or 7")
    kind, weight = CHAIN[n]
    system = build_root_system(kind)
    rep = build_small_rep(kind, weight)
    last = system.simple_root(n)
    roots = [r for r in system.positive_roots if r[n - 1] == 0]
    labels = [root_label(r) for r in roots]
    report = ChainReport(n, str(kind), rep.dim, labels)
    polys = _square_polynomials(rep, last, roots)
    const_nonzero = any(() in p for p in polys.values())
    if const_nonzero:
        report.notes.append("X_last does not square to zero")
    report.rank_last = dense_rank(rep.dense(rep.matrix(last)))
    dead, log = _scan(polys, len(roots))
    report.eliminated = [(labels[k], key[0], key[1], v) for k, key, v in log]
    alive = [k for k in range(len(roots)) if k not in dead]
    report.survivors = [labels[k] for k in alive]
    if n in (6, 7):
        if alive:
            report.method = "randomized"
            report.passed = _randomized(polys, alive) and not const_nonzero
        else:
            report.passed = not const_nonzero
        return report
    # n = 5: square condition leaves some coefficients; use the rank bound
    base = rep.dense(rep.matrix(last))
    for k in alive:
        m = rep.dense(mat_add(rep.matrix(last), rep.matrix(roots[k])))
        report.single_ranks[labels[k]] = dense_rank(m)
    ok, msg = _rank_certificate(rep, last, [roots[k] for k in alive])
    report.rank_certificate = msg
    report.method = "rank"
    report.passed = (
        ok
        and not const_nonzero
        and report.rank_last == 2
        and all(v >= 4 for v in report.single_ranks.values())
        and dense_rank(base) == 2
    )
    return report
