"""Exact sparse linear algebra over the rationals.

Rows are dicts mapping a column index to a nonzero int or Fraction.
"""
from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Iterable, Mapping

SparseRow = dict


class Echelon:
    """Incremental row echelon form; each pivot row starts at its pivot column."""

    def __init__(self) -> None:
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping) -> dict:
        """Reduce `row` until its leading column is not a pivot column."""
        r = {c: Fraction(v) for c, v in row.items() if v}
        heap = list(r)
        heapify(heap)
        while heap:
            c = heappop(heap)
            v = r.get(c)
            if v is None:
                continue
            prow = self.pivots.get(c)
            if prow is None:
                # smaller columns are gone, so c leads the row
                break
            for k, pv in prow.items():
                nv = r.get(k, 0) - v * pv
                if nv:
                    if k not in r:
                        heappush(heap, k)
                    r[k] = nv
                else:
                    r.pop(k, None)
        return r

    def add(self, row: Mapping) -> bool:
        """Insert a row; return True when it raised the rank."""
        r = self.reduce(row)
        if not r:
            return False
        lead = min(r)
        inv = 1 / r[lead]
        self.pivots[lead] = {k: v * inv for k, v in r.items()}
        return True


def rank(rows: Iterable[Mapping]) -> int:
    ech = Echelon()
    for row in rows:
        ech.add(row)
    return ech.rank


def dense_rank(matrix: list[list]) -> int:
    return rank({j: v for j, v in enumerate(r) if v} for r in matrix)


def solve(equations: Iterable[tuple[Mapping, object]], nvars: int) -> dict | None:
    """Solve sum(coef * x[col]) = rhs for each (coeffs, rhs); free variables are 0.

    Returns a sparse solution dict, or None when the system is inconsistent.
    """
    rhs_col = nvars
    ech = Echelon()
    for coeffs, rhs in equations:
        row = dict(coeffs)
        if rhs:
            row[rhs_col] = rhs
        r = ech.reduce(row)
        if not r:
            continue
        lead = min(r)
        if lead == rhs_col:
            return None
        inv = 1 / r[lead]
        ech.pivots[lead] = {k: v * inv for k, v in r.items()}
    x: dict[int, Fraction] = {}
    for p in sorted(ech.pivots, reverse=True):
        prow = ech.pivots[p]
        val = prow.get(rhs_col, Fraction(0))
        for k, v in prow.items():
            if k != p and k != rhs_col and k in x:
                val -= v * x[k]
        if val:
            x[p] = val
    return x


def nullspace(matrix: list[list]) -> list[list[Fraction]]:
    """Basis of {x : matrix @ x = 0} for a dense matrix."""
    ncols = len(matrix[0]) if matrix else 0
    ech = Echelon()
    for r in matrix:
        ech.add({j: v for j, v in enumerate(r) if v})
    # full back-reduction so pivot rows carry only free columns
    piv = sorted(ech.pivots)
    rows = {p: dict(ech.pivots[p]) for p in piv}
    for p in reversed(piv):
        for q in piv:
            if q < p and p in rows[q]:
                f = rows[q][p]
                for k, v in rows[p].items():
                    nv = rows[q].get(k, 0) - f * v
                    if nv:
                        rows[q][k] = nv
                    else:
                        rows[q].pop(k, None)
    free = [j for j in range(ncols) if j not in rows]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * ncols
        vec[fcol] = Fraction(1)
        for p, row in rows.items():
            vec[p] = -row.get(fcol, 0)
        basis.append(vec)
    return basis


def rank_mod_p(matrix: list[list[int]], p: int) -> int:
    """Rank over the prime field F_p of a small dense integer matrix."""
    m = [[x % p for x in row] for row in matrix]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
    return r


def matmul(a: list[list], b: list[list]) -> list[list]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(a: list[list]) -> list[list]:
    return [list(r) for r in zip(*a)]
