"""Recompute every embedded table entry and compare."""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .. import classical
from ..geometry import TripleError, diagram_from_jordan_type, nilpotent_orbit_dim, orbit_dimension, weighted_dynkin
from ..liealg.chevalley import AlgebraElement, structure_constants
from ..liealg.roots import CartanType, LieError, build_root_system, neg
from ..parabolic import first_piece_realizations, grading, module_descriptor
from .dataset import Dataset, ModuleTable, OrbitRecord, Summary, load_paper_tables


@dataclass
class RecordCheck:
    record: OrbitRecord
    dim: int | None = None
    wdd: str | None = None
    nilpotent_dim: int | None = None
    jordan_wdd: str | None = None  # from the Jordan type of ad e; None when ambiguous
    status: str = "ok"  # ok, erratum or fail
    problems: list = field(default_factory=list)

    def as_dict(self) -> dict:
        r = self.record
        return {
            "group": str(r.group),
            "node": r.node,
            "piece": r.piece,
            "basepoint": r.basepoint_string(),
            "dim": r.dim,
            "wdd": r.coadjoint_label,
            "computed_dim": self.dim,
            "computed_wdd": self.wdd,
            "nilpotent_orbit_dim": self.nilpotent_dim,
            "jordan_wdd": self.jordan_wdd,
            "status": self.status,
            "problems": self.problems,
            "source": r.source,
        }


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class ModuleCheck:
    group: CartanType
    node: int
    piece: int
    records: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    @property
    def label(self) -> str:
        return f"{self.group} node {self.node} piece {self.piece}"

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and all(r.status != "fail" for r in self.records)

    def as_dict(self) -> dict:
        return {
            "group": str(self.group),
            "node": self.node,
            "piece": self.piece,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
            "records": [r.as_dict() for r in self.records],
        }


@dataclass
class VerificationReport:
    modules: list = field(default_factory=list)
    summary: list = field(default_factory=list)
    classical: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def n_records(self) -> int:
        return sum(len(m.records) for m in self.modules)

    def failures(self) -> list[str]:
        out = []
        for m in self.modules:
            for c in m.checks:
                if not c.passed:
                    out.append(f"{m.label}: {c.name}: {c.detail}")
            for r in m.records:
                if r.status == "fail":
                    out.append(f"{r.record.source}: {r.record.basepoint_string()}: {'; '.join(r.problems)}")
        out += [f"summary: {c.name}: {c.detail}" for c in self.summary if not c.passed]
        out += [f"classical: {c.name}: {c.detail}" for c in self.classical if not c.passed]
        return out

    def errata(self) -> list:
        return [r for m in self.modules for r in m.records if r.status == "erratum"]

    @property
    def ok(self) -> bool:
        return not self.failures()

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "records": self.n_records,
            "modules": len(self.modules),
            "errata": len(self.errata()),
            "failures": self.failures(),
            "notes": self.notes,
            "summary_checks": [c.as_dict() for c in self.summary],
            "classical_checks": [c.as_dict() for c in self.classical],
            "module_reports": [m.as_dict() for m in self.modules],
        }


@lru_cache(maxsize=None)
def _context(kind: CartanType, node: int):
    g = grading(kind, node)
    basis = structure_constants(g.system)
    levi = [r for b in g.levi_positive_roots for r in (b, neg(b))]
    return g, basis, levi


def recompute(record: OrbitRecord) -> tuple[int, str, int]:
    """(orbit dimension, weighted Dynkin diagram, nilpotent orbit dimension) of a basepoint."""
    g, basis, levi = _context(record.group, record.node)
    x = AlgebraElement.from_roots(g.system, record.roots())
    d = orbit_dimension(basis, g, record.piece, x)
    w = weighted_dynkin(basis, x, conjugators=levi)
    return d, str(w), nilpotent_orbit_dim(g.system, w)


def verify_record(record: OrbitRecord) -> RecordCheck:
    out = RecordCheck(record)
    try:
        g, _, _ = _context(record.group, record.node)
        if record.piece > g.m:
            raise LieError(f"piece {record.piece} does not exist (m = {g.m})")
        out.dim, out.wdd, out.nilpotent_dim = recompute(record)
    except (LieError, TripleError) as exc:
        out.status = "fail"
        out.problems.append(str(exc))
        return out
    g, basis, _ = _context(record.group, record.node)
    try:
        out.jordan_wdd = str(diagram_from_jordan_type(basis, AlgebraElement.from_roots(g.system, record.roots())))
    except TripleError:
        pass
    if out.jordan_wdd is not None and out.jordan_wdd != out.wdd:
        out.status = "fail"
        out.problems.append(f"sl2-triple gives {out.wdd} but the Jordan type of ad e gives {out.jordan_wdd}")
    mismatch = {}
    if out.dim != record.dim:
        mismatch["dim"] = out.dim
    if out.wdd != record.coadjoint_label:
        mismatch["wdd"] = out.wdd
    if out.dim > out.nilpotent_dim:
        out.status = "fail"
        out.problems.append(f"orbit dimension {out.dim} exceeds nilpotent orbit dimension {out.nilpotent_dim}")
    if mismatch:
        explained = all(record.erratum.get(k) == v for k, v in mismatch.items())
        for k, v in mismatch.items():
            printed = record.dim if k == "dim" else record.coadjoint_label
            out.problems.append(f"{k}: table {printed}, computed {v}")
        if explained and out.status != "fail":
            out.status = "erratum"
        else:
            out.status = "fail"
    return out


def _module_checks(table: ModuleTable, summary: Summary, results: list) -> list:
    checks = []
    kind, node, i = table.key
    g, _, _ = _context(kind, node)
    if i > g.m:
        return [Check("piece exists", False, f"{kind} node {node} has {g.m} pieces")]
    piece = g.piece(i)
    checks.append(Check("header dim", table.dim == piece.dim, f"header {table.dim}, computed {piece.dim}"))
    inside = set(piece.roots)
    outside = [r.basepoint_string() for r in table.records if any(x not in inside for x in r.roots())]
    checks.append(Check("basepoints in piece", not outside, ", ".join(outside)))
    zeros = sum(1 for r in table.records if r.is_zero)
    checks.append(Check("zero orbit once", zeros == 1, f"{zeros} zero rows"))
    dims = [r.dim for r in table.records]
    top = max(dims) if dims else None
    checks.append(
        Check(
            "dense orbit",
            top == piece.dim and dims.count(top) == 1,
            f"max listed {top} (x{dims.count(top) if dims else 0}), dim u_{i} = {piece.dim}",
        )
    )
    keys = Counter(frozenset(r.basepoint) for r in table.records)
    dup = [("+".join(sorted(k)) or "0") for k, c in keys.items() if c > 1]
    checks.append(Check("distinct basepoints", not dup, ", ".join(dup)))
    ps = summary.pieces.get(table.key)
    levi = summary.levi.get((kind, node))
    if ps is not None and levi is not None:
        d = module_descriptor(g, i)
        ok = sorted(levi) == sorted(g.levi_components) and ps.dim == d.dim
        ok = ok and (ps.action is None or ps.action == d.weight_string())
        checks.append(
            Check(
                "module descriptor",
                ok,
                f"summary {'x'.join(map(str, levi))} {ps.action or '-'} dim {ps.dim}; "
                f"computed {'x'.join(map(str, g.levi_components))} {d.weight_string()} dim {d.dim}",
            )
        )
        if ps.xref is not None:
            found = first_piece_realizations(kind, node, i)
            checks.append(
                Check(
                    "cross reference",
                    ps.xref in found,
                    f"{ps.xref[0]} node {ps.xref[1]} among {', '.join(f'{k} node {n}' for k, n in found)}",
                )
            )
    return checks


def verify_summary(summary: Summary, only: set | None = None) -> list:
    """Pieces, Levi types, actions and cross references for every summarized node."""
    out = []
    for kind, node in summary.nodes():
        if only is not None and (kind, node) not in only:
            continue
        g = grading(kind, node)
        listed = summary.pieces_of(kind, node)
        want = [p.dim for _, p in listed]
        have = [p.dim for p in g.pieces]
        out.append(Check(f"{kind} node {node} piece dims", want == have, f"summary {want}, computed {have}"))
        levi = summary.levi[(kind, node)]
        out.append(
            Check(
                f"{kind} node {node} Levi type",
                sorted(levi) == sorted(g.levi_components),
                f"summary {'x'.join(map(str, levi))}, computed {'x'.join(map(str, g.levi_components))}",
            )
        )
        for i, ps in listed:
            if i > g.m:
                continue
            d = module_descriptor(g, i)
            if ps.action is not None:
                out.append(
                    Check(
                        f"{kind} node {node} piece {i} action",
                        ps.action == d.weight_string(),
                        f"summary {ps.action}, computed {d.weight_string()}",
                    )
                )
            if ps.xref is not None:
                found = first_piece_realizations(kind, node, i)
                out.append(
                    Check(
                        f"{kind} node {node} piece {i} cross reference",
                        ps.xref in found,
                        f"{ps.xref[0]} node {ps.xref[1]}",
                    )
                )
    return out


# (type, node, piece) -> classical model of the piece
CLASSICAL_MODELS = {
    ("D4", 1, 1): ("ext2", 4),
    ("D4", 2, 1): ("bilinear", 2, "symmetric", 4),
    ("D5", 1, 1): ("bilinear", 1, "symmetric", 8),
    ("D5", 2, 1): ("bilinear", 2, "symmetric", 6),
    ("D5", 3, 1): ("bilinear", 3, "symmetric", 4),
    ("D5", 3, 2): ("tensor", 1, 3),
    ("D5", 4, 1): ("ext2", 5),
    ("D5", 5, 1): ("ext2", 5),
    ("E6", 3, 2): ("tensor", 1, 5),
    ("E6", 4, 2): ("tensor", 3, 3),
    ("E6", 4, 3): ("tensor", 1, 2),
    ("E6", 5, 2): ("tensor", 1, 5),
    ("E7", 3, 2): ("ext2", 6),
    ("E7", 3, 3): ("tensor", 1, 2),
    ("E7", 4, 2): ("bilinear", 3, "symmetric", 6),
    ("E7", 4, 3): ("tensor", 2, 4),
    ("E7", 4, 4): ("tensor", 1, 3),
    ("E7", 5, 2): ("tensor", 3, 5),
    ("E7", 5, 3): ("tensor", 1, 5),
    ("E7", 6, 2): ("bilinear", 1, "symmetric", 10),
    ("E8", 1, 2): ("bilinear", 1, "symmetric", 14),
    ("E8", 2, 2): ("ext2", 8),
    ("E8", 3, 3): ("tensor", 2, 7),
    ("E8", 4, 4): ("tensor", 3, 5),
    ("E8", 4, 5): ("tensor", 2, 3),
    ("E8", 5, 2): ("bilinear", 5, "symmetric", 6),
    ("E8", 5, 3): ("tensor", 4, 5),
    ("E8", 5, 4): ("ext2", 5),
    ("E8", 6, 2): ("bilinear", 3, "symmetric", 10),
    ("F4", 2, 2): ("sym2", 3),
    ("F4", 3, 2): ("bilinear", 3, "symmetric", 3),
    ("F4", 4, 2): ("bilinear", 1, "symmetric", 7),
}

# orbit dimensions quoted in words for classical pieces
QUOTED_DIMS = {
    ("E7", 3, 2): [15, 14, 9, 0],
    ("F4", 2, 2): [6, 5, 3, 0],
    ("F4", 4, 2): [7, 6, 0],
    ("E8", 1, 2): [14, 13, 0],
    ("D5", 4, 1): [10, 7, 0],
}


def classical_orbits(model: tuple) -> tuple[list, classical.BilinearSpace | None]:
    kind = model[0]
    if kind == "ext2":
        return classical.enumerate_exterior_square(model[1]), None
    if kind == "sym2":
        return classical.enumerate_symmetric_square(model[1]), None
    if kind == "tensor":
        return classical.enumerate_tensor_gl(model[1], model[2]), None
    k, sym, n = model[1:]
    space = classical.BilinearSpace.split_symmetric(n) if sym == "symmetric" else classical.BilinearSpace.split_skew(n)
    return classical.enumerate_bilinear_tensor(k, space), space


def verify_classical(dataset: Dataset, nodes: set | None = None) -> tuple[list, list]:
    checks, notes = [], []
    for (grp, node, piece), model in CLASSICAL_MODELS.items():
        key = (CartanType.parse(grp), node, piece)
        if nodes is not None and key[:2] not in nodes:
            continue
        orbits, space = classical_orbits(model)
        dims = sorted((classical.orbit_dimension(o, space) for o in orbits), reverse=True)
        name = f"{grp} node {node} piece {piece} ~ {model[0]}{model[1:]}"
        if key in dataset.modules:
            listed = sorted((r.dim for r in dataset.modules[key].records), reverse=True)
            checks.append(Check(name, listed == dims, f"table {listed}, enumerator {dims}"))
        quoted = QUOTED_DIMS.get((grp, node, piece))
        if quoted is not None:
            checks.append(Check(name + " quoted dims", quoted == dims, f"quoted {quoted}, enumerator {dims}"))
        if space is not None:
            extra = classical.literal_row_constraint_violations(model[1], space)
            if extra:
                notes.append(
                    f"{name}: reading the row bound 2s+p <= k literally would drop "
                    + ", ".join(f"(rank {o.rank_a}, Witt rank {o.witt_rank})" for o in extra)
                    + f"; the table lists {len(orbits)} orbits, so the bound is not applied"
                )
    return checks, notes


def _verify_chunk(records: list) -> list:
    return [verify_record(r) for r in records]


def verify_module(group, node: int, piece: int, dataset: Dataset | None = None) -> ModuleCheck:
    ds = dataset or load_paper_tables()
    table = ds.module(group, node, piece)
    results = [verify_record(r) for r in table.records]
    out = ModuleCheck(table.group, node, piece, results)
    out.checks = _module_checks(table, ds.summary, results)
    return out


def verify_all(dataset: Dataset | None = None, workers: int = 1, classical_checks: bool = True) -> VerificationReport:
    """Recompute every record, then the per-module, summary and classical checks."""
    ds = dataset or load_paper_tables()
    tables = list(ds.modules.values())
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_verify_chunk, t.records) for t in tables]
            chunks = [f.result() for f in futures]
    else:
        chunks = [_verify_chunk(t.records) for t in tables]
    report = VerificationReport()
    for table, results in zip(tables, chunks):
        m = ModuleCheck(table.group, table.node, table.piece, results)
        m.checks = _module_checks(table, ds.summary, results)
        report.modules.append(m)
    nodes = {(t.group, t.node) for t in tables}
    report.summary = verify_summary(ds.summary, nodes)
    if classical_checks:
        report.classical, notes = verify_classical(ds, nodes)
        report.notes.extend(notes)
    for r in report.errata():
        report.notes.append(f"erratum {r.record.source}: {'; '.join(r.problems)}")
    return report

