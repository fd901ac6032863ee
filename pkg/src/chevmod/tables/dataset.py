"""Loading the embedded orbit tables and the per-node summary."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from ..liealg.roots import CartanType, LieError, build_root_system, parse_root_label

DATA_DIR = Path(__file__).parent / "data"
SUMMARY_FILE = "summary.txt"

_MODULE_RE = re.compile(r"module ([A-G])(\d+) node (\d+) piece (\d+) dim (\d+)")
_ORBIT_RE = re.compile(r"orbit (\S+) dim (\d+) wdd (\d+)(?: erratum (.+))?")
_LEVI_RE = re.compile(r"levi ([A-G]\d+) (\d+)((?: [A-G]\d+)+)")
_PIECE_RE = re.compile(
    r"piece ([A-G]\d+) (\d+) (\d+) dim (\d+) action (\S+)(?: xref ([A-G]\d+) (\d+))?"
)

# nodes stored as images of other nodes under a diagram automorphism (1-based permutation)
IMAGES = {
    ("E6", 5): ("E6", 3, (6, 2, 5, 4, 3, 1)),
    ("E6", 6): ("E6", 1, (6, 2, 5, 4, 3, 1)),
    ("D5", 5): ("D5", 4, (1, 2, 3, 5, 4)),
}


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class OrbitRecord:
    group: CartanType
    node: int
    piece: int
    basepoint: tuple  # root labels; empty for the zero orbit
    dim: int
    coadjoint_label: str
    erratum: dict = field(default_factory=dict, compare=False, hash=False)
    source: str = field(default="", compare=False)

    @property
    def key(self) -> tuple:
        return (self.group, self.node, self.piece)

    @property
    def is_zero(self) -> bool:
        return not self.basepoint

    def basepoint_string(self) -> str:
        return "+".join(self.basepoint) if self.basepoint else "0"

    def roots(self) -> list:
        system = build_root_system(self.group)
        return [parse_root_label(system, lab) for lab in self.basepoint]


@dataclass
class ModuleTable:
    group: CartanType
    node: int
    piece: int
    dim: int
    records: list = field(default_factory=list)
    source: str = ""

    @property
    def key(self) -> tuple:
        return (self.group, self.node, self.piece)


@dataclass(frozen=True)
class PieceSummary:
    dim: int
    action: str | None  # weight string, "0", or None when not given
    xref: tuple | None  # (CartanType, node)


@dataclass
class Summary:
    levi: dict = field(default_factory=dict)  # (CartanType, node) -> tuple of CartanType
    pieces: dict = field(default_factory=dict)  # (CartanType, node, i) -> PieceSummary

    def nodes(self) -> list:
        return sorted(self.levi)

    def pieces_of(self, kind: CartanType, node: int) -> list:
        return sorted((k[2], v) for k, v in self.pieces.items() if k[:2] == (kind, node))


@dataclass
class Dataset:
    modules: dict = field(default_factory=dict)  # key -> ModuleTable, in load order
    summary: Summary = field(default_factory=Summary)

    def records(self) -> list:
        return [r for m in self.modules.values() for r in m.records]

    def module(self, group, node: int, piece: int) -> ModuleTable:
        kind = CartanType.parse(group) if isinstance(group, str) else group
        try:
            return self.modules[(kind, node, piece)]
        except KeyError:
            raise DatasetError(f"no table for {kind} node {node} piece {piece}") from None

    def restrict(self, group=None, node: int | None = None) -> "Dataset":
        kind = CartanType.parse(group) if isinstance(group, str) else group
        mods = {
            k: m
            for k, m in self.modules.items()
            if (kind is None or k[0] == kind) and (node is None or k[1] == node)
        }
        return Dataset(mods, self.summary)

    def __len__(self) -> int:
        return sum(len(m.records) for m in self.modules.values())


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_erratum(text: str, where: str) -> dict:
    out = {}
    for tok in text.split():
        name, _, value = tok.partition("=")
        if name == "dim" and value.isdigit():
            out["dim"] = int(value)
        elif name == "wdd" and value.isdigit():
            out["wdd"] = value
        else:
            raise DatasetError(f"{where}: bad erratum token {tok!r}")
    return out


def parse_table_text(text: str, source: str = "<string>") -> list[ModuleTable]:
    mods: list[ModuleTable] = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        where = f"{source}:{lineno}"
        m = _MODULE_RE.fullmatch(line)
        if m:
            fam, rank, node, piece, dim = m.groups()
            try:
                kind = CartanType(fam, int(rank))
            except LieError as exc:
                raise DatasetError(f"{where}: {exc}") from None
            if not 1 <= int(node) <= kind.rank:
                raise DatasetError(f"{where}: node {node} out of range for {kind}")
            current = ModuleTable(kind, int(node), int(piece), int(dim), source=where)
            mods.append(current)
            continue
        m = _ORBIT_RE.fullmatch(line)
        if not m:
            raise DatasetError(f"{where}: cannot parse {raw.strip()!r}")
        if current is None:
            raise DatasetError(f"{where}: orbit line before any module header")
        labels, dim, wdd, err = m.groups()
        kind = current.group
        if len(wdd) != kind.rank:
            raise DatasetError(f"{where}: diagram {wdd} has the wrong length for {kind}")
        basepoint = () if labels == "0" else tuple(labels.split("+"))
        system = build_root_system(kind)
        for lab in basepoint:
            try:
                parse_root_label(system, lab)
            except LieError as exc:
                raise DatasetError(f"{where}: {exc}") from None
        erratum = _parse_erratum(err, where) if err else {}
        current.records.append(
            OrbitRecord(kind, current.node, current.piece, basepoint, int(dim), wdd, erratum, where)
        )
    return mods


def parse_summary_text(text: str, source: str = "<string>") -> Summary:
    out = Summary()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        where = f"{source}:{lineno}"
        try:
            m = _LEVI_RE.fullmatch(line)
            if m:
                kind = CartanType.parse(m.group(1))
                out.levi[(kind, int(m.group(2)))] = tuple(CartanType.parse(t) for t in m.group(3).split())
                continue
            m = _PIECE_RE.fullmatch(line)
            if m:
                kind = CartanType.parse(m.group(1))
                action = None if m.group(5) == "-" else m.group(5)
                xref = (CartanType.parse(m.group(6)), int(m.group(7))) if m.group(6) else None
                out.pieces[(kind, int(m.group(2)), int(m.group(3)))] = PieceSummary(int(m.group(4)), action, xref)
                continue
        except LieError as exc:
            raise DatasetError(f"{where}: {exc}") from None
        raise DatasetError(f"{where}: cannot parse {raw.strip()!r}")
    return out


def _relabel(label: str, perm: tuple) -> str:
    out = [""] * len(label)
    for j, ch in enumerate(label):
        out[perm[j] - 1] = ch
    return "".join(out)


def image_table(table: ModuleTable, node: int, perm: tuple) -> ModuleTable:
    """Transport a table along a diagram automorphism given as a node permutation."""
    src = f"image of {table.group} node {table.node} ({table.source})"
    out = ModuleTable(table.group, node, table.piece, table.dim, source=src)
    for r in table.records:
        err = dict(r.erratum)
        if "wdd" in err:
            err["wdd"] = _relabel(err["wdd"], perm)
        out.records.append(
            OrbitRecord(
                r.group,
                node,
                r.piece,
                tuple(_relabel(lab, perm) for lab in r.basepoint),
                r.dim,
                _relabel(r.coadjoint_label, perm),
                err,
                src,
            )
        )
    return out


def _add(mods: dict, table: ModuleTable) -> None:
    if table.key in mods:
        raise DatasetError(f"{table.source}: duplicate table for {table.group} node {table.node} piece {table.piece}")
    mods[table.key] = table


def load_paper_tables(path: str | Path | None = None) -> Dataset:
    """Load the orbit tables (embedded by default; a file or directory overrides them)."""
    root = DATA_DIR if path is None else Path(path)
    if root.is_dir():
        files = sorted(p for p in root.glob("*.txt") if p.name != SUMMARY_FILE)
        summary_path = root / SUMMARY_FILE if (root / SUMMARY_FILE).exists() else DATA_DIR / SUMMARY_FILE
    elif root.is_file():
        files = [root]
        summary_path = DATA_DIR / SUMMARY_FILE
    else:
        raise DatasetError(f"{root}: no such file or directory")
    mods: dict = {}
    for f in files:
        for t in parse_table_text(f.read_text(encoding="utf-8"), f.name):
            _add(mods, t)
    for (group, node), (sgroup, snode, perm) in IMAGES.items():
        kind = CartanType.parse(group)
        for key in [k for k in list(mods) if k[0] == CartanType.parse(sgroup) and k[1] == snode]:
            if (kind, node, key[2]) not in mods:
                _add(mods, image_table(mods[key], node, perm))
    ordered = dict(sorted(mods.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2])))
    summary = parse_summary_text(summary_path.read_text(encoding="utf-8"), summary_path.name)
    return Dataset(ordered, summary)
