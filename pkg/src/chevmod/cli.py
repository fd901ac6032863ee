"""Command-line interface: ``chevmod <command> ...`` or ``python -m chevmod``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import classical
from .geometry import TripleError, is_minimal_orbit, nilpotent_orbit_dim, weighted_dynkin
from .liealg.chain import verify_chain_lemma
from .liealg.chevalley import AlgebraElement, structure_constants
from .liealg.roots import CartanType, LieError, build_root_system, parse_root_label, root_label
from .parabolic import describe, first_piece_realization, grading
from .tables.dataset import DatasetError, load_paper_tables
from .tables.support import minimal_support_check
from .tables.verify import verify_all, verify_record

SCHEMA = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        # --help lands here; report it as a usage document instead of exiting
        raise UsageError(message or self.format_help())


@dataclass
class OutputDocument:
    format: str
    payload: dict

    def render(self) -> str:
        if self.format == "json":
            return json.dumps({"schema": SCHEMA, **self.payload}, indent=2, sort_keys=False)
        if "error" in self.payload:
            return _text_generic(self.payload)
        return _TEXT.get(self.payload.get("command"), _text_generic)(self.payload)


def _type(token: str) -> CartanType:
    try:
        kind = CartanType.parse(token)
        build_root_system(kind)
    except LieError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return kind


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--dataset", default=argparse.SUPPRESS, help="orbit table file or directory")

    p = _Parser(prog="chevmod", description="Orbits of internal Chevalley modules.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("roots", parents=[common], help="root system of a type")
    s.add_argument("type", type=_type)

    s = sub.add_parser("grade", parents=[common], help="graded nilradical of a maximal parabolic")
    s.add_argument("type", type=_type)
    s.add_argument("--node", type=int, required=True)

    s = sub.add_parser("orbits", parents=[common], help="embedded orbit table with recomputed columns")
    s.add_argument("type", type=_type)
    s.add_argument("--node", type=int, required=True)
    s.add_argument("--piece", type=int)

    s = sub.add_parser("classical", parents=[common], help="classical orbit enumerators")
    cs = s.add_subparsers(dest="module", required=True, parser_class=_Parser)
    t = cs.add_parser("tensor", parents=[common])
    t.add_argument("n1", type=int)
    t.add_argument("n2", type=int)
    t = cs.add_parser("bilinear", parents=[common])
    t.add_argument("k", type=int)
    t.add_argument("n", type=int, help="dimension of the bilinear space")
    t.add_argument("--form", choices=("symmetric", "skew"), default="symmetric")
    t = cs.add_parser("sym2", parents=[common])
    t.add_argument("n", type=int)
    t = cs.add_parser("ext2", parents=[common])
    t.add_argument("n", type=int)

    s = sub.add_parser("dynkin", parents=[common], help="weighted Dynkin diagram of a sum of root vectors")
    s.add_argument("type", type=_type)
    s.add_argument("--element", required=True, help="root labels joined by '+'")

    s = sub.add_parser("lemma-chain", parents=[common], help="square-zero and rank argument")
    s.add_argument("--n", type=int, choices=(5, 6, 7), required=True)

    s = sub.add_parser("support", parents=[common], help="minimal orbit check along the E6/E7 chain")
    s.add_argument("group", choices=("E6", "E7"))
    s.add_argument("--skip-lemma", action="store_true")

    s = sub.add_parser("verify", parents=[common], help="recompute the orbit tables")
    s.add_argument("--group", type=_type)
    s.add_argument("--node", type=int)
    s.add_argument("--workers", type=int, default=1)
    return p


# ---- commands ---------------------------------------------------------------

def _cmd_roots(args) -> tuple[int, dict]:
    system = build_root_system(args.type)
    return 0, {
        "type": str(args.type),
        "group": args.type.display_name,
        "rank": system.rank,
        "dim": system.dim,
        "positive_roots": len(system.positive_roots),
        "roots": len(system.roots),
        "highest_root": root_label(system.highest_root),
        "cartan_matrix": [list(r) for r in system.cartan],
        "positive": [root_label(r) for r in system.positive_roots],
    }


def _cmd_grade(args) -> tuple[int, dict]:
    if not 1 <= args.node <= args.type.rank:
        raise UsageError(f"node must lie in 1..{args.type.rank}")
    g = grading(args.type, args.node)
    out = describe(g)
    for entry in out["pieces"]:
        if entry["index"] >= 2:
            hit = first_piece_realization(args.type, args.node, entry["index"])
            entry["first_piece_realization"] = f"{hit[0]} node {hit[1]}" if hit else None
    out["m"] = g.m
    out["dims"] = [p.dim for p in g.pieces]
    return 0, out


def _cmd_orbits(args, dataset) -> tuple[int, dict]:
    ds = dataset.restrict(args.type, args.node)
    tables = [t for t in ds.modules.values() if args.piece is None or t.piece == args.piece]
    if not tables:
        raise DatasetError(f"no table for {args.type} node {args.node}" + (f" piece {args.piece}" if args.piece else ""))
    out = []
    bad = 0
    for t in tables:
        rows = [verify_record(r).as_dict() for r in t.records]
        bad += sum(1 for r in rows if r["status"] == "fail")
        out.append({"piece": t.piece, "dim": t.dim, "source": t.source, "rows": rows})
    return (1 if bad else 0), {"type": str(args.type), "node": args.node, "tables": out}


def _orbit_dict(o: classical.ClassicalOrbit, space) -> dict:
    return {
        "rank_a": o.rank_a,
        "witt_rank": o.witt_rank,
        "split_tag": o.split_tag,
        "dim": classical.orbit_dimension(o, space),
        "representative": [[str(x) for x in row] for row in o.representative],
    }


def _cmd_classical(args) -> tuple[int, dict]:
    space = None
    if args.module == "tensor":
        orbits = classical.enumerate_tensor_gl(args.n1, args.n2)
        params = {"n1": args.n1, "n2": args.n2}
    elif args.module == "sym2":
        orbits = classical.enumerate_symmetric_square(args.n)
        params = {"n": args.n}
    elif args.module == "ext2":
        orbits = classical.enumerate_exterior_square(args.n)
        params = {"n": args.n}
    else:
        space = (
            classical.BilinearSpace.split_symmetric(args.n)
            if args.form == "symmetric"
            else classical.BilinearSpace.split_skew(args.n)
        )
        orbits = classical.enumerate_bilinear_tensor(args.k, space)
        params = {"k": args.k, "n": args.n, "form": args.form}
    return 0, {"module": args.module, "params": params, "count": len(orbits),
               "orbits": [_orbit_dict(o, space) for o in orbits]}


def _cmd_dynkin(args) -> tuple[int, dict]:
    system = build_root_system(args.type)
    labels = [s for s in args.element.split("+") if s]
    roots = [parse_root_label(system, lab) for lab in labels]
    basis = structure_constants(system)
    x = AlgebraElement.from_roots(system, roots)
    w = weighted_dynkin(basis, x)
    return 0, {
        "type": str(args.type),
        "element": "+".join(labels),
        "wdd": str(w),
        "orbit_dim": nilpotent_orbit_dim(system, w),
        "minimal": is_minimal_orbit(system, w),
    }


def _cmd_lemma(args) -> tuple[int, dict]:
    rep = verify_chain_lemma(args.n)
    return (0 if rep.passed else 1), rep.as_dict()


def _cmd_support(args, dataset) -> tuple[int, dict]:
    rep = minimal_support_check(args.group, dataset, chain_lemma=not args.skip_lemma)
    return (0 if rep.passed else 1), rep.as_dict()


def _cmd_verify(args, dataset) -> tuple[int, dict]:
    ds = dataset.restrict(args.group, args.node) if (args.group or args.node) else dataset
    rep = verify_all(ds, workers=args.workers)
    out = rep.as_dict()
    return (0 if rep.ok else 1), out


def _sniff_format(argv: list) -> str:
    """Output format for usage errors, which happen before parsing succeeds."""
    for k, tok in enumerate(argv):
        if tok == "--format" and k + 1 < len(argv):
            return "json" if argv[k + 1] == "json" else "text"
        if tok.startswith("--format="):
            return "json" if tok.endswith("=json") else "text"
    return "text"


def run(argv) -> tuple[int, OutputDocument]:
    argv = list(argv)
    fmt = _sniff_format(argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return 2, OutputDocument(fmt, {"command": None, "error": str(exc).strip()})
    fmt = getattr(args, "format", "text")
    base = {"command": args.command}
    try:
        if args.command in ("orbits", "verify", "support"):
            dataset = load_paper_tables(getattr(args, "dataset", None))
            handler = {"orbits": _cmd_orbits, "verify": _cmd_verify, "support": _cmd_support}[args.command]
            code, payload = handler(args, dataset)
        else:
            handler = {
                "roots": _cmd_roots,
                "grade": _cmd_grade,
                "classical": _cmd_classical,
                "dynkin": _cmd_dynkin,
                "lemma-chain": _cmd_lemma,
            }[args.command]
            code, payload = handler(args)
    except UsageError as exc:
        return 2, OutputDocument(fmt, {**base, "error": str(exc)})
    except (LieError, TripleError, DatasetError, classical.ClassicalError) as exc:
        return 2, OutputDocument(fmt, {**base, "error": str(exc)})
    return code, OutputDocument(fmt, {**base, **payload})


# ---- text rendering ---------------------------------------------------------

def _text_generic(p: dict) -> str:
    if "error" in p:
        return f"error: {p['error']}"
    return json.dumps(p, indent=2)


def _text_roots(p: dict) -> str:
    lines = [
        f"{p['type']} ({p['group']}): rank {p['rank']}, dim {p['dim']}",
        f"positive roots: {p['positive_roots']}  roots: {p['roots']}  highest root: {p['highest_root']}",
        "cartan matrix:",
    ]
    lines += ["  " + " ".join(f"{x:>2}" for x in row) for row in p["cartan_matrix"]]
    lines.append("positive roots: " + " ".join(p["positive"]))
    return "\n".join(lines)


def _text_grade(p: dict) -> str:
    lines = [
        f"{p['type']} node {p['marked'][0]}: Levi [L,L] = {' x '.join(p['levi']) or 'trivial'}"
        f" ({' x '.join(p['levi_names'])}), {p['m']} piece(s), dims {' '.join(map(str, p['dims']))}"
    ]
    for e in p["pieces"]:
        extra = f"  same module as {e['first_piece_realization']}" if e.get("first_piece_realization") else ""
        lines.append(
            f"  u_{e['index']}: dim {e['dim']:>3}  action {e.get('highest_weight', '?'):<10} "
            f"{e.get('module', '')}  (highest root {e.get('highest_root', '?')}){extra}"
        )
    return "\n".join(lines)


def _text_orbits(p: dict) -> str:
    lines = []
    for t in p["tables"]:
        lines.append(f"{p['type']} node {p['node']} piece {t['piece']} (dim {t['dim']})")
        lines.append(f"  {'basepoint':<48} {'dim':>4} {'wdd':<10} {'calc':>4} {'calc wdd':<10} {'G-dim':>5} status")
        for r in t["rows"]:
            lines.append(
                f"  {r['basepoint']:<48} {r['dim']:>4} {r['wdd']:<10} {str(r['computed_dim']):>4} "
                f"{str(r['computed_wdd']):<10} {str(r['nilpotent_orbit_dim']):>5} {r['status']}"
            )
    return "\n".join(lines)


def _text_classical(p: dict) -> str:
    params = " ".join(f"{k}={v}" for k, v in p["params"].items())
    lines = [f"{p['module']} {params}: {p['count']} orbits"]
    for o in p["orbits"]:
        tag = f" split {o['split_tag']}" if o["split_tag"] else ""
        witt = f" witt rank {o['witt_rank']}" if o["witt_rank"] is not None else ""
        lines.append(f"  rank {o['rank_a']}{witt}{tag}: dim {o['dim']}")
    return "\n".join(lines)


def _text_dynkin(p: dict) -> str:
    tail = ", minimal orbit" if p["minimal"] else ""
    return f"{p['wdd']} (orbit dim {p['orbit_dim']}){tail}"


def _text_lemma(p: dict) -> str:
    lines = [
        f"n = {p['n']} ({p['group']}, {p['rep_dim']}-dim module): {p['coefficients']} coefficients, "
        f"{len(p['eliminated'])} eliminated by the square condition, method {p['method']}",
    ]
    if p["survivors"]:
        lines.append(f"  survivors: {' '.join(p['survivors'])}")
    if p["rank_last"] is not None:
        lines.append(f"  rank of the last simple root vector: {p['rank_last']}")
    if p["single_ranks"]:
        lines.append("  single perturbation ranks: " + ", ".join(f"{k}: {v}" for k, v in p["single_ranks"].items()))
    if p["rank_certificate"]:
        lines.append(f"  certificate: {p['rank_certificate']}")
    lines += [f"  note: {n}" for n in p["notes"]]
    lines.append("PASS" if p["passed"] else "FAIL")
    return "\n".join(lines)


def _text_support(p: dict) -> str:
    lines = [f"minimal support check from {p['group']}"]
    for s in p["steps"]:
        lines.append(f"  {s['group']} node {s['node']}: abelian {s['abelian']}; {s['detail']}: "
                     f"{'pass' if s['passed'] else 'FAIL'}")
    for c in p["chain_lemma"]:
        lines.append(f"  chain lemma n = {c['n']}: {'pass' if c['passed'] else 'FAIL'}")
    lines.append("PASS" if p["passed"] else "FAIL")
    return "\n".join(lines)


def _text_verify(p: dict) -> str:
    lines = [f"{p['records']} records in {p['modules']} tables; {p['errata']} erratum, {len(p['failures'])} failures"]
    for m in p["module_reports"]:
        n_ok = sum(1 for r in m["records"] if r["status"] == "ok")
        lines.append(
            f"  {m['group']} node {m['node']} piece {m['piece']}: {n_ok}/{len(m['records'])} records agree"
            f"{'' if m['passed'] else '  FAIL'}"
        )
    lines.append(f"summary checks: {sum(c['passed'] for c in p['summary_checks'])}/{len(p['summary_checks'])}")
    lines.append(f"classical checks: {sum(c['passed'] for c in p['classical_checks'])}/{len(p['classical_checks'])}")
    lines += [f"note: {n}" for n in p["notes"]]
    lines += [f"FAIL {f}" for f in p["failures"]]
    lines.append("OK" if p["ok"] else "FAILED")
    return "\n".join(lines)


_TEXT = {
    "roots": _text_roots,
    "grade": _text_grade,
    "orbits": _text_orbits,
    "classical": _text_classical,
    "dynkin": _text_dynkin,
    "lemma-chain": _text_lemma,
    "support": _text_support,
    "verify": _text_verify,
}


def main(argv=None) -> int:
    code, doc = run(sys.argv[1:] if argv is None else argv)
    print(doc.render(), file=sys.stderr if code == 2 else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
