"""Command-line workbench: ``richgeom <group> <action> [options]``.

Every command writes a JSON report (or CSV for tabular results) to ``-o`` or
stdout.  Exit codes: 0 success, 1 usage error, 2 guard or hypothesis failure,
3 unreadable or malformed input, 4 any other domain error.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
import time
from fractions import Fraction

from . import arrangement, cuttings, extremal, lemmalab, richmaps
from .errors import BudgetExceeded, GuardExceeded, HypothesisViolated, RichGeomError
from .io import (
    ParseError,
    dump_lines,
    dump_points,
    dump_triples,
    file_digest,
    load_lines,
    load_maps,
    load_points,
    load_triples,
    parse_rat,
    read_json,
    to_jsonable,
)

EXIT_OK, EXIT_USAGE, EXIT_GUARD, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _rational(s):
    try:
        return parse_rat(s)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(s):
    try:
        return [int(v) for v in s.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None


# --------------------------------------------------------------------------- I/O


class _Inputs:
    """Loads input files and remembers their digests for the report."""

    def __init__(self, args):
        self.args = args
        self.digests = {}

    def _read(self, path):
        self.digests[path] = file_digest(path)
        obj = read_json(path)
        # reports written by this tool carry their data under "result"
        if isinstance(obj, dict) and isinstance(obj.get("result"), dict) and "command" in obj:
            obj = obj["result"]
        return obj

    def points(self, attr="input"):
        path = getattr(self.args, attr)
        if path is None:
            raise UsageError(f"--{attr.replace('_', '-')} is required")
        return load_points(self._read(path), self.args.allow_duplicates)

    def lines(self, attr="lines"):
        path = getattr(self.args, attr)
        if path is None:
            raise UsageError(f"--{attr} is required")
        return load_lines(self._read(path))

    def maps(self):
        if self.args.maps is None:
            raise UsageError("--maps is required")
        return load_maps(self._read(self.args.maps))

    def triples(self):
        if self.args.input is None:
            raise UsageError("--input is required")
        return load_triples(self._read(self.args.input))


def _need(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")


def _records(records):
    return [{"map": r.map, "matches": r.match_count} for r in records]


# ----------------------------------------------------------------------- gen


def _construction(out: extremal.ConstructionOutput, with_family=True):
    meta = dict(out.metadata)
    meta.update(claimed_lower_bound=out.claimed_lower_bound, certified=len(out.certified_family),
                verified=out.all_verified)
    if with_family:
        fam = out.certified_family
        if fam and isinstance(fam[0], extremal.AffineSubspace):
            meta["family_maps"] = [{"a": S.a, "c": S.c} for S in fam]
        else:
            meta["family_maps"] = fam
        meta["family_counts"] = out.verified_counts
    return dump_points(out.points, meta)


def cmd_gen(args, inp):
    kind = args.action
    if kind == "shift":
        _need(args, "n", "k")
        return _construction(extremal.gen_shift_example(args.n, args.k))
    if kind == "noncollinear":
        _need(args, "n")
        return _construction(extremal.gen_noncollinear_affine_example(args.n))
    if kind == "grid-affine":
        _need(args, "n", "k")
        out = extremal.gen_grid_affine_example(args.n, args.k)
        out.metadata.pop("parameters")
        return _construction(out)
    if kind == "subspace":
        _need(args, "D", "r", "t", "side")
        return _construction(extremal.gen_subspace_example(args.D, args.r, args.t, args.side),
                             with_family=False)
    if kind == "sidon":
        _need(args, "t")
        fn = extremal.multiplicative_sidon if args.multiplicative else extremal.sidon_set
        return {"set": fn(args.t)}
    raise UsageError(f"unknown generator {kind}")


# --------------------------------------------------------------------- count


def _scalar_points(pts):
    if pts and len(pts[0]) != 1:
        raise UsageError("this count needs a one-dimensional point file")
    return [p[0] for p in pts]


def cmd_count(args, inp):
    kind = args.action
    if kind != "rich-lines":
        _need(args, "k")
    pts = inp.points()
    k, g = args.k, args.guard
    if kind == "translations":
        res = richmaps.count_rich_translations(pts, k)
        nonzero = [(t, m) for t, m in res if any(t.vector)]
        return {"count": len(res), "count_nonzero": len(nonzero),
                "maps": [{"map": t, "matches": m} for t, m in res]}
    if kind == "affine2":
        P2 = inp.points("input2") if args.input2 else pts
        recs = richmaps.enumerate_rich_affine2(pts, P2, k, guard=g)
    elif kind == "affine1":
        recs = richmaps.enumerate_rich_affine1(_scalar_points(pts), k, guard=g)
    elif kind == "mobius":
        recs = richmaps.enumerate_rich_mobius1(_scalar_points(pts), k, guard=g)
    elif kind == "rational":
        census = richmaps.rational_census(_scalar_points(pts), k, args.r, guard=g)
        return {"count": len(census.records), "maps": _records(census.records),
                "non_injective": _records(census.non_injective)}
    elif kind == "isometries":
        recs = richmaps.count_rich_isometries2(pts, k, guard=g)
    elif kind == "rich-lines":
        sizes = richmaps.rich_line_sizes(pts, guard=g)
        out = {"line_sizes": sizes, "largest_collinear": max(sizes, default=min(len(pts), 1))}
        if k is not None:
            out["count"] = sum(1 for s in sizes if s >= k)
        return out
    else:
        raise UsageError(f"unknown count {kind}")
    out = {"count": len(recs), "maps": _records(recs)}
    if args.budget is not None:
        out["proper_count"] = len(richmaps.proper_census(recs, args.budget))
    return out


# ----------------------------------------------------------------------- arr


def _cell(c):
    return {"index": c.index, "signs": list(c.signs), "representative": c.representative}


def cmd_arr(args, inp):
    lines = inp.lines()
    arr = arrangement.build_arrangement(lines)
    kind = args.action
    if kind == "build":
        return {"lines": len(lines), "simple": arrangement.is_simple(lines), "cells": len(arr),
                "cell_list": [_cell(c) for c in arr.cells]}
    _need(args, "rho")
    if kind == "stats":
        prof = arrangement.ball_profile(arr, args.rho)
        return {"lines": len(lines), "rho": args.rho, **prof}
    if kind == "emo":
        rep = arrangement.verify_emo(arr, args.rho)
        return {"rho": rep.rho, "bound": rep.bound, "min_ball": rep.min_ball, "passed": rep.passed}
    if kind == "filter":
        cells = ([arrangement.locate(arr, p) for p in inp.points()] if args.input
                 else list(arr.cells))
        kept, bound = arrangement.filter_low_ball_cells(arr, cells, args.rho)
        return {"rho": args.rho, "input_cells": len(cells), "kept": [c.index for c in kept],
                "achieved_bound": bound}
    raise UsageError(f"unknown arr action {kind}")


# ----------------------------------------------------------------------- cut


def _check(chk):
    return {"valid": chk.valid, "constant": chk.constant, "constant_float": chk.constant_float,
            "on_hyperplane": chk.on_hyperplane, "collisions": chk.collisions, "dim": chk.dim}


def cmd_cut(args, inp):
    kind = args.action
    if kind == "verify":
        pts = inp.points()
        return _check(cuttings.verify_cutting(pts, inp.lines()))
    if kind == "greedy":
        _need(args, "budget")
        pts = inp.points()
        try:
            cut = cuttings.greedy_cutting(pts, args.budget)
        except BudgetExceeded as exc:
            return {"found": False, "unseparated": exc.unseparated,
                    "partial": dump_lines(exc.partial.lines)["lines"] if exc.partial else []}
        return {"found": True, "lines": dump_lines(cut.lines)["lines"], **_check(cut.check())}
    if kind == "grid":
        _need(args, "rows", "cols")
        cut = cuttings.grid_cutting(args.rows, args.cols)
        return {**dump_lines(cut.lines), **dump_points(cut.points), **_check(cut.check())}
    raise UsageError(f"unknown cut action {kind}")


# --------------------------------------------------------------------- lemma


def cmd_lemma(args, inp):
    kind = args.action
    if kind == "folklore":
        delta = inp.triples()
        pruned = lemmalab.prune_triple_system(delta)
        return {"input_triples": len(delta), "thresholds": lemmalab.folklore_thresholds(delta),
                "surviving": len(pruned), **dump_triples(pruned)}
    if kind == "triangles":
        _need(args, "rho")
        pts = inp.points()
        arr = arrangement.build_arrangement(inp.lines())
        tris = lemmalab.select_small_triangles(pts, arr, args.rho)
        return {"points": len(pts), "rho": args.rho, "count": len(tris), "triangles": tris}
    if kind == "avg-force":
        _need(args, "rho", "c", "C")
        P1 = inp.points()
        P2 = inp.points("input2") if args.input2 else P1
        maps = inp.maps()
        H1 = inp.lines()
        H2 = inp.lines("lines2") if args.lines2 else H1
        rep = lemmalab.average_forcing(P1, P2, maps, H1, H2, args.rho, args.c, args.C)
        return {"passed": rep.passed, "N": rep.N, "c": rep.c, "C": rep.C, "rho": rep.rho,
                "c_star": rep.c_star, "S": len(maps), "S_star": len(rep.S_star),
                "P1_star": len(rep.P1_star), "P2_star": len(rep.P2_star),
                "steps": rep.steps, "ball_bound_1": rep.ball_bound_1,
                "ball_bound_2": rep.ball_bound_2, "max_ball": rep.max_ball,
                "C_star_emp": rep.C_star_emp, "conclusions": rep.conclusions}
    raise UsageError(f"unknown lemma action {kind}")


# ----------------------------------------------------------------------- exp


TABLE_FIELDS = ("family", "N", "c", "k", "proper", "lines", "constant_sq", "status", "census", "lam")


def cmd_exp(args, inp):
    _need(args, "c")
    rows = lemmalab.main_theorem_experiment(args.family, args.sizes, args.c, args.C or 2,
                                            guard=args.guard)
    return {"table": rows}


# -------------------------------------------------------------------- parser


def _common(p):
    p.add_argument("-i", "--input", help="input file (point set or triple system)")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    p.add_argument("--k", type=int, help="richness threshold")
    p.add_argument("--rho", type=int, help="neighbourhood radius")
    p.add_argument("--c", type=_rational, help="richness fraction")
    p.add_argument("--budget", type=int, help="cutting size budget")
    p.add_argument("--guard", type=int, help="maximum input size")
    p.add_argument("--threads", type=int, default=1, help="worker cap (work is sequential)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--allow-duplicates", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="richgeom", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    commands = {
        "gen": ["shift", "noncollinear", "grid-affine", "subspace", "sidon"],
        "count": ["translations", "affine1", "affine2", "mobius", "rational", "isometries",
                  "rich-lines"],
        "arr": ["build", "stats", "emo", "filter"],
        "cut": ["verify", "greedy", "grid"],
        "lemma": ["folklore", "triangles", "avg-force"],
        "exp": ["main-theorem"],
    }
    for group, actions in commands.items():
        g = groups.add_parser(group)
        sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
        for action in actions:
            p = sub.add_parser(action)
            _common(p)
            if group == "gen":
                p.add_argument("--n", type=int)
                p.add_argument("--D", type=int)
                p.add_argument("--r", type=int)
                p.add_argument("--t", type=int)
                p.add_argument("--side", type=int)
                p.add_argument("--multiplicative", action="store_true")
            if group == "count":
                p.add_argument("--input2", help="target point set (affine2)")
                p.add_argument("--r", type=int, default=1, help="degree bound (rational)")
            if group in ("arr", "cut", "lemma"):
                p.add_argument("--lines", help="line file")
            if group == "cut":
                p.add_argument("--rows", type=int)
                p.add_argument("--cols", type=int)
            if group == "lemma":
                p.add_argument("--input2", help="second point set")
                p.add_argument("--lines2", help="cutting of the second point set")
                p.add_argument("--maps", help="map file")
                p.add_argument("--C", type=_rational)
            if group == "exp":
                p.add_argument("--family", default="grid",
                               choices=("grid", "shift", "noncollinear", "collinear"))
                p.add_argument("--sizes", type=_int_list, default=[9, 16])
                p.add_argument("--C", type=_rational)
    return parser


HANDLERS = {"gen": cmd_gen, "count": cmd_count, "arr": cmd_arr, "cut": cmd_cut,
            "lemma": cmd_lemma, "exp": cmd_exp}


def _as_csv(result) -> str:
    rows = result.get("table") if isinstance(result, dict) else None
    if rows is None:
        raise UsageError("--format csv is only available for tabular results")
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else list(TABLE_FIELDS),
                       lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: ("" if v is None else v) for k, v in to_jsonable(row).items()})
    return buf.getvalue()


def run(argv):
    """Parse and execute; returns (parsed args, report dict or CSV text)."""
    args = build_parser().parse_args(argv)
    inp = _Inputs(args)
    t0 = time.perf_counter()
    result = HANDLERS[args.group](args, inp)
    wall = time.perf_counter() - t0
    if args.format == "csv":
        return args, _as_csv(result)
    return args, {
        "command": list(argv),
        "inputs": dict(sorted(inp.digests.items())),
        "result": to_jsonable(result),
        "wall_time": round(wall, 6),
    }


def payload_bytes(report) -> bytes:
    """Deterministic bytes of a report's payload (everything but the wall time)."""
    body = {k: v for k, v in report.items() if k != "wall_time"}
    return json.dumps(body, sort_keys=True).encode()


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args, out = run(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GuardExceeded, HypothesisViolated) as exc:
        print(f"guard error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (RichGeomError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text = out if isinstance(out, str) else json.dumps(out, indent=1, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
