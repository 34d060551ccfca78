"""Command-line front end.

Exit codes: 0 success, 1 suite failure, 2 resource cap, 64 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .enumeration import count_star_by_size, ratio_root_leaf
from .errors import EkrError, PreconditionError, ResourceLimitError
from .constructions import root_center_search
from .formulas import fraction_to_str, limit_ratio
from .graph import (Graph, build_claw, build_depth_two_claw, build_disjoint_complete, build_elongated_claw,
                    build_ka_claw, build_path, build_superclaw, join_with_new_root, leaves)
from .search import ekr_verdict
from .suites import DEFAULT_SEED, SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_RESOURCE, EXIT_USAGE = 0, 1, 2, 64

FAMILIES = ("path", "claw", "elongated", "depth2", "kaclaw", "superclaw", "disjointcomplete", "join")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--family {args.family} needs " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _read_graph(path: str) -> Graph:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return Graph.from_json(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from exc


def _limbs(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad limb list {text!r}") from None


def build_family(args) -> Graph:
    fam = args.family
    if fam == "path":
        _need(args, "n")
        return build_path(args.n)
    if fam == "claw":
        _need(args, "n")
        return build_claw(args.n)
    if fam == "elongated":
        _need(args, "limbs")
        return build_elongated_claw(_limbs(args.limbs))
    if fam == "depth2":
        _need(args, "n")
        return build_depth_two_claw(args.n)
    if fam == "kaclaw":
        _need(args, "k", "a")
        return build_ka_claw(args.k, args.a)
    if fam == "superclaw":
        _need(args, "n", "k", "a")
        return build_superclaw(args.n, args.k, args.a)
    if fam == "disjointcomplete":
        _need(args, "n", "t")
        return build_disjoint_complete(args.n, args.t)
    if not args.graphs:
        raise UsageError("--family join needs --graphs FILE [FILE ...]")
    return join_with_new_root([_read_graph(p) for p in args.graphs])


def _emit_rows(header: list[str], rows: list[list], fmt: str, out) -> None:
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        json.dump([dict(zip(header, row)) for row in rows], out, indent=2)
        out.write("\n")


def cmd_construct(args, out) -> int:
    json.dump(build_family(args).to_dict(), out)
    out.write("\n")
    return EXIT_OK


def cmd_stars(args, out) -> int:
    G = _read_graph(args.graph)
    if args.all_r == (args.r is not None):
        raise UsageError("give exactly one of r or --all-r")
    leaf_mask = leaves(G)
    per_vertex = [count_star_by_size(G, v) for v in range(G.num_vertices)]
    rs = range(1, G.num_vertices + 1) if args.all_r else [args.r]
    rows = []
    for r in rs:
        if r < 1:
            raise UsageError("r must be positive")
        for v, counts in enumerate(per_vertex):
            size = counts[r] if r < len(counts) else 0
            rows.append([v, r, str(size), bool(leaf_mask >> v & 1), G.degree(v)])
    _emit_rows(["vertex", "r", "star_size", "is_leaf", "degree"], rows, args.format, out)
    return EXIT_OK


def cmd_ekr(args, out) -> int:
    G = _read_graph(args.graph)
    for name in ("enum_cap", "budget"):
        value = getattr(args, name)
        if value is not None and value < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    verdict = ekr_verdict(G, args.r, cap=args.enum_cap, budget=args.budget,
                          max_family=args.max_family, workers=args.workers)
    json.dump(verdict.to_dict(), out, indent=2)
    out.write("\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    params = {
        "n_max": args.n_max, "r_max": args.r_max, "vertices_max": args.vertices_max,
        "exact_max": args.exact_max, "n": args.n, "a": args.a, "k_max": args.k_max,
        "trees": args.trees, "samples": args.samples, "ground_max": args.ground_max,
        "a_max": args.a_max, "seed": args.seed, "workers": args.workers,
    }
    if args.t_values:
        params["t_values"] = tuple(_limbs(args.t_values))
    report = run_suite(args.suite, **params)
    if args.format == "csv":
        rows = [[c.name, c.to_dict()["expected"], c.to_dict()["actual"], c.passed] for c in report.checks]
        _emit_rows(["name", "expected", "actual", "pass"], rows, "csv", out)
    else:
        json.dump(report.to_dict(), out, indent=2)
        out.write("\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_ratio(args, out) -> int:
    q = ratio_root_leaf(args.n, args.k, args.a)
    lim = limit_ratio(args.a)
    row = [args.n, args.k, args.a, fraction_to_str(q), fraction_to_str(lim)]
    header = ["n", "k", "a", "ratio", "limit"]
    if args.format == "csv":
        _emit_rows(header, [row], "csv", out)
    else:
        json.dump(dict(zip(header, row)), out, indent=2)
        out.write("\n")
    return EXIT_OK


def cmd_search_root(args, out) -> int:
    res = root_center_search(args.n, args.a, args.k_max, args.r_max, workers=args.workers)
    if args.format == "csv":
        _emit_rows(["k", "r", "vertex", "star_size"],
                   [[k, r, v, str(s)] for k, r, v, s in res.table], "csv", out)
    else:
        json.dump({"n": res.n, "a": res.a, "found": None if res.found is None else list(res.found),
                   "table": [[k, r, v, str(s)] for k, r, v, s in res.table]}, out)
        out.write("\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ekrtrees", description="Exact EKR checks for independent sets in trees.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="print a named graph as JSON")
    c.add_argument("--family", required=True, choices=FAMILIES)
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--a", type=int)
    c.add_argument("--t", type=int)
    c.add_argument("--limbs", help="comma-separated limb lengths")
    c.add_argument("--graphs", nargs="+", help="rooted graph JSON files to join")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("stars", help="per-vertex star sizes")
    s.add_argument("graph", help="graph JSON file, or - for stdin")
    s.add_argument("r", type=int, nargs="?")
    s.add_argument("--all-r", action="store_true")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=cmd_stars)

    e = sub.add_parser("ekr", help="exact r-EKR verdict")
    e.add_argument("graph")
    e.add_argument("r", type=int)
    e.add_argument("--enum-cap", type=int)
    e.add_argument("--budget", type=int, help="search node budget")
    e.add_argument("--max-family", type=int)
    e.add_argument("--workers", type=int, default=1)
    e.set_defaults(func=cmd_ekr)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    for flag in ("--n-max", "--r-max", "--vertices-max", "--exact-max", "--n", "--a", "--k-max",
                 "--trees", "--samples", "--ground-max", "--a-max"):
        v.add_argument(flag, type=int)
    v.add_argument("--t-values", help="comma-separated clique sizes")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("ratio", help="exact root/leaf star ratio on T^{n,k,a}")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--a", type=int, required=True)
    r.add_argument("--format", choices=("json", "csv"), default="json")
    r.set_defaults(func=cmd_ratio)

    sr = sub.add_parser("search-root", help="sweep T^{n,k,a} for root-centred maximum stars")
    sr.add_argument("--n", type=int, required=True)
    sr.add_argument("--a", type=int, required=True)
    sr.add_argument("--k-max", type=int, required=True)
    sr.add_argument("--r-max", type=int, required=True)
    sr.add_argument("--workers", type=int, default=1)
    sr.add_argument("--format", choices=("json", "csv"), default="json")
    sr.set_defaults(func=cmd_search_root)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except ResourceLimitError as exc:
        json.dump({"error": exc.code, "message": str(exc)}, out)
        out.write("\n")
        return EXIT_RESOURCE
    except (UsageError, PreconditionError, EkrError) as exc:
        print(f"ekrtrees: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    raise SystemExit(main())
