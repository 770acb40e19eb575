"""Command-line driver.

Verbs: analyze, table1, caterpillar, conjectures, sort, enumerate-trees.
Exit status: 0 success, 1 validation error, 2 infeasible scale.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import Any, Sequence

from . import bounds, experiments
from .cayley import parse_word
from .errors import CayleyDiamError, InfeasibleScale
from .perm import parse_permutation
from .tree import TranspositionTree, canonical_form, enumerate_trees, format_tree, named_tree, parse_tree, tree_diameter

EXIT_OK, EXIT_INVALID, EXIT_INFEASIBLE = 0, 1, 2


def resolve_tree(spec: str) -> TranspositionTree:
    """Accept a fixture name (``t2``, ``caterpillar-7``) or an edge list."""
    if re.fullmatch(r"[\d\s,;=n-]+", spec):
        return parse_tree(spec)
    return named_tree(spec)


def _scalar(v: Any) -> Any:
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return "" if v is None else v


def _emit(obj: Any, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(obj, out, indent=2, sort_keys=False)
        out.write("\n")
        return
    rows = obj if isinstance(obj, list) else [obj]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _scalar(v) for k, v in r.items()})
        out.write(buf.getvalue())
        return
    for k, r in enumerate(rows):
        if k:
            out.write("\n")
        width = max(len(key) for key in r)
        for key, v in r.items():
            out.write(f"{key.ljust(width)}  {_scalar(v)}\n")


def _check_n(n: int, max_n: int) -> None:
    if n > max_n:
        raise InfeasibleScale(f"n={n} exceeds --max-n {max_n}")


def cmd_analyze(args: argparse.Namespace) -> Any:
    t = resolve_tree(args.tree)
    report = experiments.analyze_tree(t, cache_dir=args.cache_dir, max_n=args.max_n).to_dict()
    run = bounds.algorithm_a(t, args.policy)
    report["algorithm_a"] = {
        "policy": args.policy,
        "pairs": [list(p) for p in run.pairs],
        "step_diameters": list(run.step_diameters),
        "beta": run.beta,
    }
    return report


def cmd_table1(args: argparse.Namespace) -> Any:
    if not 5 <= args.n_min <= args.n_max:
        raise CayleyDiamError(f"need 5 <= n_min <= n_max, got {args.n_min}..{args.n_max}")
    _check_n(args.n_max, args.max_n)
    rows = experiments.table1(args.n_min, args.n_max, cache_dir=args.cache_dir)
    out = [r.to_dict() for r in rows]
    if args.format != "json":
        for r in out:
            r.pop("extremal")
    return out


def cmd_caterpillar(args: argparse.Namespace) -> Any:
    return experiments.caterpillar_report(args.n, cache_dir=args.cache_dir, max_n=args.max_n)


def cmd_conjectures(args: argparse.Namespace) -> Any:
    _check_n(args.n_max, args.max_n)
    res = experiments.conjectures(args.n_min, args.n_max, cache_dir=args.cache_dir)
    if args.format == "json":
        return res
    return res["per_n"]


def cmd_sort(args: argparse.Namespace) -> Any:
    t = resolve_tree(args.tree)
    _check_n(t.n, args.max_n)
    p = parse_permutation(args.permutation, n=t.n)
    replay = parse_word(args.replay) if args.replay else None
    res = experiments.sort_report(t, p, replay=replay, cache_dir=args.cache_dir)
    return res


def cmd_enumerate(args: argparse.Namespace) -> Any:
    out = []
    for t in enumerate_trees(args.n):
        out.append({"n": t.n, "code": canonical_form(t).hex(), "diameter": tree_diameter(t), "tree": format_tree(t)})
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text", "csv"], default="json")
    common.add_argument("--cache-dir", default=None, help="directory for cached BFS distance tables")
    common.add_argument("--max-n", type=int, default=None, help="largest n for exhaustive work")

    parser = argparse.ArgumentParser(prog="cayleydiam", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report for one tree")
    p.add_argument("tree", help="edge list like '1-2,2-3,1-4' or a fixture name")
    p.add_argument("--policy", choices=sorted(bounds.POLICIES), default="lex")
    p.set_defaults(func=cmd_analyze, default_max_n=10)

    p = sub.add_parser("table1", parents=[common], help="sharpness/strictness counts per n")
    p.add_argument("n_min", type=int)
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_table1, default_max_n=9)

    p = sub.add_parser("caterpillar", parents=[common], help="strictness witness family")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_caterpillar, default_max_n=10)

    p = sub.add_parser("conjectures", parents=[common], help="sweep Algorithm A open questions")
    p.add_argument("n_max", type=int)
    p.add_argument("--n-min", type=int, default=5)
    p.set_defaults(func=cmd_conjectures, default_max_n=9)

    p = sub.add_parser("sort", parents=[common], help="AK sorting word versus exact distance")
    p.add_argument("tree")
    p.add_argument("permutation", help="'[3,5,1,4,2]' or '(1,3)(2,5)'")
    p.add_argument("--replay", default=None, help="word to check, e.g. '(1,2),(1,4)'")
    p.set_defaults(func=cmd_sort, default_max_n=10)

    p = sub.add_parser("enumerate-trees", parents=[common], help="non-isomorphic trees on n vertices")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_enumerate, default_max_n=10)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_n is None:
        args.max_n = args.default_max_n
    try:
        result = args.func(args)
    except InfeasibleScale as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (CayleyDiamError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(result, args.format, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
