"""Command-line front end.

Exit codes: 0 ok, 1 usage, 2 check mismatch, 3 input error, 4 oracle cap.
"""

from __future__ import annotations

import argparse
import sys

from .dbtd import transform_to_dbjt
from .errors import CapExceededError, EnumTWError, InputError, ParseError
from .generators import cycle_graph, path_graph, random_partial_ktree
from .graph import parse_graph
from .hypergraph import parse_hypergraph
from .oracle import (brute_minimal_dominating_sets, brute_minimal_edge_covers,
                     brute_minimal_transversals)
from .pipeline import domination_run, edge_cover_run, hitting_set_run
from .treedecomp import make_nice, min_fill_td, parse_td, validate_td, write_td

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_INPUT = 3
EXIT_CAP = 4


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _add_common(sub):
    sub.add_argument("--input", "-i", required=True, help="input file ('-' for stdin)")
    sub.add_argument("--td", help="tree decomposition (.td) of the input")
    sub.add_argument("--limit", type=int, default=None, metavar="K",
                     help="stop after K solutions")
    sub.add_argument("--count", action="store_true", help="print only the total")
    sub.add_argument("--stats", action="store_true", help="append a delay report")
    sub.add_argument("--check", action="store_true",
                     help="compare against the brute-force oracle")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--dedupe", action="store_true",
                     help="drop duplicate hyperedges before solving")
    sub.add_argument("--format", choices=("names", "ids"), default="names")


def _emit_solutions(run, names_of, args, oracle_solutions=None) -> int:
    count = 0
    seen = set() if args.check else None
    emitted = []
    for sol in run.solutions():
        count += 1
        if seen is not None:
            if sol in seen:
                print(f"duplicate solution: {sorted(sol)}", file=sys.stderr)
                return EXIT_MISMATCH
            seen.add(sol)
            emitted.append(sol)
        if not args.count:
            print(" ".join(names_of(sol)))
        if args.limit is not None and count >= args.limit:
            break
    if args.count:
        print(count)
    if args.stats and run.stats is not None:
        sys.stdout.write(run.stats.report())
    if args.check and oracle_solutions is not None and args.limit is None:
        if set(emitted if seen is not None else []) != oracle_solutions:
            print("mismatch against the brute-force oracle", file=sys.stderr)
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_hitting_sets(args) -> int:
    h = parse_hypergraph(_read(args.input))
    if args.dedupe:
        h = h.dedupe()
    td = parse_td(_read(args.td)) if args.td else None
    run = hitting_set_run(h, td=td, seed=args.seed)

    def names_of(sol):
        if args.format == "ids":
            return [str(v + 1) for v in sorted(sol)]
        return [h.vertex_name(v) for v in sorted(sol)]

    oracle = brute_minimal_transversals(h) if args.check else None
    return _emit_solutions(run, names_of, args, oracle)


def cmd_edge_covers(args) -> int:
    h = parse_hypergraph(_read(args.input))
    if args.dedupe:
        h = h.dedupe()
    td = parse_td(_read(args.td)) if args.td else None
    run = edge_cover_run(h, td=td, seed=args.seed)

    def names_of(sol):
        if args.format == "ids":
            return [str(i + 1) for i in sorted(sol)]
        return [h.edge_name(i) for i in sorted(sol)]

    oracle = brute_minimal_edge_covers(h) if args.check else None
    return _emit_solutions(run, names_of, args, oracle)


def cmd_dominating_sets(args) -> int:
    g = parse_graph(_read(args.input))
    td = parse_td(_read(args.td)) if args.td else None
    run = domination_run(g, td=td, seed=args.seed)

    def names_of(sol):
        if args.format == "ids":
            return [str(v + 1) for v in sorted(sol)]
        return [g.vertex_name(v) for v in sorted(sol)]

    oracle = brute_minimal_dominating_sets(g) if args.check else None
    return _emit_solutions(run, names_of, args, oracle)


def cmd_td(args) -> int:
    g = parse_graph(_read(args.input))
    if args.action == "build":
        td = min_fill_td(g, args.seed)
        sys.stdout.write(write_td(td))
        return EXIT_OK
    if args.td is None:
        print("this action needs --td", file=sys.stderr)
        return EXIT_USAGE
    td = parse_td(_read(args.td))
    if args.action == "validate":
        problems = validate_td(g, td)
        if problems:
            for p in problems:
                print(p)
            return EXIT_INPUT
        print(f"valid, width {td.width}")
        return EXIT_OK
    nice = make_nice(td, g)
    if args.action == "niceify":
        sys.stdout.write(write_td(nice.as_td()))
        return EXIT_OK
    if args.action == "dbtd":
        db = transform_to_dbjt(nice, g)
        sys.stdout.write(db.dump())
        return EXIT_OK
    return EXIT_USAGE


def cmd_bench(args) -> int:
    print("n,m,w,effw,prep_ms,trie_bytes,solutions,max_gap,mean_gap")
    sizes = [int(s) for s in args.sizes.split(",")]
    for idx, n in enumerate(sizes):
        if args.family == "path":
            g = path_graph(n)
        elif args.family == "cycle":
            g = cycle_graph(n)
        else:
            g = random_partial_ktree(n, args.k, args.seed + idx)
        run = domination_run(g, seed=args.seed)
        count = 0
        for _ in run.solutions():
            count += 1
            if args.limit is not None and count >= args.limit:
                break
        st = run.stats
        prep = run.prep
        print(f"{g.n},{g.m},{prep.input_width},{prep.eff_width},"
              f"{prep.prep_seconds * 1000:.2f},{prep.trie_bytes()},"
              f"{count},{st.max_gap},{st.mean_gap:.1f}")
        if not prep.memory_budget_ok():
            print("memory budget exceeded", file=sys.stderr)
            return EXIT_INPUT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="enumtw",
        description="Enumerate minimal hitting sets, edge covers, and "
                    "dominating sets of bounded-treewidth inputs.")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn in (("hitting-sets", cmd_hitting_sets),
                     ("edge-covers", cmd_edge_covers),
                     ("dominating-sets", cmd_dominating_sets)):
        p = sub.add_parser(name)
        _add_common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("td", help="tree decomposition utilities")
    p.add_argument("action", choices=("validate", "build", "niceify", "dbtd"))
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--td")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_td)

    p = sub.add_parser("bench", help="delay/memory benchmark")
    p.add_argument("--family", choices=("path", "cycle", "ktree"), default="path")
    p.add_argument("--sizes", default="16,32,64")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceededError as exc:
        print(f"oracle cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, EnumTWError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
