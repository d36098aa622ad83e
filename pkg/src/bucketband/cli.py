"""``bandwidth`` command line tool.

Exit codes: 0 success, 2 bad input or arguments, 3 exact oracle cap exceeded,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .arrangement import (
    DEFAULT_ORACLE_CAP,
    OracleCapExceeded,
    exact_bandwidth,
)
from .divide import decide_bandwidth_window
from .driver import ALGORITHMS
from .graph import FAMILIES, GraphParseError, format_graph, generate, parse_graph
from .report import build_suite, make_report, run_suite, summarize

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_INVARIANT = 0, 2, 3, 4


class InputError(Exception):
    pass


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE", help="graph file (DIMACS or 1-based edge list), '-' for stdin")
    src.add_argument("--family", choices=FAMILIES, help="generate a graph instead of reading one")
    p.add_argument("--n", type=int, help="size parameter for --family")
    p.add_argument("--b", type=int, help="legs (caterpillar) or distance (path_power)")
    p.add_argument("--p", type=float, help="edge probability for random_connected")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _load(args):
    """Return ``(graph, instance descriptor)``."""
    if args.input is not None:
        try:
            if args.input == "-":
                text = sys.stdin.read()
            else:
                with open(args.input) as fh:
                    text = fh.read()
        except OSError as exc:
            raise InputError(str(exc)) from exc
        return parse_graph(text), {"file": args.input}
    if args.n is None:
        raise InputError("--family needs --n")
    desc = {"family": args.family, "n": args.n}
    if args.b is not None:
        desc["b"] = args.b
    if args.p is not None:
        desc["p"] = args.p
    if args.family == "random_connected":
        desc["seed"] = args.seed
    try:
        g = generate(args.family, args.n, b=args.b, p=args.p, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return g, desc


def _emit(obj, as_json: bool, text: str) -> None:
    print(json.dumps(obj, sort_keys=True) if as_json else text)


def cmd_approx(args) -> int:
    g, desc = _load(args)
    report = make_report(g, desc, args.algo, exact=args.exact, cap=args.cap, timing=args.timing)
    lines = [f"ell* = {report.ell_star}", f"bandwidth in [{report.lower}, {report.upper}]"]
    if report.exact is not None:
        lines.append(f"exact = {report.exact}")
    if report.witness is not None:
        lines.append("buckets: " + " ".join(map(str, report.witness)))
    _emit(report.to_dict(), args.json, "\n".join(lines))
    return EXIT_OK


def cmd_exact(args) -> int:
    g, desc = _load(args)
    width, position = exact_bandwidth(g, args.cap)
    order = sorted(range(g.n), key=lambda v: position[v])
    obj = {"instance": desc, "algo": "exact", "exact": width, "position": list(position)}
    _emit(obj, args.json, f"bandwidth = {width}\norder: " + " ".join(map(str, order)))
    return EXIT_OK


def cmd_decide(args) -> int:
    g, desc = _load(args)
    limit = max(1, -(-g.n // 2))
    if not 1 <= args.ell <= limit:
        raise InputError(f"--ell must lie in 1..{limit} for n={g.n}")
    window = decide_bandwidth_window(g, args.ell, args.style)
    witness = list(window.witness.bucket_of) if window.witness is not None else None
    obj = {"instance": desc, "ell": args.ell, "style": args.style, "verdict": window.verdict,
           "bound": window.bound, "witness": witness}
    text = f"{window.verdict} {window.bound}"
    if witness is not None:
        text += "\nbuckets: " + " ".join(map(str, witness))
    _emit(obj, args.json, text)
    return EXIT_OK


def cmd_gen(args) -> int:
    g, _ = _load(args)
    sys.stdout.write(format_graph(g))
    return EXIT_OK


def cmd_bench(args) -> int:
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGORITHMS:
            raise InputError(f"unknown algorithm {a!r}; choose from {', '.join(ALGORITHMS)}")
    try:
        suite = build_suite(families, args.n_min, args.n_max, args.reps, args.seed, b=args.b, p=args.p)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    reports = run_suite(suite, algos, exact=args.exact, cap=args.cap, timing=args.timing, jobs=args.jobs)
    summary = summarize(reports)
    if args.json:
        print(json.dumps({"seed": args.seed, "rows": [r.to_dict() for r in reports], "summary": summary},
                         sort_keys=True))
        return EXIT_OK
    header = f"{'family':<17}{'n':>4} {'algo':<10}{'count':>6}{'nodes':>12}{'mean ratio':>12}{'max ratio':>11}"
    print(header)
    for row in summary:
        ratio = "-" if row["mean_ratio"] is None else f"{row['mean_ratio']:.3f}"
        worst = "-" if row["max_ratio"] is None else f"{row['max_ratio']:.3f}"
        print(f"{row['family']:<17}{row['n']:>4} {row['algo']:<10}{row['count']:>6}"
              f"{row['mean_nodes']:>12.1f}{ratio:>12}{worst:>11}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bandwidth", description="Bucket-based bandwidth 2-approximation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approx", help="2-approximate the bandwidth")
    _add_graph_args(p)
    p.add_argument("--algo", choices=ALGORITHMS, default="fast")
    p.add_argument("--exact", action="store_true", help="also run the exact oracle")
    p.add_argument("--cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.add_argument("--timing", action="store_true", help="record wall time (makes output non-reproducible)")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("exact", help="exact bandwidth of a small graph")
    _add_graph_args(p)
    p.add_argument("--cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("decide", help="bandwidth at most 2*ell-1 or at least ell+1")
    _add_graph_args(p)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--style", choices=("balanced", "left_packed"), default="balanced")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("gen", help="write a generated graph in DIMACS format")
    _add_graph_args(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run a benchmark suite")
    p.add_argument("--families", default="random_connected", help="comma-separated family names")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=9)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--algos", default="fast,backtrack")
    p.add_argument("--b", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.add_argument("--timing", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphParseError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OracleCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except AssertionError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
