"""Command-line interface.

Exit codes: 0 success, 1 usage or domain error, 2 partial (budget) result,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import bounds, codec, graph, lee, solver
from .errors import BudgetExceeded, CapacityError, NNECapError, ParameterError

EXIT_OK, EXIT_USAGE, EXIT_PARTIAL, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"3..5"`` (inclusive) or ``"3,5,8"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot parse range {text!r}") from None


def _threads(args) -> int:
    env = os.environ.get("ZEC_THREADS")
    if env:
        return max(1, int(env))
    if args.threads:
        return max(1, args.threads)
    return os.cpu_count() or 1


def _write(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_bounds(args) -> int:
    ds, ns = parse_range(args.d), parse_range(args.n)
    if not ds or not ns:
        raise UsageError("empty parameter range")
    if min(ds) < 1 or min(ns) < 2:
        raise UsageError("bounds needs d >= 1 and n >= 2")
    powers = parse_range(args.powers) if args.powers else []
    pairs = [(d, n) for d in ds for n in ns]

    def one(pair):
        return bounds.capacity_bracket(
            *pair, exact_alpha=args.exact_alpha, exact_lp=args.exact_lp, powers=powers,
            node_budget=args.node_budget,
        )

    with ThreadPoolExecutor(max_workers=_threads(args)) as pool:
        reports = list(pool.map(one, pairs))
    for r in reports:
        if not r.chain_holds():
            print(f"invariant violated for d={r.d}, n={r.n}: {r.chain_violations()}", file=sys.stderr)
            return EXIT_INVARIANT
    if args.format == "json":
        text = json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(bounds.BoundReport.CSV_COLUMNS)
        for r in reports:
            w.writerow(r.csv_row())
        text = buf.getvalue()
    _write(args, text)
    return EXIT_PARTIAL if any(r.partial for r in reports) else EXIT_OK


def cmd_lee(args) -> int:
    if args.d < 1 or args.q < 1:
        raise UsageError("lee needs d >= 1 and q >= 1")
    m = 2 * args.d + 1
    if args.q % m:
        if lee.exists_pl(args.d, args.q):
            print(f"PL({args.d},1,{args.q}) exists, but construction is only provided "
                  f"when {m} divides q", file=sys.stderr)
        else:
            print(f"no PL({args.d},1,{args.q}): {lee.radical(m)} does not divide {args.q}",
                  file=sys.stderr)
        return EXIT_USAGE
    code = lee.construct_pl(args.d, args.q)
    obj = json.loads(code.to_json())
    obj["size"] = len(code)
    if args.verify:
        obj["verified"] = lee.verify_perfect(code)
        if not obj["verified"]:
            _write(args, json.dumps(obj) + "\n")
            return EXIT_INVARIANT
    _write(args, json.dumps(obj) + "\n")
    return EXIT_OK


def cmd_demo(args) -> int:
    if args.d < 1 or args.n < 2 or args.k < 1 or args.trials < 0:
        raise UsageError("demo needs d >= 1, n >= 2, k >= 1, trials >= 0")
    if not 0.0 <= args.error_rate <= 1.0:
        raise UsageError("error rate must be in [0, 1]")
    window = lee.lower_bound_set(args.d, args.n)
    code = codec.ZeroErrorCode.from_window(window, args.k)
    summary = codec.run_trials(code, args.trials, args.error_rate, args.seed,
                               keep_records=bool(args.trace))
    if args.trace:
        with open(args.trace, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(codec.dump_jsonl(summary.records))
    report = bounds.capacity_bracket(args.d, args.n, exact_alpha=False, exact_lp=False)
    out = {
        "d": args.d, "n": args.n, "k": args.k, "seed": args.seed,
        "trials": summary.trials, "failures": summary.failures,
        "base_set": [list(s.coords) for s in code.base_set],
        "rate_bits_per_use": round(summary.rate, 6),
        "capacity_lo_bits": round(report.capacity_lo, 6),
        "capacity_hi_bits": round(report.capacity_hi, 6),
    }
    _write(args, json.dumps(out) + "\n")
    return EXIT_INVARIANT if summary.failures else EXIT_OK


def cmd_export(args) -> int:
    if args.d < 1 or args.n < 1 or args.power < 1:
        raise UsageError("export needs d >= 1, n >= 1, power >= 1")
    g = graph.nne_graph(args.d, args.n, vertex_cap=args.vertex_cap)
    g = graph.graph_power(g, args.power, vertex_cap=args.vertex_cap)
    if args.format == "json":
        text = json.dumps(graph.export_json(g)) + "\n"
    else:
        text = graph.export_dimacs(g)
    _write(args, text)
    return EXIT_OK


def _read_graph(path: str):
    with open(path, encoding="utf-8") as fh:
        return graph.read_dimacs(fh.read())


def cmd_mis(args) -> int:
    g = _read_graph(args.file)
    try:
        res = solver.max_independent_set(g, args.node_budget)
        out = {"alpha": res.size, "witness": [v + 1 for v in res.witness], "nodes": res.nodes,
               "complete": True}
        code = EXIT_OK
    except BudgetExceeded as exc:
        out = {"alpha_lower": exc.best_size, "witness": [v + 1 for v in exc.witness],
               "nodes": exc.nodes, "complete": False}
        code = EXIT_PARTIAL
    _write(args, json.dumps(out) + "\n")
    return code


def cmd_lp(args) -> int:
    g = _read_graph(args.file)
    sol = solver.fractional_clique_cover_number(g, args.clique_budget)
    out = {
        "value": {"num": sol.value.numerator, "den": sol.value.denominator},
        "assignment": [
            {"clique": [v + 1 for v in c], "num": w.numerator, "den": w.denominator}
            for c, w in sorted(sol.assignment.items())
        ],
        "pivots": sol.pivots,
    }
    _write(args, json.dumps(out) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nnecap", description="Zero-error capacity bounds for NNE channels")
    p.add_argument("--threads", type=int, default=0, help="worker threads (env ZEC_THREADS wins)")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="bound table over (d, n)")
    b.add_argument("--d", required=True, help="dimension(s): 2, 1..3 or 1,3")
    b.add_argument("--n", required=True, help="alphabet size(s), n >= 2")
    b.add_argument("--exact-alpha", dest="exact_alpha", action="store_true",
                   help="compute alpha(G) by branch and bound")
    b.add_argument("--exact-lp", dest="exact_lp", action="store_true",
                   help="solve the clique-cover LP exactly")
    b.add_argument("--powers", default="", help="extra strong-power exponents, e.g. 2")
    b.add_argument("--node-budget", type=int, default=solver.DEFAULT_NODE_BUDGET)
    b.add_argument("--format", choices=("csv", "json"), default="csv")
    b.add_argument("--output")
    b.set_defaults(func=cmd_bounds)

    le = sub.add_parser("lee", help="construct a perfect Lee code PL(d,1,q)")
    le.add_argument("--d", type=int, required=True)
    le.add_argument("--q", type=int, required=True)
    le.add_argument("--verify", action="store_true")
    le.add_argument("--output")
    le.set_defaults(func=cmd_lee)

    dm = sub.add_parser("demo", help="zero-error transmission demo")
    dm.add_argument("--d", type=int, default=2)
    dm.add_argument("--n", type=int, default=3)
    dm.add_argument("--k", type=int, default=1)
    dm.add_argument("--trials", type=int, default=1000)
    dm.add_argument("--error-rate", type=float, default=0.5)
    dm.add_argument("--seed", type=int, default=0)
    dm.add_argument("--trace", help="write per-trial JSON lines here")
    dm.add_argument("--output")
    dm.set_defaults(func=cmd_demo)

    ex = sub.add_parser("export", help="export a confusion graph or its strong power")
    ex.add_argument("--d", type=int, required=True)
    ex.add_argument("--n", type=int, required=True)
    ex.add_argument("--power", type=int, default=1)
    ex.add_argument("--format", choices=("dimacs", "json"), default="dimacs")
    ex.add_argument("--vertex-cap", type=int, default=graph.DEFAULT_VERTEX_CAP)
    ex.add_argument("--output")
    ex.set_defaults(func=cmd_export)

    mi = sub.add_parser("mis", help="maximum independent set of a DIMACS graph")
    mi.add_argument("file")
    mi.add_argument("--node-budget", type=int, default=solver.DEFAULT_NODE_BUDGET)
    mi.add_argument("--output")
    mi.set_defaults(func=cmd_mis)

    lp = sub.add_parser("lp", help="exact fractional clique cover of a DIMACS graph")
    lp.add_argument("file")
    lp.add_argument("--clique-budget", type=int, default=solver.DEFAULT_CLIQUE_BUDGET)
    lp.add_argument("--output")
    lp.set_defaults(func=cmd_lp)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except (ParameterError, CapacityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NNECapError as exc:  # pragma: no cover
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ArithmeticError as exc:  # pragma: no cover
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
