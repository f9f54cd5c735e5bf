"""Command-line front end.

Subcommands: ``solve`` (one of three pipeline modes), ``preprocess``
(emit the reduced instance plus rule reports), ``decompose`` (emit the
divide-and-conquer counters), ``oracle`` (brute force, small instances
only) and ``bench`` (CSV harness over a corpus directory).

Exit codes: 0 success, 2 parse error, 3 infeasible root set, 4 size
limit refused.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
import time
from pathlib import Path

from . import io as instio
from .decompose import solve_mwcs
from .errors import InfeasibleError, MwcsError, ParseError, SizeLimitError
from .graph import ReductionTrace
from .oracle import brute_force
from .pipeline import MODES, solve_graph
from .preprocess import preprocess
from .solver import emit_ilp

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_SIZE = 4


def _detect_format(path: str, override: str | None) -> str:
    if override:
        return override
    return "json" if path.endswith(".json") else "stp"


def _load(path: str, fmt: str | None) -> tuple[instio.Instance, str]:
    fmt = _detect_format(path, fmt)
    text = Path(path).read_text()
    return instio.load_instance(text, fmt), fmt


def _parse_roots(inst: instio.Instance, spec: str | None) -> set[int]:
    roots = set(inst.roots)
    if spec:
        for token in spec.split(","):
            token = token.strip()
            if token:
                roots.add(inst.node_named(token))
    return roots


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_solve(args) -> int:
    inst, _ = _load(args.instance, args.format)
    roots = _parse_roots(inst, args.rooted)
    if args.emit_ilp:
        model_text = emit_ilp(inst.graph, roots or None, strengthen=args.strengthen)
        Path(args.emit_ilp).write_text(model_text)
    result = solve_graph(inst.graph, args.mode, roots or None,
                         allow_empty=args.allow_empty, time_limit=args.time_limit)
    sys.stdout.write(instio.dump_solution(result.solution, inst.names))
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst, _ = _load(args.instance, args.format)
    roots = _parse_roots(inst, args.rooted)
    sol = brute_force(inst.graph, roots or None, allow_empty=args.allow_empty)
    sys.stdout.write(instio.dump_solution(sol, inst.names))
    return EXIT_OK


def cmd_preprocess(args) -> int:
    inst, fmt = _load(args.instance, args.format)
    out_fmt = args.out_format or fmt
    g = inst.graph.copy()
    trace = ReductionTrace.identity(g)
    reports = preprocess(g, trace, protected=frozenset(_parse_roots(inst, args.rooted)))
    reduced = instio.Instance(
        graph=g,
        names={v: i + 1 for i, v in enumerate(g.sorted_nodes())},
        roots=set(r for r in inst.roots if r in g.weight),
    )
    _write_output(instio.dump_instance(reduced, out_fmt), args.out)
    report_text = json.dumps([r.as_dict() for r in reports], sort_keys=True) + "\n"
    if args.report:
        _write_output(report_text, args.report)
    else:
        sys.stderr.write(report_text)
    return EXIT_OK


def cmd_decompose(args) -> int:
    inst, _ = _load(args.instance, args.format)
    g = inst.graph.copy()
    trace = ReductionTrace.identity(g)
    sol, report = solve_mwcs(g, trace, allow_empty=args.allow_empty,
                             deadline=None if args.time_limit is None
                             else time.monotonic() + args.time_limit)
    payload = report.as_dict()
    payload["objective"] = sol.objective
    payload["status"] = sol.status
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    return EXIT_OK


BENCH_COLUMNS = [
    "instance", "nodes_before", "edges_before",
    "no_pre_lower", "no_pre_upper", "no_pre_time",
    "pre_lower", "pre_upper", "pre_time",
    "pre_nodes", "pre_edges", "pre_components",
    "dc_lower", "dc_upper", "dc_time",
    "dc_blocks", "dc_tricomp_pos", "dc_tricomp_neg",
    "node_fraction", "edge_fraction", "wall_time",
]


def bench_one(path: str, modes, time_limit) -> dict:
    """Stats and per-mode bounds for one instance file."""
    inst, _ = _load(path, None)
    g = inst.graph
    row: dict = {col: "" for col in BENCH_COLUMNS}
    row["instance"] = Path(path).name
    row["nodes_before"] = g.node_count()
    row["edges_before"] = g.edge_count()
    started = time.perf_counter()

    reduced = g.copy()
    trace = ReductionTrace.identity(reduced)
    preprocess(reduced, trace)
    row["pre_nodes"] = reduced.node_count()
    row["pre_edges"] = reduced.edge_count()
    row["pre_components"] = len(reduced.components())
    row["node_fraction"] = (reduced.node_count() / g.node_count()) if g.node_count() else 0.0
    row["edge_fraction"] = (reduced.edge_count() / g.edge_count()) if g.edge_count() else 0.0

    prefix = {"no-pre": "no_pre", "pre": "pre", "dc": "dc"}
    for mode in modes:
        t0 = time.perf_counter()
        result = solve_graph(g, mode, inst.roots or None, time_limit=time_limit)
        elapsed = time.perf_counter() - t0
        p = prefix[mode]
        row[f"{p}_lower"] = result.solution.lower
        row[f"{p}_upper"] = result.solution.upper
        row[f"{p}_time"] = round(elapsed, 4)
        if mode == "dc" and result.report is not None:
            row["dc_blocks"] = result.report.blocks
            row["dc_tricomp_pos"] = result.report.tricomponents_positive
            row["dc_tricomp_neg"] = result.report.tricomponents_negative
    row["wall_time"] = round(time.perf_counter() - started, 4)
    return row


def cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    paths = sorted(str(p) for p in list(corpus.glob("*.stp")) + list(corpus.glob("*.json")))
    modes = [m for m in (args.modes.split(",") if args.modes else []) if m]
    for m in modes:
        if m not in MODES:
            raise MwcsError(f"unknown mode {m!r}")

    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS)
    writer.writeheader()
    if args.jobs > 1 and paths:
        import multiprocessing

        with multiprocessing.Pool(args.jobs) as pool:
            rows = pool.starmap(
                bench_one, [(p, modes, args.time_limit) for p in paths])
    else:
        rows = [bench_one(p, modes, args.time_limit) for p in paths]
    for row in rows:
        writer.writerow(row)
    _write_output(buf.getvalue(), args.out)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mwcs",
        description="Exact maximum-weight connected subgraph toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("instance", help="instance file")
        p.add_argument("--format", choices=("stp", "json"),
                       help="input format (default: by file suffix)")
        p.add_argument("--rooted", metavar="V1,V2,...",
                       help="comma-separated root node names")
        p.add_argument("--allow-empty", action="store_true",
                       help="report the empty solution when every weight is negative")

    p = sub.add_parser("solve", help="solve an instance")
    add_common(p)
    p.add_argument("--mode", choices=MODES, default="dc")
    p.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    p.add_argument("--emit-ilp", metavar="PATH",
                   help="also write the 0/1 formulation to PATH")
    p.add_argument("--strengthen", action="store_true",
                   help="include the strengthening rows in the emitted model")
    p.add_argument("--seed", type=int, default=0,
                   help="reserved for randomized tie-breaking; current engines are deterministic")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="brute-force solve a small instance")
    add_common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("preprocess", help="reduce an instance and report rule activity")
    add_common(p)
    p.add_argument("--out", default="-", metavar="PATH",
                   help="where to write the reduced instance (default stdout)")
    p.add_argument("--out-format", choices=("stp", "json"),
                   help="output format (default: same as input)")
    p.add_argument("--report", metavar="PATH",
                   help="write the rule report JSON here (default stderr)")
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("decompose", help="run the divide-and-conquer pipeline and report counters")
    add_common(p)
    p.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("bench", help="benchmark a corpus directory to CSV")
    p.add_argument("corpus", help="directory of .stp / .json instances")
    p.add_argument("--modes", default="dc",
                   help="comma-separated subset of no-pre,pre,dc (empty: stats only)")
    p.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="-", metavar="PATH")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SizeLimitError as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE


if __name__ == "__main__":
    sys.exit(main())
