"""Command-line entry point: ``fracture {attack,compare,verify}``.

Data goes to stdout (or ``--output``); progress and errors go to stderr.
Exit status: 0 success, 1 domain error or failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time

from .attack import MODES, STRATEGIES, AttackStep, run_strategy
from .exceptions import FractureError
from .graph import read_graph
from .trace_io import TraceRecord, write_csv
from .verify import run_checks

log = logging.getLogger("fracture")


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", help="edge list, Pajek .net or GML file")
    p.add_argument("--format", choices=("edgelist", "pajek", "gml"), default=None,
                   help="input format (default: from the file extension)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None, help="eigensolver residual tolerance")


def _add_attack_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=int, required=True, help="number of nodes to remove")
    p.add_argument("--mode", choices=MODES, default="fast")
    p.add_argument("--output", "-o", default="-", help="CSV destination (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracture", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="report progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("attack", help="run one removal strategy and write its trace")
    _add_graph_args(p)
    _add_attack_args(p)
    p.add_argument("--strategy", choices=STRATEGIES, required=True)

    p = sub.add_parser("compare", help="run every strategy with one budget")
    _add_graph_args(p)
    _add_attack_args(p)

    p = sub.add_parser("verify", help="check the spectral identities on a graph")
    _add_graph_args(p)
    p.add_argument("--trials", type=int, default=0, help="random node-removal perturbations")
    return parser


def _progress(step: AttackStep) -> None:
    log.info("q=%d removed=%d lcc=%d", step.q, step.removed_node, step.lcc_nodes)


def _emit(records, dest: str) -> None:
    if dest == "-":
        write_csv(records, sys.stdout)
        sys.stdout.flush()
    else:
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            write_csv(records, fh)


def cmd_attack(args) -> int:
    g = read_graph(args.graph, args.format)
    log.info("loaded %s: n=%d m=%d", args.graph, g.n, g.m)
    t0 = time.perf_counter()
    trace = run_strategy(g, args.strategy, args.q, mode=args.mode, seed=args.seed, tol=args.tol, progress=_progress)
    log.info("%s finished in %.1fs", args.strategy, time.perf_counter() - t0)
    _emit([TraceRecord.from_trace(trace)], args.output)
    return 0


def cmd_compare(args) -> int:
    g = read_graph(args.graph, args.format)
    log.info("loaded %s: n=%d m=%d", args.graph, g.n, g.m)
    records = []
    for strategy in STRATEGIES:
        t0 = time.perf_counter()
        trace = run_strategy(g, strategy, args.q, mode=args.mode, seed=args.seed, tol=args.tol, progress=_progress)
        log.info("%s finished in %.1fs", strategy, time.perf_counter() - t0)
        records.append(TraceRecord.from_trace(trace))
    _emit(records, args.output)
    return 0


def cmd_verify(args) -> int:
    g = read_graph(args.graph, args.format)
    print(f"graph {args.graph}: n={g.n} m={g.m}")

    def report(res):
        print(res.line(), flush=True)

    results = run_checks(g, trials=args.trials, seed=args.seed, tol=args.tol, report=report)
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


COMMANDS = {"attack": cmd_attack, "compare": cmd_compare, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    log.propagate = False
    if getattr(args, "q", 0) is not None and getattr(args, "q", 0) < 0:
        parser.error("--q must be non-negative")
    try:
        return COMMANDS[args.command](args)
    except (FractureError, OSError) as exc:
        print(f"fracture: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
