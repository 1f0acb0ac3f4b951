"""Command-line surface.

Subcommands: ``solve`` (branch-and-reduce), ``reduce`` (kernel + lifting
sidecar export), ``ls`` (local search only), ``hybrid`` (reduce, then local
search on the kernel, then lift), ``oracle`` (size-capped brute force),
``verify`` (check a solution file against a graph), ``gen-weights``
(deterministic weight assignment).

Every solving command prints a one-line JSON result record to stdout and
optionally writes an ``elapsed_seconds,weight`` convergence CSV.  Timeouts
are normal outcomes (exit 0, ``optimal`` false); bad inputs and failed
verification exit nonzero.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import graph_io
from .errors import CertificateError, OracleSizeError, ParseError
from .graph import WeightedGraph
from .local_search import ils_run
from .oracle import brute_force_mwis
from .reductions import lift_solution, reduce_to_kernel
from .solution import Solution, verify_solution
from .solver import SolverConfig, solve


def _add_common(p: argparse.ArgumentParser, time_limit: bool = True) -> None:
    p.add_argument("graph", help="input graph file")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--weights", default=None, metavar="SPEC",
                   help="'generate:LO:HI' for random weights or 'file:PATH'; "
                        "defaults to the weights in the graph file (fmt 10)")
    if time_limit:
        p.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    p.add_argument("--convergence", default=None, metavar="PATH",
                   help="write an elapsed_seconds,weight CSV here")


def _load_graph(args) -> WeightedGraph:
    g = graph_io.parse_graph(args.graph)
    spec = getattr(args, "weights", None)
    if spec:
        if spec.startswith("generate:"):
            try:
                _, lo, hi = spec.split(":")
                graph_io.generate_weights(g, args.seed, int(lo), int(hi))
            except ValueError as exc:
                raise ParseError(f"bad --weights spec {spec!r}: {exc}") from None
        elif spec.startswith("file:"):
            weights = graph_io.read_weight_file(spec[5:], g.n_alive)
            for v, w in zip(sorted(g.alive_vertices()), weights):
                g.set_weight(v, w)
        else:
            raise ParseError(f"--weights must be 'generate:LO:HI' or 'file:PATH', got {spec!r}")
    return g


def _emit(record: dict, args) -> None:
    print(graph_io.format_record(record))


def _write_convergence(args, entries) -> None:
    if args.convergence:
        with open(args.convergence, "w", encoding="utf-8") as fh:
            graph_io.write_convergence(entries, fh)


def _instance_name(args) -> str:
    return os.path.basename(args.graph)


def cmd_solve(args) -> int:
    g = _load_graph(args)
    config = SolverConfig(variant=args.variant, time_limit=args.time_limit,
                          seed=args.seed)
    result = solve(g, config)
    record = graph_io.result_record(
        _instance_name(args), g, result.solution.vertices,
        result.solution.weight, result.solution.optimal, result.elapsed,
        args.seed, args.variant, result.kernel_n, result.kernel_m)
    _emit(record, args)
    _write_convergence(args, result.convergence)
    return 0


def cmd_reduce(args) -> int:
    g = _load_graph(args)
    n0, m0 = g.n_alive, g.m_alive
    t0 = time.monotonic()
    kr = reduce_to_kernel(g, variant=args.variant)
    elapsed = time.monotonic() - t0
    kernel_map = sorted(kr.kernel.alive_vertices())
    with open(args.kernel_out, "w", encoding="utf-8") as fh:
        fh.write(graph_io.serialize_graph(kr.kernel))
    with open(args.lift, "w", encoding="utf-8") as fh:
        graph_io.write_lifting(kr.offset, kernel_map, kr.stack, fh)
    record = {
        "instance": _instance_name(args),
        "n": n0, "m": m0,
        "kernel_n": kr.kernel.n_alive, "kernel_m": kr.kernel.m_alive,
        "offset": kr.offset,
        "elapsed_sec": round(elapsed, 6),
        "seed": args.seed, "variant": args.variant,
    }
    _emit(record, args)
    return 0


def cmd_ls(args) -> int:
    g = _load_graph(args)
    if args.time_limit is None and args.iterations is None:
        args.iterations = 10000
    res = ils_run(g, iterations=args.iterations, time_limit=args.time_limit,
                  seed=args.seed)
    record = graph_io.result_record(
        _instance_name(args), g, res.solution.vertices, res.solution.weight,
        False, res.convergence[-1][0] if res.convergence else 0.0,
        args.seed, "ls", g.n_alive, g.m_alive)
    _emit(record, args)
    _write_convergence(args, res.convergence)
    return 0


def cmd_hybrid(args) -> int:
    g = _load_graph(args)
    t0 = time.monotonic()
    work, mapping = g.compact_copy()
    kr = reduce_to_kernel(work, variant=args.variant)
    reduce_done = time.monotonic()
    convergence = [(reduce_done - t0, kr.offset)]
    kernel_sol: tuple[int, ...] = ()
    if kr.kernel.n_alive > 0:
        iterations = args.iterations
        if args.time_limit is None and iterations is None:
            iterations = 10000
        remaining = None
        if args.time_limit is not None:
            remaining = max(args.time_limit - (reduce_done - t0), 0.0)
        res = ils_run(kr.kernel, iterations=iterations,
                      time_limit=remaining, seed=args.seed, start_time=t0)
        kernel_sol = res.solution.vertices
        convergence.extend((t, w + kr.offset) for t, w in res.convergence)
    lifted = lift_solution(kernel_sol, kr.stack)
    chosen = {mapping[v] for v in lifted}
    solution = Solution.of(g, chosen)
    verify_solution(g, solution)
    record = graph_io.result_record(
        _instance_name(args), g, solution.vertices, solution.weight, False,
        time.monotonic() - t0, args.seed, "hybrid",
        kr.kernel.n_alive, kr.kernel.m_alive)
    _emit(record, args)
    _write_convergence(args, convergence)
    return 0


def cmd_oracle(args) -> int:
    g = _load_graph(args)
    t0 = time.monotonic()
    sol = brute_force_mwis(g)
    record = graph_io.result_record(
        _instance_name(args), g, sol.vertices, sol.weight, True,
        time.monotonic() - t0, args.seed, "oracle", g.n_alive, g.m_alive)
    _emit(record, args)
    return 0


def cmd_verify(args) -> int:
    g = _load_graph(args)
    with open(args.solution, "r", encoding="utf-8") as fh:
        text = fh.read().strip()
    claimed_weight = None
    try:
        record = json.loads(text)
        ids = record["solution"]
        claimed_weight = record.get("weight")
    except (json.JSONDecodeError, TypeError, KeyError):
        ids = [int(tok) for tok in text.split()]
    vertices = tuple(sorted(v - 1 for v in ids))
    weight = sum(g.weight(v) for v in vertices) if all(g.is_alive(v) for v in vertices) else 0
    solution = Solution(vertices, claimed_weight if claimed_weight is not None else weight)
    verify_solution(g, solution)
    print(f"OK independent set of weight {solution.weight} ({len(vertices)} vertices)")
    return 0


def cmd_gen_weights(args) -> int:
    g = graph_io.parse_graph(args.graph)
    graph_io.generate_weights(g, args.seed, args.lo, args.hi)
    graph_io.write_graph(g, args.output)
    print(f"wrote {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mwis",
        description="Exact and heuristic maximum weight independent set solving.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact branch-and-reduce")
    _add_common(p)
    p.add_argument("--variant", choices=("full", "dense"), default="full")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("reduce", help="export the kernel and a lifting sidecar")
    _add_common(p, time_limit=False)
    p.add_argument("--variant", choices=("full", "dense"), default="full")
    p.add_argument("--kernel-out", required=True, metavar="PATH")
    p.add_argument("--lift", required=True, metavar="PATH")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("ls", help="iterated local search only")
    _add_common(p)
    p.add_argument("--iterations", type=int, default=None)
    p.set_defaults(fn=cmd_ls)

    p = sub.add_parser("hybrid", help="reduce, local-search the kernel, lift")
    _add_common(p)
    p.add_argument("--variant", choices=("full", "dense"), default="full")
    p.add_argument("--iterations", type=int, default=None)
    p.set_defaults(fn=cmd_hybrid)

    p = sub.add_parser("oracle", help="brute force (small graphs only)")
    _add_common(p, time_limit=False)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("verify", help="check a solution file against a graph")
    p.add_argument("graph")
    p.add_argument("solution")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights", default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("gen-weights", help="write a weighted copy of a graph")
    p.add_argument("graph")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lo", type=int, default=1)
    p.add_argument("--hi", type=int, default=200)
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(fn=cmd_gen_weights)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, OracleSizeError, CertificateError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
