"""Command-line front end.

Usage:
    lcamatch query --graph FILE --eps EPS --edge "u v" [--rng-seed S | --seed-blob HEX]
    lcamatch materialize --graph FILE --eps EPS [--format text|records]
    lcamatch bench --n 256,1024 --d 3 --eps 0.5 --trials 3 [--queries 50]
    lcamatch querytree --d 3 --trials 100000 --cap 500 [--format csv|text]

All commands are deterministic given explicit seeds; when neither --rng-seed
nor --seed-blob is given, the LCAMATCH_RNG_SEED environment variable is the
fallback, then 0.  Answers go to stdout; --verbose diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import statistics
import sys

from .graph import GraphFormatError, gen_random_bounded, load_graph
from .lca import DEFAULT_BUDGET, BudgetExceededError, Engine
from .oracles import find_augmenting_path, verify_matching
from .ordering import init_seeds, seedset_from_blob
from .querytree import tail_ccdf


def _edge_arg(text: str) -> tuple[int, int]:
    parts = text.split()
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"edge must be 'u v', got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"edge endpoints must be integers: {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}")


def _add_seed_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--rng-seed", type=int, default=None, help="integer seed")
    group.add_argument("--seed-blob", type=str, default=None, help="hex seed blob")


def _resolve_rng_seed(args: argparse.Namespace) -> int:
    if args.rng_seed is not None:
        return args.rng_seed
    env = os.environ.get("LCAMATCH_RNG_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"LCAMATCH_RNG_SEED must be an integer, got {env!r}")
    return 0


def _load_graph_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return load_graph(fh)


def _build_engine(args: argparse.Namespace, g) -> Engine:
    if args.seed_blob is not None:
        seeds = seedset_from_blob(args.seed_blob)
        return Engine(g, eps=args.eps, seeds=seeds, budget=args.budget)
    return Engine(g, eps=args.eps, rng_seed=_resolve_rng_seed(args), budget=args.budget)


def cmd_query(args: argparse.Namespace) -> int:
    g = _load_graph_file(args.graph)
    engine = _build_engine(args, g)
    answer = engine.query(args.edge)
    print("true" if answer else "false")
    if args.verbose and engine.last_stats is not None:
        s = engine.last_stats
        by_phase = " ".join(f"f[{ell}]={c}" for ell, c in sorted(s.f_by_phase.items()))
        sizes = s.relevant_set_sizes
        print(
            f"f={s.f} {by_phase} closures={len(sizes)} "
            f"max_closure={max(sizes) if sizes else 0} "
            f"wall_time={s.wall_time:.6f}",
            file=sys.stderr,
        )
    return 0


def cmd_materialize(args: argparse.Namespace) -> int:
    g = _load_graph_file(args.graph)
    engine = _build_engine(args, g)
    matching = sorted(engine.materialize())
    horizon = 2 * engine.k - 1
    valid = verify_matching(g, set(matching))
    witness = find_augmenting_path(g, set(matching), horizon) if valid else None
    summary = {
        "n": g.vertex_count,
        "edges": g.edge_count,
        "d": g.degree_bound,
        "k": engine.k,
        "size": len(matching),
        "valid": valid,
        "checked_length": horizon,
        "no_short_augmenting_path": valid and witness is None,
    }
    if args.format == "records":
        for u, v in matching:
            print(json.dumps({"type": "edge", "u": u, "v": v}, sort_keys=True))
        print(json.dumps({"type": "summary", **summary}, sort_keys=True))
    else:
        for u, v in matching:
            print(f"{u} {v}")
        for key, value in summary.items():
            print(f"{key}={_fmt(value)}")
    return 0


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def cmd_bench(args: argparse.Namespace) -> int:
    base = _resolve_rng_seed(args)
    for n in args.n:
        for trial in range(args.trials):
            graph_seed = base * 1_000_003 + n * 1_009 + trial
            order_seed = graph_seed + 1
            g = gen_random_bounded(n, args.d, graph_seed)
            k = Engine(g, eps=args.eps, rng_seed=0).k
            seeds = init_seeds(k, max(2, n), max(1, args.d), order_seed)
            probe = Engine(g, k=k, seeds=seeds, budget=args.budget,
                           cache_mode="per_query")
            edges = g.sorted_edges()
            picker = random.Random(order_seed)
            sample = (
                edges
                if len(edges) <= args.queries
                else picker.sample(edges, args.queries)
            )
            fs: list[int] = []
            closure_sizes: list[int] = []
            for e in sample:
                probe.query(e)
                assert probe.last_stats is not None
                fs.append(probe.last_stats.f)
                closure_sizes.extend(probe.last_stats.relevant_set_sizes)
            full = Engine(g, k=k, seeds=seeds, budget=args.budget)
            matching = full.materialize()
            valid = verify_matching(g, matching)
            record = {
                "trial": trial,
                "n": n,
                "d": args.d,
                "k": k,
                "graph_seed": graph_seed,
                "order_seed": order_seed,
                "edges": len(edges),
                "queries": len(sample),
                "matching_size": len(matching),
                "valid": valid,
                "no_short_augmenting_path": valid
                and find_augmenting_path(g, matching, 2 * k - 1) is None,
                "f_mean": round(statistics.fmean(fs), 3) if fs else 0.0,
                "f_max": max(fs, default=0),
                "relevant_mean": (
                    round(statistics.fmean(closure_sizes), 3) if closure_sizes else 0.0
                ),
                "relevant_max": max(closure_sizes, default=0),
            }
            if args.format == "records":
                print(json.dumps(record, sort_keys=True))
            else:
                print(" ".join(f"{key}={_fmt(record[key])}" for key in sorted(record)))
    return 0


def cmd_querytree(args: argparse.Namespace) -> int:
    rng = random.Random(_resolve_rng_seed(args))
    estimate = tail_ccdf(args.d, args.trials, args.cap, rng)
    if args.format == "text":
        print(f"d={estimate.d}")
        print(f"samples={estimate.samples}")
        print(f"cap={estimate.cap}")
        print(f"slope={estimate.slope:.6g}")
        print(f"r_squared={estimate.r_squared:.6g}")
        print(f"truncated_fraction={estimate.truncated_fraction:.6g}")
        print(f"inconclusive={_fmt(estimate.inconclusive)}")
    else:
        for line in estimate.csv_lines():
            print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcamatch",
        description="Per-edge membership queries for an approximate maximum matching.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("query", help="answer one edge-membership query")
    q.add_argument("--graph", required=True, help="edge-list file ('n m d' header)")
    q.add_argument("--eps", type=float, required=True, help="approximation slack")
    q.add_argument("--edge", type=_edge_arg, required=True, help="edge as 'u v'")
    q.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    q.add_argument("--verbose", action="store_true", help="stats on stderr")
    _add_seed_flags(q)
    q.set_defaults(func=cmd_query)

    m = sub.add_parser("materialize", help="query every edge and print the matching")
    m.add_argument("--graph", required=True)
    m.add_argument("--eps", type=float, required=True)
    m.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    m.add_argument("--format", choices=("text", "records"), default="text")
    _add_seed_flags(m)
    m.set_defaults(func=cmd_materialize)

    b = sub.add_parser("bench", help="random-graph trials with per-query stats")
    b.add_argument("--n", type=_int_list, required=True, help="comma list of sizes")
    b.add_argument("--d", type=int, required=True, help="degree bound")
    b.add_argument("--eps", type=float, required=True)
    b.add_argument("--trials", type=int, default=1)
    b.add_argument("--queries", type=int, default=50, help="sampled queries per trial")
    b.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    b.add_argument("--format", choices=("text", "records"), default="records")
    _add_seed_flags(b)
    b.set_defaults(func=cmd_bench)

    t = sub.add_parser("querytree", help="sample query-tree sizes and fit the tail")
    t.add_argument("--d", type=int, required=True, help="branching degree")
    t.add_argument("--trials", type=int, default=100_000, help="sample count")
    t.add_argument("--cap", type=int, default=500)
    t.add_argument("--format", choices=("csv", "text"), default="csv")
    _add_seed_flags(t)
    t.set_defaults(func=cmd_querytree)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, BudgetExceededError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
