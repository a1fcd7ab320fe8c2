"""Command-line interface: ``interestmax {run,stats,ilp-export,reduce-mcp,brute}``."""

from __future__ import annotations

import argparse
import contextlib
import sys
from pathlib import Path

from .bench import ALGORITHMS, ExperimentConfig, run_experiment, write_csv
from .estimators import make_model
from .exact import EnumerationCapError, McpInstance, brute_force_opt, ilp_export, mcp_reduce, render_lp
from .graph import assign_interest, compute_thresholds, graph_stats, read_edge_list, write_edge_list


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


@contextlib.contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def cmd_run(args) -> int:
    cfg = ExperimentConfig(
        graph_path=args.graph,
        algorithms=[a.strip() for a in args.algo.split(",") if a.strip()],
        model=args.model,
        mechanism=args.mechanism,
        prob=args.prob,
        eta_mode=args.eta,
        k_list=args.k_list,
        reps=args.reps,
        sel_reps=args.sel_reps,
        master_seed=args.seed,
        aware_closure=args.icm_aware_closure,
    )
    trace_cm = contextlib.nullcontext(None)
    if args.dump_trace:
        if args.out in (None, "-"):
            trace_cm = contextlib.nullcontext(sys.stderr)
        else:
            trace_cm = open(args.out + ".trace.jsonl", "w", encoding="utf-8", newline="\n")
    with trace_cm as trace:
        rows = run_experiment(cfg, trace=trace)
    with _output(args.out) as out:
        write_csv(rows, out)
    return 0


def cmd_stats(args) -> int:
    g = read_edge_list(args.graph)
    print(graph_stats(g))
    return 0


def cmd_ilp_export(args) -> int:
    g = read_edge_list(args.graph)
    eta = assign_interest(g, args.eta)
    t = compute_thresholds(g, args.mechanism, eta)
    model = ilp_export(g, t, eta, args.k, args.horizon)
    with _output(args.out) as out:
        out.write(render_lp(model))
    return 0


def _read_subsets(path: str) -> tuple[list[str], list[list[str]]]:
    """Lines ``name: e1 e2 ...``; the universe is every element listed, plus
    any names on an optional ``universe: ...`` line."""
    universe: list[str] = []
    subsets = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith(("#", "%")):
                continue
            head, sep, rest = line.partition(":")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected 'name: element ...'")
            elems = rest.split()
            if head.strip() == "universe":
                universe.extend(e for e in elems if e not in universe)
                continue
            subsets.append(elems)
            universe.extend(e for e in elems if e not in universe)
    return universe, subsets


def cmd_reduce_mcp(args) -> int:
    universe, subsets = _read_subsets(args.subsets)
    red = mcp_reduce(McpInstance(universe, subsets, args.k, args.l))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "graph.txt", "w", encoding="ascii", newline="\n") as fh:
        for v, name in enumerate(red.names):
            fh.write(f"# {v} {name}\n")
        write_edge_list(red.graph, fh)
    with open(out_dir / "thresholds.txt", "w", encoding="ascii", newline="\n") as fh:
        for v in range(red.graph.n):
            fh.write(f"{red.graph.label(v)} {int(red.thresholds[v])}\n")
    print(f"vertices={red.graph.n} edges={red.graph.m} k={red.k} target={red.target}")
    return 0


def cmd_brute(args) -> int:
    g = read_edge_list(args.graph)
    eta = assign_interest(g, args.eta)
    model = make_model(g, eta, args.model, args.mechanism, args.prob, eval_reps=args.reps or 200,
                       random_state=args.seed)
    try:
        seeds, value = brute_force_opt(g, model, eta, args.k, cap=args.cap)
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"seeds={' '.join(map(str, g.to_labels(seeds)))} interest={value:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="interestmax", description="Interest maximization under LTM and ICM.")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run heuristics and write a CSV report")
    run.add_argument("--graph", required=True, help="edge-list file")
    run.add_argument("--algo", default="lbgh,mdfh,pbgh,mpbgh", help=f"comma list from {','.join(ALGORITHMS)}")
    run.add_argument("--model", choices=("ltm", "icm"), default="ltm")
    run.add_argument("--mechanism", default=None, help="LTM thresholds: fixed:R or interest (default fixed:0.5)")
    run.add_argument("--prob", default=None, help="ICM probabilities: uniform:P or interest:C (default uniform:0.5)")
    run.add_argument("--eta", default="random:0", help="random:SEED, const:C or file:PATH")
    run.add_argument("--k-list", type=_csv_ints, default=[1, 2, 3, 4, 5], help="ascending k values, e.g. 1,2,3")
    run.add_argument("--reps", type=int, default=None, help="ICM evaluation cascades (default 200, mpbgh 20)")
    run.add_argument("--sel-reps", type=int, default=20, help="ICM cascades per selection-time score")
    run.add_argument("--seed", type=_u64, default=0, help="master seed")
    run.add_argument("--out", default="-", help="CSV path ('-' for stdout)")
    run.add_argument("--icm-aware-closure", action="store_true", help="score ICM by active vertices and their neighbors")
    run.add_argument("--dump-trace", action="store_true", help="write diffusion traces as JSON lines to OUT.trace.jsonl")
    run.set_defaults(func=cmd_run)

    st = sub.add_parser("stats", help="print network statistics")
    st.add_argument("--graph", required=True)
    st.set_defaults(func=cmd_stats)

    ilp = sub.add_parser("ilp-export", help="write the LTM integer program in LP format")
    ilp.add_argument("--graph", required=True)
    ilp.add_argument("--k", type=int, required=True)
    ilp.add_argument("--horizon", type=int, default=None, help="diffusion rounds to unroll (default n)")
    ilp.add_argument("--mechanism", default="fixed:0.5")
    ilp.add_argument("--eta", default="const:1")
    ilp.add_argument("--out", default="-")
    ilp.set_defaults(func=cmd_ilp_export)

    red = sub.add_parser("reduce-mcp", help="build the LTM instance of a max-coverage instance")
    red.add_argument("--subsets", required=True, help="file of 'name: element ...' lines")
    red.add_argument("--k", type=int, required=True)
    red.add_argument("--l", type=int, required=True)
    red.add_argument("--out-dir", required=True)
    red.set_defaults(func=cmd_reduce_mcp)

    br = sub.add_parser("brute", help="exhaustive optimum for small graphs")
    br.add_argument("--graph", required=True)
    br.add_argument("--k", type=int, required=True)
    br.add_argument("--model", choices=("ltm", "icm"), default="ltm")
    br.add_argument("--mechanism", default="fixed:0.5")
    br.add_argument("--prob", default="uniform:0.5")
    br.add_argument("--eta", default="const:1")
    br.add_argument("--reps", type=int, default=None)
    br.add_argument("--seed", type=_u64, default=0)
    br.add_argument("--cap", type=int, default=2_000_000)
    br.set_defaults(func=cmd_brute)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
