"""Command line entry point: ``interdiv compute|analyze|graph-stats``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import asdict
from pathlib import Path

from .graph import Graph, betweenness, descriptives, largest_component, normalize_betweenness
from .pajek import read_net
from .pipeline import (
    PipelineError,
    RunConfig,
    _write_text,
    analyze,
    format_indicator_csv,
    read_table,
    run,
    write_rows,
)

log = logging.getLogger("interdiv")


def _n_policy(value: str):
    if value in ("rows", "max-observed"):
        return value
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected 'rows', 'max-observed' or a positive integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("N must be positive")
    return n


def _emit(text: str, path: Path | None, force: bool, stage: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        _write_text(path, text, force, stage)


def cmd_compute(args) -> None:
    config = RunConfig(
        input=args.input,
        out=args.out,
        direction=args.direction,
        measure=args.measure,
        drop_loops=args.drop_loops,
        gini_support=args.gini_support,
        n_policy=args.n_policy,
        alpha=args.alpha,
        beta=args.beta,
        coocc=args.coocc,
        full_precision=args.full_precision,
        force=args.force,
        workers=args.workers,
    )
    rows, info = run(config)
    if args.out is None:
        sys.stdout.write(format_indicator_csv(rows, args.full_precision))
    for stage, secs in info["timings"].items():
        log.info("%-10s %.3fs", stage, secs)
    if "loops_removed" in info:
        log.info("removed %d loops (weight %g)", info["loops_removed"], info["loop_weight_removed"])


def cmd_analyze(args) -> None:
    try:
        indicators = read_table(args.indicators)
        extras = [read_table(p) for p in args.join]
    except (OSError, StopIteration) as exc:
        raise PipelineError("analyze", f"cannot read table: {exc}") from exc
    try:
        result = analyze(indicators, extras, k=args.top)
    except (ValueError, KeyError) as exc:
        raise PipelineError("analyze", str(exc)) from exc
    for t, labels in result.unmatched.items():
        if labels:
            log.warning("join table %d: %d unmatched labels, e.g. %s", t, len(labels), labels[:5])
    if args.correlations is not None:
        _write_text(args.correlations, write_rows(result.report.annex_rows()), args.force, "analyze")
    if args.range_hist is not None:
        _write_text(args.range_hist, write_rows(result.histogram), args.force, "analyze")
    _emit(write_rows(result.top_rows()), args.top_out, args.force, "analyze")


def cmd_graph_stats(args) -> None:
    try:
        net = read_net(args.input)
    except (OSError, ValueError) as exc:
        raise PipelineError("parse", f"{args.input}: {exc}") from exc
    directed = any(link.kind == "arc" for link in net.links)
    g = Graph.from_network(net, directed=directed)
    if args.largest_component:
        g = largest_component(g)
    mode = "directed" if args.directed else "undirected"
    raw = betweenness(g, mode)
    norm = normalize_betweenness(raw, g.n, mode) if g.n >= 3 else [float("nan")] * g.n
    rows = [["unit", "bc_raw", "bc", "bc_x1000"]]
    rows += [[lab, float(r), b, b * 1000] for lab, r, b in zip(g.labels, raw, norm)]
    _emit(write_rows(rows, args.full_precision), args.out, args.force, "graph-stats")
    stats = asdict(descriptives(g))
    text = "".join(f"{k}: {v}\n" for k, v in stats.items())
    if args.descriptives is not None:
        _write_text(args.descriptives, text, args.force, "graph-stats")
    else:
        sys.stderr.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="interdiv", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="per-unit diversity indicators from a Pajek file")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--direction", choices=("citing", "cited"), default="citing",
                   help="'cited' transposes the matrix before reading its columns")
    p.add_argument("--measure", choices=("cosine", "jaccard"), default="cosine")
    p.add_argument("--drop-loops", action="store_true", help="remove diagonal (self-citation) cells")
    p.add_argument("--gini-support", choices=("nonzero", "all"), default="nonzero")
    p.add_argument("--n-policy", type=_n_policy, default="rows", metavar="rows|max-observed|N")
    p.add_argument("--alpha", type=float, default=1.0, help="exponent on distances in RS")
    p.add_argument("--beta", type=float, default=1.0, help="exponent on p_i*p_j in RS")
    p.add_argument("--coocc", type=Path, help="precomputed row co-occurrence network")
    p.add_argument("--out", type=Path, help="output CSV (stdout if omitted)")
    p.add_argument("--full-precision", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--force", action="store_true", help="overwrite existing output")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("analyze", help="correlations, rankings and ranges of indicator tables")
    p.add_argument("--indicators", type=Path, required=True)
    p.add_argument("--join", type=Path, action="append", default=[], help="extra per-unit CSV (repeatable)")
    p.add_argument("--top", type=int, default=25)
    p.add_argument("--top-out", type=Path, help="top-k table CSV (stdout if omitted)")
    p.add_argument("--correlations", type=Path)
    p.add_argument("--range-hist", type=Path)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("graph-stats", help="betweenness and descriptives of a one-mode network")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--directed", action="store_true", help="directed betweenness (default undirected)")
    p.add_argument("--largest-component", action="store_true")
    p.add_argument("--out", type=Path, help="betweenness CSV (stdout if omitted)")
    p.add_argument("--descriptives", type=Path, help="descriptives file (stderr if omitted)")
    p.add_argument("--full-precision", action="store_true")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_graph_stats)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        args.func(args)
    except PipelineError as exc:
        print(f"interdiv: error {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
