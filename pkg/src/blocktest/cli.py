"""Command-line entry point: ``blocktest {generate,detect,dissim,eval,sweep}``.

Exit status is 0 on success, 1 for usage errors and 2 for data errors; every
failure prints one line to stderr.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
import time
from pathlib import Path

import numpy as np

from .config import BisectConfig, DetectConfig
from .detect import EXPERIMENTS, SweepSpec, detect_communities, run_sweep
from .dissim import DissimWeights, dissimilarity
from .gen import DcsbmSpec, sample_dcsbm, sample_theta_adjusted_halfnormal
from .io import (
    DATASETS,
    DataError,
    align_labels,
    file_digest,
    format_edgelist,
    format_labels,
    graph_digest,
    load_dataset,
    read_edgelist,
    read_labels,
    read_partition_file,
    result_document,
    write_result,
)
from .metrics import adjusted_rand, f1_score
from .plotting import MissingExtra

EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _floats(text: str, count: int | None = None, what: str = "values") -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated numbers, got {text!r}")
    if count is not None and len(vals) != count:
        raise UsageError(f"{what} needs {count} comma-separated numbers, got {len(vals)}")
    return vals


def _weights(text: str | None) -> DissimWeights:
    if text is None:
        return DissimWeights()
    g = _floats(text, 3, "--gamma")
    try:
        return DissimWeights(*g)
    except ValueError as exc:
        raise UsageError(f"--gamma: {exc}")


def _detect_config(args) -> DetectConfig:
    bisect = BisectConfig()
    if args.beta is not None:
        b = _floats(args.beta, 2, "--beta")
        try:
            bisect = BisectConfig(beta1=b[0], beta2=b[1])
        except ValueError as exc:
            raise UsageError(f"--beta: {exc}")
    try:
        return DetectConfig(
            significance=args.significance,
            surrogates=args.surrogates,
            weights=_weights(args.gamma),
            bisect=bisect,
            min_test_size=args.min_size,
            max_depth=args.max_depth,
            seed=args.seed,
            max_pairs=args.max_pairs,
            bonferroni_by_depth=args.bonferroni,
            threads=args.threads,
        )
    except ValueError as exc:
        raise UsageError(str(exc))


def _add_test_flags(p, with_partition: bool = True):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--significance", type=float, default=0.05)
    p.add_argument("--surrogates", type=int, default=50)
    p.add_argument("--gamma", help="dissimilarity weights a,b,c summing to 1 (default 0.35,0.05,0.6)")
    p.add_argument("--max-pairs", type=int, default=None, help="subsample cap on pairwise surrogate dissimilarities")
    p.add_argument("--threads", type=int, default=None, help="worker threads (default $BLOCKTEST_THREADS or all cores)")
    if with_partition:
        p.add_argument("--beta", help="inter-community score weights b1,b2 (default 0.5,0.5)")
        p.add_argument("--min-size", type=int, default=4, help="smallest subgraph that is tested")
        p.add_argument("--max-depth", type=int, default=32)
        p.add_argument("--bonferroni", action="store_true", help="divide the level by depth+1")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blocktest", description="Community detection by recursive degree-corrected null-model tests.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="sample a degree-corrected block-model graph")
    p.add_argument("--n", type=int, required=True, help="total vertex count")
    p.add_argument("--k", type=int, default=2, help="number of blocks (equal sizes unless --sizes)")
    p.add_argument("--sizes", help="explicit block sizes n1,n2,...")
    p.add_argument("--w-in", type=float, default=0.2)
    p.add_argument("--w-out", type=float, default=0.02)
    p.add_argument("--theta", choices=("halfnormal", "constant", "file"), default="halfnormal")
    p.add_argument("--theta-file", help="one positive value per line, used with --theta file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output prefix; writes PREFIX.edgelist and PREFIX.labels")

    p = sub.add_parser("detect", help="detect communities in an edge list")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="edge-list file")
    src.add_argument("--dataset", choices=DATASETS, help="bundled benchmark network")
    _add_test_flags(p)
    p.add_argument("--out", help="write the result document here instead of stdout")
    p.add_argument("--figure", help="write a community-ordered adjacency image (PNG/PDF)")
    p.add_argument("--division-figure", help="write a community-division drawing")

    p = sub.add_parser("dissim", help="dissimilarity between two graphs")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--gamma", help="weights a,b,c summing to 1")
    p.add_argument("--damping", type=float, default=0.95, help="alpha-centrality damping as a fraction of 1/k_max")

    p = sub.add_parser("eval", help="compare a partition with ground truth")
    p.add_argument("--result", required=True, help="result document or labels file")
    tgt = p.add_mutually_exclusive_group(required=True)
    tgt.add_argument("--truth", help="ground-truth labels file")
    tgt.add_argument("--dataset", choices=DATASETS, help="use a bundled benchmark's ground truth")

    p = sub.add_parser("sweep", help="stage-one p-values over a block-model parameter grid")
    p.add_argument("--experiment", required=True, help="|".join(EXPERIMENTS))
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--w-in", type=float, default=0.2)
    p.add_argument("--w-out", type=float, default=0.02, help="fixed w12 for unbalanced_n1")
    p.add_argument("--n1", type=int, default=100, help="fixed n1 for unbalanced_w12")
    p.add_argument("--grid", help="comma-separated parameter values (default per experiment)")
    _add_test_flags(p, with_partition=False)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--figure", help="write the p-value curve here")
    return parser


def cmd_generate(args) -> int:
    if args.n < 1 or args.k < 1:
        raise UsageError("--n and --k must be positive")
    if args.sizes:
        sizes = [int(x) for x in _floats(args.sizes, what="--sizes")]
        if sum(sizes) != args.n:
            raise UsageError(f"--sizes sum to {sum(sizes)}, not --n {args.n}")
    else:
        if args.k > args.n:
            raise UsageError("--k exceeds --n")
        sizes = [args.n // args.k + (1 if b < args.n % args.k else 0) for b in range(args.k)]
    k = len(sizes)
    w = np.full((k, k), args.w_out)
    np.fill_diagonal(w, args.w_in)
    if args.theta == "halfnormal":
        theta = sample_theta_adjusted_halfnormal(args.n, args.seed)
    elif args.theta == "constant":
        theta = np.ones(args.n)
    else:
        if not args.theta_file:
            raise UsageError("--theta file needs --theta-file")
        try:
            theta = np.loadtxt(args.theta_file, ndmin=1)
        except (OSError, ValueError) as exc:
            raise DataError(f"cannot read {args.theta_file}: {exc}")
    try:
        spec = DcsbmSpec(sizes, w, theta)
    except ValueError as exc:
        raise UsageError(str(exc))
    g, truth = sample_dcsbm(spec, args.seed)
    note = [f"degree-corrected block model: sizes={','.join(map(str, sizes))} w_in={args.w_in} w_out={args.w_out} "
            f"theta={args.theta} seed={args.seed}", f"vertices={g.n} edges={g.m}"]
    prefix = Path(args.out)
    try:
        Path(f"{prefix}.edgelist").write_text(format_edgelist(g, comments=note))
        Path(f"{prefix}.labels").write_text(format_labels(truth, comments=note[:1]))
    except OSError as exc:
        raise DataError(f"cannot write output: {exc}")
    print(f"wrote {prefix}.edgelist ({g.n} vertices, {g.m} edges) and {prefix}.labels ({k} blocks)")
    return 0


def cmd_detect(args) -> int:
    cfg = _detect_config(args)
    if args.dataset:
        g, vertex_labels, truth = load_dataset(args.dataset)
        source = {"dataset": args.dataset, "digest": graph_digest(g)}
    else:
        g, vertex_labels = read_edgelist(args.input)
        truth = None
        source = {"path": str(args.input), "digest": file_digest(args.input)}
    if g.n == 0:
        raise DataError("input graph has no vertices")
    source.update(vertices=g.n, edges=g.m)
    t0 = time.perf_counter()
    result = detect_communities(g, cfg)
    doc = result_document(result, cfg, vertex_labels, source, time.perf_counter() - t0)
    if args.out:
        with open(args.out, "w") as fh:
            write_result(fh, doc)
        print(f"{result.n_communities} communities; result written to {args.out}")
    else:
        write_result(sys.stdout, doc)
    if args.figure or args.division_figure:
        from . import plotting

        if args.figure:
            plotting.plot_adjacency(g, result.partition, args.figure, f"{result.n_communities} communities")
        if args.division_figure:
            plotting.plot_division(g, result.partition, args.division_figure, vertex_labels, truth)
    return 0


def cmd_dissim(args) -> int:
    weights = _weights(args.gamma)
    g1, _ = read_edgelist(args.first)
    g2, _ = read_edgelist(args.second)
    if g1.n < 2 or g2.n < 2:
        raise DataError("both graphs need at least two vertices")
    print(f"{dissimilarity(g1, g2, weights, args.damping):.6f}")
    return 0


def cmd_eval(args) -> int:
    predicted = read_partition_file(args.result)
    if args.dataset:
        _, vertex_labels, truth = load_dataset(args.dataset)
    else:
        vertex_labels = list(predicted)
        truth = read_labels(args.truth, vertex_labels)
    pred = align_labels(predicted, vertex_labels)
    print(f"vertices: {len(vertex_labels)}")
    print(f"communities: {int(pred.max()) + 1} (truth {int(truth.max()) + 1})")
    print(f"ARI: {adjusted_rand(truth, pred):.4f}")
    print(f"F1: {f1_score(truth, pred):.4f}")
    return 0


def cmd_sweep(args) -> int:
    grid = tuple(_floats(args.grid, what="--grid")) if args.grid else None
    try:
        spec = SweepSpec(args.experiment, runs=args.runs, n=args.n, w_in=args.w_in, w_out=args.w_out,
                         n1=args.n1, grid=grid, seed=args.seed)
        cfg = DetectConfig(significance=args.significance, surrogates=args.surrogates, weights=_weights(args.gamma),
                           seed=args.seed, max_pairs=args.max_pairs, threads=args.threads)
    except ValueError as exc:
        raise UsageError(str(exc))
    log = logging.getLogger("blocktest.sweep")
    rows = run_sweep(spec, cfg, progress=lambda v, r, res: log.info("param=%g run=%d p=%.4f", v, r, res.pvalue))
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["param", "mean_pvalue", "std_pvalue", "reject_rate"])
        for r in rows:
            w.writerow([f"{r.param:g}", f"{r.mean_pvalue:.6f}", f"{r.std_pvalue:.6f}", f"{r.reject_rate:.4f}"])
    finally:
        if args.out:
            fh.close()
    if args.figure:
        from . import plotting

        plotting.plot_sweep(rows, spec.experiment, args.figure, cfg.significance)
    return 0


COMMANDS = {"generate": cmd_generate, "detect": cmd_detect, "dissim": cmd_dissim, "eval": cmd_eval, "sweep": cmd_sweep}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"blocktest: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MissingExtra as exc:
        print(f"blocktest: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"blocktest: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"blocktest: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
