"""Command-line front end: sample / spectrum / bisect / witness / certify /
experiment / fit.

Exit codes: 0 success, 1 configuration error, 2 sweep finished but some
rows carry failure flags.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

from .certify import brute_min_pair_density, certify_k_planar_lb, set_size_t
from .experiment import ExperimentConfig, FitError, fit_scaling, run_experiment
from .graph import (EdgePartition, GraphError, random_edge_partition,
                    read_edge_list, write_edge_list)
from .models import RegularModel, SampleError, sample_gnp, sample_regular
from .partitions import exact_bisection, local_search_bisection, witness_chain
from .seeds import derive_seed
from .spectral import SpectralError, mu_bound, spectrum_full

_MODEL_TAGS = {m.value: m for m in RegularModel}


def _emit(obj, args) -> None:
    if not getattr(args, "quiet", False):
        json.dump(obj, sys.stdout, indent=1, default=str)
        sys.stdout.write("\n")


def _cmd_sample(args) -> int:
    if args.model == "gnp":
        if args.p is None:
            raise SampleError("gnp needs --p")
        g = sample_gnp(args.n, args.p, args.seed)
        report = {"n": g.n, "edges": g.num_edges, "seed": args.seed,
                  "rejected_attempts": 0, "collapsed_multiedges": 0, "removed_loops": 0}
    else:
        if args.d is None:
            raise SampleError(f"{args.model} needs --d")
        rep = sample_regular(args.n, args.d, _MODEL_TAGS[args.model], args.seed)
        g, report = rep.graph, rep.to_dict()
    if args.out:
        write_edge_list(args.out, g)
    _emit(report, args)
    return 0


def _cmd_spectrum(args) -> int:
    g = read_edge_list(args.infile)
    summary = spectrum_full(g) if args.full else mu_bound(g, tol=args.tol)
    _emit(summary.to_dict(), args)
    return 0


def _cmd_bisect(args) -> int:
    g = read_edge_list(args.infile)
    if args.exact:
        res = exact_bisection(g)
    else:
        res = local_search_bisection(g, args.seed, args.restarts)
    _emit(res.to_dict(), args)
    return 0


def _cmd_witness(args) -> int:
    g = read_edge_list(args.infile)
    if args.partition == "random":
        ep = random_edge_partition(g, args.k, args.seed)
    else:
        with open(args.partition) as fh:
            classes = [int(line) for line in fh if line.strip()]
        if len(classes) != g.num_edges:
            raise GraphError(
                f"partition file has {len(classes)} lines, graph has {g.num_edges} edges"
            )
        ep = EdgePartition(args.k, dict(zip(g.edges, classes)))
    chain = witness_chain(
        g, ep, lambda h: local_search_bisection(h, derive_seed(args.seed, 7), args.restarts)
    )
    _emit(chain.to_dict(), args)
    return 0


def _estimate_density(g, k: int) -> dict:
    """Non-certified density report for irregular graphs (ESTIMATE only)."""
    import random as _random

    from .graph import cut_size

    n = g.n
    t, t_ok = set_size_t(n, k)
    p_hat = g.num_edges / (n * (n - 1) / 2) if n > 1 else 0.0
    if n <= 12 and t <= n // 2:
        min_density = brute_min_pair_density(g, t)
        method = "exhaustive"
    else:
        rng = _random.Random(0xE57)
        best = None
        for _ in range(500):
            verts = rng.sample(range(n), 2 * t)
            e = cut_size(g, verts[:t], verts[t:])
            best = e if best is None else min(best, e)
        min_density = best
        method = "sampled-500-pairs"
    return {
        "label": "ESTIMATE",
        "note": "graph is not regular; no certificate, densities are empirical",
        "t": t,
        "t_ok": t_ok,
        "p_hat": p_hat,
        "min_pair_density": min_density,
        "method": method,
        "threshold_half_binom": 0.5 * (t * (t - 1) / 2) * p_hat,
        "threshold_half_square": 0.5 * t * t * p_hat,
    }


def _cmd_certify(args) -> int:
    g = read_edge_list(args.infile)
    if g.regular_degree() is None:
        _emit(_estimate_density(g, args.k), args)
        return 0
    summary = spectrum_full(g) if g.n <= 400 else mu_bound(g, tol=args.tol)
    cert = certify_k_planar_lb(g, args.k, summary)
    _emit(cert.to_dict(), args)
    if not args.quiet:
        sys.stdout.write(cert.transcript() + "\n")
    return 0


def _cmd_experiment(args) -> int:
    cfg = ExperimentConfig(
        model=args.model,
        n_list=tuple(args.n_list),
        d_list=tuple(args.d_list or ()),
        p_list=tuple(args.p_list or ()),
        k=args.k,
        trials=args.trials,
        master_seed=args.seed,
        tol=args.tol,
        with_witness=args.witness,
        with_timings=args.timings,
    )
    records = run_experiment(cfg, out_path=args.out, fmt=args.format)
    failures = sum(1 for r in records if r.failed)
    _emit({"records": len(records), "failures": failures, "out": args.out}, args)
    return 2 if failures else 0


def _cmd_fit(args) -> int:
    with open(args.infile) as fh:
        rows = list(csv.DictReader(fh))
    parsed = []
    for row in rows:
        parsed.append({k: (None if v == "" else _maybe_num(v)) for k, v in row.items()})
    exponent, r2, excluded = fit_scaling(parsed, args.x, args.y)
    _emit({"exponent": exponent, "r2": r2, "excluded": excluded}, args)
    return 0


def _maybe_num(s: str):
    for cast in (int, float):
        try:
            return cast(s)
        except ValueError:
            continue
    return s


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kplanar")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        if seed:
            p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("sample", help="draw one random graph to an edge-list file")
    p.add_argument("--model", choices=["gnp"] + sorted(_MODEL_TAGS), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--d", type=int)
    common(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("spectrum", help="eigenvalue summary of a graph file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--full", action="store_true")
    p.add_argument("--tol", type=float, default=1e-8)
    common(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("bisect", help="1/3-2/3 bisection (exact or heuristic)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--restarts", type=int, default=8)
    common(p)
    p.set_defaults(func=_cmd_bisect)

    p = sub.add_parser("witness", help="witness-chain extraction for a k-partition")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--partition", default="random",
                   help="'random' or a file with one class index per edge line")
    p.add_argument("--restarts", type=int, default=8)
    common(p)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("certify", help="k-planar crossing lower-bound certificate")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    common(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("experiment", help="seeded sweep over a parameter grid")
    p.add_argument("--model", choices=["gnp"] + sorted(_MODEL_TAGS), required=True)
    p.add_argument("--n-list", type=int, nargs="+", required=True)
    p.add_argument("--d-list", type=int, nargs="+")
    p.add_argument("--p-list", type=float, nargs="+")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--timings", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("fit", help="log-log scaling fit over a sweep CSV")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    common(p, seed=False)
    p.set_defaults(func=_cmd_fit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except (GraphError, SampleError, SpectralError, FitError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
