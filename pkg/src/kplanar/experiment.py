"""Seeded experiment sweeps over (model, n, d or p, k) with CSV/JSON
emission and scaling-exponent fits.

Rows are emitted in canonical order (grid order, then trial index) and
every float is serialized with 17 significant digits, so a repeated run
with the same master seed produces byte-identical output.  Per-trial
failures become flagged rows; they never abort a sweep.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, fields

import numpy as np

from .certify import certify_k_planar_lb
from .graph import random_edge_partition
from .models import RegularModel, max_degree_ok, sample_gnp, sample_regular
from .partitions import local_search_bisection, witness_chain
from .seeds import derive_seed
from .spectral import friedman_check, mu_bound, spectrum_full

__all__ = ["ExperimentConfig", "TrialRecord", "run_experiment", "write_records",
           "fit_scaling", "summarize_frequencies", "FitError"]

CSV_FIELDS = [
    "model", "n", "d", "p", "k", "trial", "seed",
    "edges", "max_degree", "max_degree_ok", "mu_safe", "friedman_ok",
    "density_lb", "width_lb", "degree_term", "crossing_lb", "degenerate",
    "e_ab", "width_sum", "failed", "error",
]


class FitError(RuntimeError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    model: str  # "gnp" or a RegularModel tag
    n_list: tuple[int, ...]
    d_list: tuple[int, ...] = ()
    p_list: tuple[float, ...] = ()
    k: int = 2
    trials: int = 1
    master_seed: int = 0
    tol: float = 1e-8
    eps: float = 0.2
    with_witness: bool = False
    with_timings: bool = False

    def __post_init__(self):
        if not self.n_list:
            raise ValueError("empty n grid")
        if self.trials < 1:
            raise ValueError("need trials >= 1")
        if self.model == "gnp":
            if not self.p_list or self.d_list:
                raise ValueError("gnp sweeps take --p-list and no --d-list")
        else:
            RegularModel(self.model)  # validates the tag
            if not self.d_list or self.p_list:
                raise ValueError("regular-model sweeps take --d-list and no --p-list")

    @property
    def cells(self) -> list[tuple[int, float | int]]:
        params = self.p_list if self.model == "gnp" else self.d_list
        return [(n, x) for n in self.n_list for x in params]


@dataclass
class TrialRecord:
    model: str
    n: int
    d: int | None
    p: float | None
    k: int
    trial: int
    seed: int
    edges: int | None = None
    max_degree: int | None = None
    max_degree_ok: bool | None = None
    mu_safe: float | None = None
    friedman_ok: bool | None = None
    density_lb: float | None = None
    width_lb: float | None = None
    degree_term: float | None = None
    crossing_lb: float | None = None
    degenerate: bool | None = None
    e_ab: int | None = None
    width_sum: int | None = None
    failed: bool = False
    error: str = ""
    wall_time_s: float | None = None

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def cell_key(self) -> tuple:
        return (self.model, self.n, self.d, self.p, self.k)


def _run_trial(cfg: ExperimentConfig, n: int, param: float | int, trial: int,
               seed: int) -> TrialRecord:
    is_gnp = cfg.model == "gnp"
    rec = TrialRecord(
        model=cfg.model,
        n=n,
        d=None if is_gnp else int(param),
        p=float(param) if is_gnp else None,
        k=cfg.k,
        trial=trial,
        seed=seed,
    )
    t0 = time.perf_counter()
    try:
        if is_gnp:
            g = sample_gnp(n, float(param), seed)
            rec.max_degree_ok = max_degree_ok(g, float(param)) if param > 0 else True
        else:
            report = sample_regular(n, int(param), RegularModel(cfg.model), seed)
            g = report.graph
        rec.edges = g.num_edges
        rec.max_degree = g.max_degree
        if not is_gnp:
            d = int(param)
            summary = mu_bound(g, tol=cfg.tol) if g.n > 400 else spectrum_full(g)
            rec.mu_safe = summary.mu_safe
            if g.regular_degree() == d:
                rec.friedman_ok = friedman_check(g, d, cfg.eps, summary)
                cert = certify_k_planar_lb(g, cfg.k, summary)
                rec.density_lb = cert.density_lb
                rec.width_lb = cert.width_lb
                rec.degree_term = cert.degree_term
                rec.crossing_lb = cert.crossing_lb
                rec.degenerate = cert.degenerate
        if cfg.with_witness:
            ep = random_edge_partition(g, cfg.k, derive_seed(seed, 1))
            chain = witness_chain(
                g, ep, lambda h: local_search_bisection(h, derive_seed(seed, 2), restarts=4)
            )
            rec.e_ab = chain.e_ab
            rec.width_sum = chain.width_sum
    except Exception as exc:  # per-row failure, sweep continues
        rec.failed = True
        rec.error = f"{type(exc).__name__}: {exc}"
    if cfg.with_timings:
        rec.wall_time_s = time.perf_counter() - t0
    return rec


def run_experiment(cfg: ExperimentConfig, out_path: str | None = None,
                   fmt: str = "csv") -> list[TrialRecord]:
    """One record per (cell, trial), in canonical order, deterministic given
    the master seed.  When out_path is set, completed cells are flushed
    incrementally so an interrupted run keeps its finished cells."""
    records: list[TrialRecord] = []
    sink = open(out_path, "w") if out_path and fmt == "csv" else None
    try:
        if sink:
            sink.write(",".join(_columns(cfg)) + "\n")
            sink.flush()
        for ci, (n, param) in enumerate(cfg.cells):
            cell_records = []
            for t in range(cfg.trials):
                seed = derive_seed(cfg.master_seed, ci * cfg.trials + t)
                cell_records.append(_run_trial(cfg, n, param, t, seed))
            records.extend(cell_records)
            if sink:
                for rec in cell_records:
                    sink.write(_csv_row(rec, _columns(cfg)) + "\n")
                sink.flush()
    finally:
        if sink:
            sink.close()
    if out_path and fmt == "json":
        with open(out_path, "w") as fh:
            json.dump([_jsonable(r.to_dict()) for r in records], fh, indent=1)
            fh.write("\n")
    return records


def _columns(cfg: ExperimentConfig) -> list[str]:
    # Wall time is opt-in: it would break byte-identical reruns.
    return CSV_FIELDS + (["wall_time_s"] if cfg.with_timings else [])


def _fmt_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _csv_row(rec: TrialRecord, cols: list[str]) -> str:
    d = rec.to_dict()
    return ",".join(_fmt_value(d[c]).replace(",", ";") for c in cols)


def _jsonable(d: dict) -> dict:
    return {k: v for k, v in d.items() if k != "wall_time_s" or v is not None}


def write_records(records: list[TrialRecord], path: str, fmt: str = "csv",
                  with_timings: bool = False) -> None:
    cols = CSV_FIELDS + (["wall_time_s"] if with_timings else [])
    if fmt == "json":
        with open(path, "w") as fh:
            json.dump([_jsonable(r.to_dict()) for r in records], fh, indent=1)
            fh.write("\n")
        return
    with open(path, "w") as fh:
        fh.write(",".join(cols) + "\n")
        for rec in records:
            fh.write(_csv_row(rec, cols) + "\n")


def fit_scaling(records, x_field: str, y_field: str) -> tuple[float, float, int]:
    """Least-squares slope of log y against log x.

    Returns (exponent, r_squared, excluded) where excluded counts rows
    dropped for nonpositive or missing y.  Needs at least 3 distinct
    surviving x values.
    """
    xs, ys = [], []
    excluded = 0
    for rec in records:
        row = rec.to_dict() if isinstance(rec, TrialRecord) else rec
        x, y = row.get(x_field), row.get(y_field)
        if x is None or y is None or float(y) <= 0 or float(x) <= 0:
            excluded += 1
            continue
        xs.append(math.log(float(x)))
        ys.append(math.log(float(y)))
    if len(set(xs)) < 3:
        raise FitError(
            f"need >= 3 distinct positive x values, have {len(set(xs))} "
            f"({excluded} rows excluded)"
        )
    x = np.asarray(xs)
    y = np.asarray(ys)
    slope, intercept = np.polyfit(x, y, 1)
    pred = slope * x + intercept
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return float(slope), r2, excluded


def summarize_frequencies(records, flag_field: str) -> dict[tuple, float]:
    """Per-cell fraction of trials whose boolean `flag_field` is true.

    Rows with a missing flag count as false (failures included by design)."""
    if not records:
        raise ValueError("no records")
    rows = [r.to_dict() if isinstance(r, TrialRecord) else r for r in records]
    if flag_field not in rows[0]:
        raise KeyError(f"unknown field {flag_field!r}")
    cells: dict[tuple, list[bool]] = {}
    for row in rows:
        key = (row["model"], row["n"], row["d"], row["p"], row["k"])
        cells.setdefault(key, []).append(bool(row.get(flag_field)))
    return {key: sum(flags) / len(flags) for key, flags in cells.items()}
