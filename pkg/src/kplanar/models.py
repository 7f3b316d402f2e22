"""Seeded random-graph samplers and Chernoff-style tail formulas.

G(n, p) uses geometric skip sampling, so cost scales with the number of
edges rather than with C(n, 2).  The regular models natively produce
multigraphs; loops are removed and parallel edges collapsed, with counts
reported, so every sampler returns a simple graph.  All samplers are pure
functions of (parameters, seed).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = [
    "RegularModel",
    "SampleReport",
    "SampleError",
    "sample_gnp",
    "sample_regular",
    "chernoff_degree_tail",
    "max_degree_ok",
    "density_tail_bound",
]


class SampleError(RuntimeError):
    """Sampler parameter or budget failure."""


class RegularModel(enum.Enum):
    """Random d-regular multigraph constructions.

    PERMUTATION    union of d/2 uniform permutations (d even)
    FULL_CYCLE     union of d/2 uniform n-cycles (d even)
    MATCHING       union of d uniform perfect matchings (n even)
    UNIFORM_SIMPLE pairing / configuration model, rejected until simple
    """

    PERMUTATION = "perm"
    FULL_CYCLE = "cycle"
    MATCHING = "matching"
    UNIFORM_SIMPLE = "uniform"


@dataclass(frozen=True)
class SampleReport:
    graph: Graph
    rejected_attempts: int
    collapsed_multiedges: int
    removed_loops: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": self.graph.num_edges,
            "rejected_attempts": self.rejected_attempts,
            "collapsed_multiedges": self.collapsed_multiedges,
            "removed_loops": self.removed_loops,
            "seed": self.seed,
        }


def _pair_of_index(n: int, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Linear index over pairs (u, v), u < v, ordered by (u, v).
    # first[u] = number of pairs whose smaller endpoint is < u.
    us = np.arange(n, dtype=np.int64)
    first = us * n - us * (us + 1) // 2
    u = np.searchsorted(first, idx, side="right") - 1
    v = idx - first[u] + u + 1
    return u, v


def sample_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p): each of the C(n, 2) pairs kept independently
    with probability p.  Deterministic given seed."""
    if not 0.0 <= p <= 1.0:
        raise SampleError(f"p={p} outside [0, 1]")
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        return Graph(n, [])
    if p == 1.0:
        return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
    rng = np.random.default_rng(seed)
    # Geometric skips over the linearized pair indices; fixed chunk schedule
    # keeps the draw sequence (hence the graph) independent of edge count.
    chunk = max(1024, int(total * p * 1.25) + 64)
    positions: list[np.ndarray] = []
    base = -1
    while True:
        skips = rng.geometric(p, size=chunk)
        pos = base + np.cumsum(skips)
        positions.append(pos)
        base = int(pos[-1])
        if base >= total - 1:
            break
        chunk = 4096
    idx = np.concatenate(positions)
    idx = idx[idx < total]
    u, v = _pair_of_index(n, idx)
    return Graph(n, list(zip(u.tolist(), v.tolist())))


def _simplify(n: int, endpoints: np.ndarray) -> tuple[Graph, int, int]:
    """Collapse a multigraph edge array of shape (m, 2) to a simple graph.

    Returns (graph, collapsed_multiedges, removed_loops).
    """
    u = endpoints.min(axis=1)
    v = endpoints.max(axis=1)
    loops = int(np.count_nonzero(u == v))
    keep = u != v
    keys = u[keep].astype(np.int64) * n + v[keep].astype(np.int64)
    uniq = np.unique(keys)
    collapsed = int(keys.size - uniq.size)
    g = Graph(n, list(zip((uniq // n).tolist(), (uniq % n).tolist())))
    return g, collapsed, loops


def _perm_edges(rng: np.random.Generator, n: int, rounds: int, full_cycle: bool) -> np.ndarray:
    parts = []
    for _ in range(rounds):
        perm = rng.permutation(n)
        if full_cycle:
            # perm read as a cyclic order gives a uniform n-cycle.
            parts.append(np.stack([perm, np.roll(perm, -1)], axis=1))
        else:
            parts.append(np.stack([np.arange(n), perm], axis=1))
    return np.concatenate(parts)


def _matching_edges(rng: np.random.Generator, n: int, rounds: int) -> np.ndarray:
    parts = []
    for _ in range(rounds):
        perm = rng.permutation(n)
        parts.append(perm.reshape(-1, 2))
    return np.concatenate(parts)


def uniform_simple_budget(d: int) -> int:
    """Rejection budget for the pairing model: 1000 * e^((d^2-1)/4) capped at 1e6.

    The exponent is the asymptotic log-probability that a random pairing is
    simple; the cap keeps failure transparent rather than unbounded.
    """
    try:
        est = 1000.0 * math.exp((d * d - 1) / 4.0)
    except OverflowError:
        est = float("inf")
    return int(min(est, 1_000_000.0))


def sample_regular(n: int, d: int, model: RegularModel, seed: int) -> SampleReport:
    """Sample one graph from a random d-regular model.

    Output is simple with all degrees <= d, and exactly d when no loop or
    parallel edge had to be removed (always true for UNIFORM_SIMPLE).
    """
    if d >= n:
        raise SampleError(f"need d < n, got d={d}, n={n}")
    if d < 0:
        raise SampleError(f"negative degree {d}")
    rng = np.random.default_rng(seed)

    if model in (RegularModel.PERMUTATION, RegularModel.FULL_CYCLE):
        if d % 2:
            raise SampleError(f"{model.name} requires even d, got {d}")
        raw = _perm_edges(rng, n, d // 2, model is RegularModel.FULL_CYCLE)
        g, collapsed, loops = _simplify(n, raw)
        return SampleReport(g, 0, collapsed, loops, seed)

    if model is RegularModel.MATCHING:
        if n % 2:
            raise SampleError(f"MATCHING requires even n, got {n}")
        raw = _matching_edges(rng, n, d)
        g, collapsed, loops = _simplify(n, raw)
        return SampleReport(g, 0, collapsed, loops, seed)

    if model is RegularModel.UNIFORM_SIMPLE:
        if (n * d) % 2:
            raise SampleError(f"UNIFORM_SIMPLE needs n*d even, got n={n}, d={d}")
        budget = uniform_simple_budget(d)
        stubs = np.repeat(np.arange(n), d)
        for attempt in range(budget):
            rng.shuffle(stubs)
            pairing = stubs.reshape(-1, 2)
            g, collapsed, loops = _simplify(n, pairing)
            if collapsed == 0 and loops == 0:
                return SampleReport(g, attempt, 0, 0, seed)
        raise SampleError(
            f"UNIFORM_SIMPLE: no simple pairing in {budget} attempts (n={n}, d={d})"
        )

    raise SampleError(f"unknown model {model!r}")


def chernoff_degree_tail(n: int, p: float, delta: float) -> float:
    """Chernoff tail (e^delta / (1+delta)^(1+delta))^((n-1)p), in log space."""
    if delta <= 0:
        raise ValueError(f"need delta > 0, got {delta}")
    log_base = delta - (1.0 + delta) * math.log1p(delta)
    return math.exp((n - 1) * p * log_base)


def max_degree_ok(g: Graph, p: float) -> bool:
    """True iff the maximum degree is at most (1 + ln n) * n * p."""
    if p <= 0:
        raise ValueError(f"need p > 0, got {p}")
    if g.n == 0:
        return True
    return g.max_degree <= (1.0 + math.log(g.n)) * g.n * p


def density_tail_bound(M: int, p: float) -> float:
    """Probability bound e^(-M p / 8) for seeing under half the expected
    successes in M independent trials of probability p."""
    if M < 0:
        raise ValueError(f"need M >= 0, got {M}")
    return math.exp(-M * p / 8.0)
