"""Acceptance suite: one test per release criterion, each printing a
PASS line with its measured quantities (run with -v or -s to see them).

Criterion 6 (the slope-2 scaling fit) is expected to fail and is kept
red on purpose: its own selection rule pins the experiment at the
degeneracy threshold where the fitted exponent is provably far above the
tolerance.  The test fails with the computed diagnostic rather than a
weakened assertion; see the README section on the acceptance suite.
"""
import math
import os
import random
from itertools import combinations

import numpy as np
import pytest

from kplanar.certify import (brute_min_pair_density, min_positive_n,
                             mixing_density_lb, threshold_c0)
from kplanar.certify import _chain
from kplanar.experiment import (ExperimentConfig, fit_scaling, run_experiment,
                                summarize_frequencies)
from kplanar.graph import Bipartition, cut_size, random_edge_partition
from kplanar.models import RegularModel, sample_gnp, sample_regular
from kplanar.partitions import (exact_bisection, lemma1_split,
                                local_search_bisection, witness_chain)
from kplanar.spectral import mu_bound, spectrum_full

from conftest import random_graph
from test_partitions import brute_bisection_width


def _regular_instances(count, seed0=0):
    """Small simple d-regular graphs cycling over d in {2,3,4}."""
    shapes = [(n, d) for d in (2, 3, 4) for n in range(5, 11) if d < n and n * d % 2 == 0]
    out = []
    i = 0
    while len(out) < count:
        n, d = shapes[i % len(shapes)]
        out.append(sample_regular(n, d, RegularModel.UNIFORM_SIMPLE, seed0 + i).graph)
        i += 1
    return out


def test_criterion_01_mixing_soundness():
    """Two-sided mixing inequality on every disjoint equal-size pair of 500
    small regular graphs, with dense-spectrum mu."""
    graphs = _regular_instances(500)
    checked = 0
    for g in graphs:
        n, d = g.n, g.regular_degree()
        mu = spectrum_full(g).mu
        adj_mask = [0] * n
        for u, v in g.edges:
            adj_mask[u] |= 1 << v
            adj_mask[v] |= 1 << u
        for t in range(1, n // 2 + 1):
            a = t / n
            slack = mu * n * (a - a * a) + 1e-9  # alpha = beta = t/n
            center = a * a * d * n
            for xs in combinations(range(n), t):
                xmask = 0
                for v in xs:
                    xmask |= 1 << v
                rest = [v for v in range(n) if not xmask >> v & 1]
                for ys in combinations(rest, t):
                    e = sum((adj_mask[v] & xmask).bit_count() for v in ys)
                    assert abs(e - center) <= slack, (
                        f"mixing violation: n={n} d={d} t={t} e={e} "
                        f"center={center} slack={slack}"
                    )
                    checked += 1
    print(f"\nACCEPTANCE 1 PASS: {checked} set pairs on 500 graphs, 0 violations")


def test_criterion_02_witness_chain_fuzz():
    """e(A,B) <= sum of widths on 1000 random (graph, partition, oracle) runs."""
    rnd = random.Random(0xC2)
    for i in range(1000):
        n = rnd.randint(18, 60)
        k = rnd.choice([2, 3])
        p = rnd.uniform(0.05, 0.3)
        g = random_graph(n, p, rnd.randrange(1 << 30))
        ep = random_edge_partition(g, k, rnd.randrange(1 << 30))
        chain = witness_chain(
            g, ep, lambda h: local_search_bisection(h, seed=i, restarts=2)
        )
        # recompute the cut independently of the chain's own bookkeeping
        assert cut_size(g, chain.A, chain.B) == chain.e_ab
        assert chain.e_ab <= chain.width_sum, f"violation at instance {i}"
    print("\nACCEPTANCE 2 PASS: 1000/1000 witness-chain instances satisfy the inequality")


def _balanced_masks(m):
    lo = math.ceil(m / 3)
    masks = []
    for size in range(lo, m - lo + 1):
        for block in combinations(range(m), size):
            mask = 0
            for v in block:
                mask |= 1 << v
            masks.append(mask)
    return np.array(masks, dtype=np.uint64)


def _bip_of_mask(m, mask):
    block = tuple(v for v in range(m) if mask >> v & 1)
    rest = tuple(v for v in range(m) if not mask >> v & 1)
    return Bipartition(block, rest)


def test_criterion_03_lemma1_exhaustive():
    """Size >= ceil(m/6) and opposite-sidedness over ALL balanced bipartition
    pairs, m = 6..12.

    m <= 10: the real function is called on every pair.  m in {11, 12}: every
    pair is checked by a bit-parallel mirror of the selection rule, and the
    mirror is cross-checked against the real function on 20k random pairs.
    """
    for m in range(6, 11):
        thresh = math.ceil(m / 6)
        masks = _balanced_masks(m)
        bips = [_bip_of_mask(m, int(mask)) for mask in masks]
        for b1 in bips:
            s11, s12 = set(b1.block1), set(b1.block2)
            for b2 in bips:
                y1, y2 = lemma1_split(b1, b2)
                assert len(y1) >= thresh and len(y2) >= thresh
                s21, s22 = set(b2.block1), set(b2.block2)
                assert (set(y1) <= s11 & s21 and set(y2) <= s12 & s22) or (
                    set(y1) <= s11 & s22 and set(y2) <= s12 & s21
                )
    for m in (11, 12):
        thresh = m // 6 + (m % 6 > 0)
        masks = _balanced_masks(m)
        full = np.uint64((1 << m) - 1)
        rnd = random.Random(m)
        for i in range(len(masks)):
            mi = masks[i]
            a = np.bitwise_count(mi & masks)
            b = np.bitwise_count(mi & (masks ^ full))
            c = np.bitwise_count((mi ^ full) & masks)
            d = m - a - b - c
            pick_ad = (a >= thresh) & (d >= thresh)
            chosen_min = np.where(pick_ad, np.minimum(a, d), np.minimum(b, c))
            assert int(chosen_min.min()) >= thresh, f"m={m}: pigeonhole failed"
        for _ in range(10_000):
            b1 = _bip_of_mask(m, int(masks[rnd.randrange(len(masks))]))
            b2 = _bip_of_mask(m, int(masks[rnd.randrange(len(masks))]))
            y1, y2 = lemma1_split(b1, b2)
            s11, s21 = set(b1.block1), set(b2.block1)
            expect_ad = len(s11 & s21) >= thresh and len(set(b1.block2) & set(b2.block2)) >= thresh
            assert set(y1) == (s11 & s21 if expect_ad else s11 & set(b2.block2))
            assert len(y1) >= thresh and len(y2) >= thresh
    print("\nACCEPTANCE 3 PASS: all balanced pairs for m=6..12 split correctly")


def test_criterion_04_friedman_frequency():
    """mu <= 2 sqrt(3) + 0.2 for >= 95% of 100 matching-model samples at
    n=500, d=4, iterative solver."""
    bound = 2 * math.sqrt(3) + 0.2
    hits = 0
    for seed in range(100):
        g = sample_regular(500, 4, RegularModel.MATCHING, seed).graph
        if mu_bound(g, tol=1e-8).mu_safe <= bound:
            hits += 1
    assert hits >= 95
    print(f"\nACCEPTANCE 4 PASS: {hits}/100 samples within the eigenvalue bound")


def test_criterion_05_max_degree_frequency():
    """Max degree <= (1 + ln n) n p in 100/100 G(n,p) samples at n=1e4, p=1e-3."""
    n, p = 10_000, 1e-3
    cap = (1 + math.log(n)) * n * p
    worst = 0
    for seed in range(100):
        g = sample_gnp(n, p, seed)
        worst = max(worst, g.max_degree)
        assert g.max_degree <= cap
    print(f"\nACCEPTANCE 5 PASS: 100/100 samples, worst max degree {worst} <= {cap:.1f}")


# Largest experiment this environment can execute inside the criterion's own
# runtime target (single core, 5 GB): edge endpoints per sampled graph.
_SCALING_EDGE_BUDGET = 5_000_000


def _rule_selected_degree(n_bottom: int) -> int | None:
    """Smallest even d whose certificate operating point fits under n_bottom."""
    for d in range(102, 20_000, 2):
        mu = 2 * math.sqrt(d - 1) + 0.2
        try:
            if min_positive_n(d, 2, mu) <= n_bottom:
                return d
        except ValueError:
            continue
    return None


def test_criterion_06_scaling_law():
    """Slope-2 fit of crossing_lb vs n at the smallest non-degenerate d.

    Expected-fail: the minimal-d selection rule places the n-range at the
    degeneracy threshold, where the chain arithmetic itself forces the
    fitted exponent far above 2.2 regardless of compute.  The assertions
    below implement the criterion as stated; the failure message carries
    the live-computed diagnostic.
    """
    full = os.environ.get("KPLANAR_FULL_SCALING") == "1"
    # Rule-selected configuration for a 3-point doubling range n, 2n, 4n.
    n_bottom, d = None, None
    for candidate in (25_000, 50_000, 100_000, 250_000, 1_000_000):
        sel = _rule_selected_degree(candidate)
        if sel is not None and (full or candidate * sel <= _SCALING_EDGE_BUDGET):
            n_bottom, d = candidate, sel
            break
    if n_bottom is None:
        # No configuration fits the budget; report the cheapest one that the
        # rule admits at all, plus the exponent its arithmetic already pins.
        cheapest = None
        for candidate in (25_000, 50_000, 100_000, 250_000, 1_000_000):
            sel = _rule_selected_degree(candidate)
            if sel is not None:
                cheapest = (candidate, sel)
                break
        assert cheapest is not None, "no degree admits a positive certificate at any tested n"
        _, d = cheapest
        mu = 2 * math.sqrt(d - 1) + 0.2
        nb = min_positive_n(d, 2, mu)  # exact operating point the rule demands
        rows = [{"n": n, "crossing_lb": _chain(n, d, 2, mu).crossing_lb}
                for n in (nb, 2 * nb, 4 * nb)]
        exponent, r2, _ = fit_scaling(rows, "n", "crossing_lb")
        pytest.fail(
            f"criterion unattainable: cheapest rule-admitted configuration is "
            f"d={d}, n in [{nb}, {4 * nb}] ({2 * nb * d:.2g} edges at the top, "
            f"over this environment's budget of {_SCALING_EDGE_BUDGET} per graph); "
            f"and even there the chain arithmetic at the Friedman eigenvalue "
            f"estimate already gives exponent {exponent:.2f} (r2={r2:.3f}), "
            f"outside 2.0 +/- 0.2, because the minimal-d rule operates at the "
            f"degeneracy threshold where crossing_lb -> 0+"
        )
    cfg = ExperimentConfig(
        model="uniform", n_list=(n_bottom, 2 * n_bottom, 4 * n_bottom),
        d_list=(d,), k=2, trials=5, master_seed=0x5CA1,
    )
    records = run_experiment(cfg)
    assert all(not r.degenerate for r in records if not r.failed)
    exponent, r2, excluded = fit_scaling(records, "n", "crossing_lb")
    assert abs(exponent - 2.0) <= 0.2, f"exponent {exponent:.2f} outside 2.0 +/- 0.2"
    assert r2 >= 0.98, f"r2 {r2:.3f} < 0.98"
    print(f"\nACCEPTANCE 6 PASS: exponent {exponent:.3f}, r2 {r2:.3f}")


def test_criterion_07_theorem4_constant_grid():
    """D >= dn / (2 (6 3^(k-2))^2) at mu = 2 sqrt(d-1) + 0.2 for d >= c0(k)."""
    for k in (2, 3):
        alpha = 1.0 / (6 * 3 ** (k - 2))
        c0 = threshold_c0(k)
        for d in (c0, 2 * c0):
            mu = 2 * math.sqrt(d - 1) + 0.2
            for n in (10**3, 10**4):
                D = mixing_density_lb(n, d, mu, alpha, alpha)
                target = d * n / (2 * (6 * 3 ** (k - 2)) ** 2)
                assert D >= target, f"k={k} d={d} n={n}: D={D} < {target}"
    print("\nACCEPTANCE 7 PASS: density bound clears the claimed constant on the full grid")


def test_criterion_08_oracle_cross_checks():
    """exact_bisection vs exhaustive recount (200 instances); brute pair
    density vs mixing bound wherever both are defined."""
    rnd = random.Random(0xC8)
    for _ in range(200):
        n = rnd.randint(4, 10)
        g = random_graph(n, rnd.uniform(0.2, 0.8), rnd.randrange(1 << 30))
        assert exact_bisection(g).cut == brute_bisection_width(g)
    pairs_checked = 0
    for g in _regular_instances(60, seed0=7000):
        n, d = g.n, g.regular_degree()
        mu = spectrum_full(g).mu
        for t in range(1, n // 2 + 1):
            lb = mixing_density_lb(n, d, mu, t / n, t / n)
            assert brute_min_pair_density(g, t) >= lb - 1e-9
            pairs_checked += 1
    print(f"\nACCEPTANCE 8 PASS: 200 bisection instances + {pairs_checked} density checks")


def test_criterion_09_spectral_identities():
    """Trace/energy identities (100 graphs, n <= 200); dense-vs-iterative mu
    agreement within tol + 1e-6 (50 graphs, n <= 500)."""
    rnd = random.Random(0xC9)
    for _ in range(100):
        n = rnd.randint(10, 200)
        g = random_graph(n, rnd.uniform(0.02, 0.2), rnd.randrange(1 << 30))
        vals = np.asarray(spectrum_full(g).full_spectrum)
        assert abs(vals.sum()) < 1e-6
        assert abs((vals**2).sum() - 2 * g.num_edges) < 1e-6 * max(1, g.num_edges)
    tol = 1e-8
    for i in range(50):
        n = rnd.randint(50, 500)
        g = random_graph(n, rnd.uniform(0.02, 0.1), rnd.randrange(1 << 30))
        dense = spectrum_full(g)
        it = mu_bound(g, tol=tol)
        assert abs(dense.mu - it.mu) <= tol + 1e-6, f"instance {i}: {dense.mu} vs {it.mu}"
    print("\nACCEPTANCE 9 PASS: spectral identities and dense/iterative agreement hold")


def test_criterion_10_reproducibility(tmp_path):
    """Same master seed => byte-identical experiment output."""
    cfg = ExperimentConfig(
        model="matching", n_list=(40, 60), d_list=(4,), k=2, trials=3,
        master_seed=0xABCDE, with_witness=True,
    )
    paths = [str(tmp_path / f"run{i}.csv") for i in range(2)]
    for path in paths:
        run_experiment(cfg, out_path=path)
    b0, b1 = (open(p, "rb").read() for p in paths)
    assert b0 == b1 and len(b0) > 0
    rates = summarize_frequencies(run_experiment(cfg), "friedman_ok")
    assert set(rates.values()) <= {x / 3 for x in range(4)}
    print("\nACCEPTANCE 10 PASS: byte-identical reruns")
