"""Acceptance criteria, one test each.

Every test records a single ``[PASS]``/``[FAIL]`` line that is printed in the
pytest terminal summary, then asserts on the same verdict. Criteria 2 to 5 are
long runs and carry the ``slow`` marker; they still run by default.
"""

import json
import math
import time

import numpy as np
import pytest
from scipy.stats import spearmanr

import oracles
from conftest import ACCEPTANCE_LINES, fitted_null_graph, path
from blocktest.cli import main
from blocktest.config import DetectConfig
from blocktest.detect import SweepSpec, detect_communities, run_sweep
from blocktest.dissim import dissimilarity, jsd
from blocktest.features import (
    alpha_centrality,
    centrality_distribution,
    clustering_distribution,
    default_alpha,
    distance_distribution,
)
from blocktest.gen import sample_theta_adjusted_halfnormal, sample_dcsbm, DcsbmSpec
from blocktest.graph import Graph
from blocktest.inference import estimate_w, hypothesis_test, silverman_bandwidth
from blocktest.io import DatasetUnavailable, load_dataset
from blocktest.metrics import adjusted_rand, f1_score, pair_counts
from blocktest.partition import edge_betweenness

TITLES = {
    1: "karate club reproduction",
    2: "football reproduction",
    3: "balanced sweep trend (N=300)",
    4: "unbalanced sweep trends",
    5: "nominal level on fitted DCERG graphs",
    6: "oracle suites",
    7: "hand values",
}


def report(num: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {TITLES[num]} | {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def _random_graph(rng, n):
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < rng.uniform(0.1, 0.9)
    return Graph(n, np.stack([iu[keep], ju[keep]], axis=1).tolist())


def _detect_dataset(name, seed, tmp_path):
    out = tmp_path / f"{name}-{seed}.json"
    t0 = time.perf_counter()
    assert main(["detect", "--dataset", name, "--seed", str(seed), "--out", str(out)]) == 0
    elapsed = time.perf_counter() - t0
    return json.loads(out.read_text()), elapsed


def _crossing(xs, ys, level=0.05):
    """First grid position where the mean p-value crosses ``level``, by linear interpolation."""
    for (x0, y0), (x1, y1) in zip(zip(xs, ys), zip(xs[1:], ys[1:])):
        if (y0 - level) * (y1 - level) <= 0 and y0 != y1:
            return x0 + (level - y0) * (x1 - x0) / (y1 - y0)
    return None


def test_criterion_1_karate(tmp_path):
    g, labels, truth = load_dataset("karate")
    ks, aris, f1s, times, wrong = [], [], [], [], []
    for seed in range(10):
        doc, elapsed = _detect_dataset("karate", seed, tmp_path)
        pred = np.array([int(doc["labels"][v]) for v in labels])
        ks.append(doc["communities"])
        aris.append(adjusted_rand(truth, pred))
        f1s.append(f1_score(truth, pred))
        times.append(elapsed)
        if doc["communities"] == 2:
            flips = [np.flatnonzero(pred != truth), np.flatnonzero(pred == truth)]
            wrong.append(min(flips, key=len).tolist())
    two = sum(k == 2 for k in ks)
    med_ari, med_f1 = float(np.median(aris)), float(np.median(f1s))
    max_wrong = max((len(w) for w in wrong), default=math.inf)
    ok = two >= 8 and med_ari >= 0.70 and med_f1 >= 0.85 and max(times) < 10 and max_wrong <= 3
    report(1, ok, f"2 communities in {two}/10 seeds (k={ks}); median ARI {med_ari:.4f}, median F1 {med_f1:.4f}; "
                  f"misclassified {sorted({tuple(w) for w in wrong})}; max {max(times):.2f} s/seed")


@pytest.mark.slow
def test_criterion_2_football(tmp_path):
    try:
        load_dataset("football")
    except DatasetUnavailable as exc:
        report(2, False, f"dataset not available: {exc}")
    ks, aris, f1s, times = [], [], [], []
    _, labels, truth = load_dataset("football")
    for seed in range(5):
        doc, elapsed = _detect_dataset("football", seed, tmp_path)
        pred = np.array([int(doc["labels"][v]) for v in labels])
        ks.append(doc["communities"])
        aris.append(adjusted_rand(truth, pred))
        f1s.append(f1_score(truth, pred))
        times.append(elapsed)
    med_k, med_ari, med_f1 = float(np.median(ks)), float(np.median(aris)), float(np.median(f1s))
    ok = 10 <= med_k <= 12 and med_ari >= 0.80 and med_f1 >= 0.75 and max(times) < 180
    report(2, ok, f"k={ks}; median ARI {med_ari:.4f}, median F1 {med_f1:.4f}; max {max(times):.1f} s/seed")


@pytest.mark.slow
def test_criterion_3_balanced_sweep():
    t0 = time.perf_counter()
    rows = run_sweep(SweepSpec("balanced_w12", runs=10, n=300), DetectConfig())
    elapsed = time.perf_counter() - t0
    xs, ys = [r.param for r in rows], [r.mean_pvalue for r in rows]
    rho = spearmanr(xs, ys)[0]
    ok = rho > 0.9 and ys[0] < 0.05 and elapsed < 1800
    report(3, ok, f"Spearman {rho:.3f}; mean p at w_out=0.02 {ys[0]:.4f}; "
                  f"mean p {[round(y, 3) for y in ys]}; {elapsed:.0f} s")


@pytest.mark.slow
def test_criterion_4_unbalanced_sweeps():
    cfg = DetectConfig()
    rows_n1 = run_sweep(SweepSpec("unbalanced_n1", runs=10, n=1000), cfg)
    rows_w = run_sweep(SweepSpec("unbalanced_w12", runs=10, n=1000, n1=100), cfg)
    x1, y1 = [r.param for r in rows_n1], [r.mean_pvalue for r in rows_n1]
    x2, y2 = [r.param for r in rows_w], [r.mean_pvalue for r in rows_w]
    rho_n1, rho_w = spearmanr(x1, y1)[0], spearmanr(x2, y2)[0]
    c1, c2 = _crossing(x1, y1), _crossing(x2, y2)
    fmt = lambda c, d: "none" if c is None else f"{c:.{d}f}"  # noqa: E731
    ok = rho_n1 < -0.8 and rho_w > 0.8
    report(4, ok, f"(a) Spearman over n_1 {rho_n1:.3f}, crossing n_1~{fmt(c1, 1)}; "
                  f"(b) Spearman over w_12 {rho_w:.3f}, crossing w_12~{fmt(c2, 3)}; "
                  f"mean p (a) {[round(y, 3) for y in y1]} (b) {[round(y, 3) for y in y2]}")


@pytest.mark.slow
def test_criterion_5_nominal_level():
    cfg = DetectConfig()
    rejects = sum(hypothesis_test(fitted_null_graph(300, seed), cfg, seed).reject for seed in range(100))
    rate = rejects / 100
    report(5, 0 <= rate <= 0.12, f"stage-1 rejection rate {rate:.2f} at alpha=0.05 over 100 graphs")


def test_criterion_6_oracle_suites():
    rng = np.random.default_rng(20240601)
    failures = []

    worst = 0.0
    for _ in range(100):
        g = _random_graph(rng, int(rng.integers(2, 9)))
        if g.m:
            expected = oracles.edge_betweenness(g.n, g.edges.tolist())
            worst = max(worst, float(np.abs(edge_betweenness(g) - expected).max()))
    if worst > 1e-9:
        failures.append(f"betweenness off by {worst:.2e}")

    for _ in range(200):
        n = int(rng.integers(2, 13))
        a, b = rng.integers(0, 4, n), rng.integers(0, 4, n)
        c = pair_counts(a, b)
        if (c.q11, c.q10, c.q01, c.q00) != oracles.pair_counts(a, b):
            failures.append(f"pair counts differ on {a.tolist()} vs {b.tolist()}")
            break
        if abs(adjusted_rand(a, b) - oracles.adjusted_rand(a, b)) > 1e-12:
            failures.append(f"ARI differs on {a.tolist()} vs {b.tolist()}")
            break

    worst = 0.0
    for _ in range(200):
        p, q = rng.dirichlet(np.ones(int(rng.integers(1, 9)))), rng.dirichlet(np.ones(int(rng.integers(1, 9))))
        worst = max(worst, abs(jsd(p, q) - oracles.jsd_mixture(p, q)))
    if worst > 1e-12:
        failures.append(f"JSD off by {worst:.2e}")

    worst_res, worst_sum = 0.0, 0.0
    pairs = []
    for _ in range(200):
        g = _random_graph(rng, int(rng.integers(2, 30)))
        a = default_alpha(g)
        x = alpha_centrality(g, a)
        worst_res = max(worst_res, float(np.abs(x - a * (g.to_sparse() @ x) - 1).max()))
        for vec in (distance_distribution(g), clustering_distribution(g), centrality_distribution(g)):
            worst_sum = max(worst_sum, abs(vec.sum() - 1.0))
        pairs.append(g)
    if worst_res >= 1e-9:
        failures.append(f"alpha-centrality residual {worst_res:.2e}")
    if worst_sum > 1e-9:
        failures.append(f"distribution mass off by {worst_sum:.2e}")

    bad = 0
    for g, h in zip(pairs, pairs[1:] + pairs[:1]):
        d = dissimilarity(g, h)
        if dissimilarity(g, g) != 0 or d != dissimilarity(h, g) or not 0 <= d < 1:
            bad += 1
    if bad:
        failures.append(f"{bad} of 200 dissimilarity pairs break zero/symmetry/range")

    karate, _, _ = load_dataset("karate")
    runs = [detect_communities(karate, DetectConfig(seed=3, threads=t)) for t in (1, 1, 2, 4)]
    if any(r.tree.to_dict() != runs[0].tree.to_dict() for r in runs[1:]):
        failures.append("detection differs across reruns or thread counts")
    tests = [hypothesis_test(karate, DetectConfig(threads=t), 11) for t in (1, 3)]
    if tests[0].to_dict() != tests[1].to_dict():
        failures.append("hypothesis test differs across thread counts")
    gen = [sample_dcsbm(DcsbmSpec.two_block(50, 50, 0.3, 0.02, sample_theta_adjusted_halfnormal(100, 5)), 9)[0]
           for _ in range(2)]
    if gen[0] != gen[1]:
        failures.append("generator differs across reruns")

    report(6, not failures, "; ".join(failures) or
           "betweenness, pair counts/ARI, JSD, alpha residual, mass, D properties and determinism all hold")


def test_criterion_7_hand_values():
    k3 = Graph(3, [(0, 1), (0, 2), (1, 2)])
    w = estimate_w(k3, np.full(3, 1 / 3))
    ari = adjusted_rand([1, 1, 2, 2], [1, 2, 1, 2])
    dist = distance_distribution(path(3))
    h = silverman_bandwidth([0.0, 1.0])
    checks = {
        "w(K3)=9": abs(w - 9) < 1e-12,
        "ARI=-0.5": abs(ari + 0.5) < 1e-12,
        "P3 distances=[2/3,1/3,0]": np.allclose(dist, [2 / 3, 1 / 3, 0], atol=1e-12),
        "Silverman({0,1})~0.5539": abs(h - 0.5539) <= 1e-4,
    }
    failed = [k for k, v in checks.items() if not v]
    report(7, not failed, f"w={w:g}, ARI={ari:g}, P3={np.round(dist, 6).tolist()}, h={h:.6f}"
                          + (f"; failed: {', '.join(failed)}" if failed else ""))
