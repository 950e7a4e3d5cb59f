"""Pair-counting agreement between two partitions of the same vertex set."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PairCounts:
    q11: int  # together in both
    q10: int  # together in a only
    q01: int  # together in b only
    q00: int  # apart in both

    @property
    def total(self) -> int:
        return self.q11 + self.q10 + self.q01 + self.q00


def _comb2(x):
    x = np.asarray(x, dtype=np.int64)
    return int((x * (x - 1) // 2).sum())


def pair_counts(pa, pb) -> PairCounts:
    a = np.asarray(pa)
    b = np.asarray(pb)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("partitions must label the same number of vertices")
    n = len(a)
    if n < 2:
        raise ValueError("need at least two vertices")
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    table = np.zeros((ai.max() + 1, bi.max() + 1), dtype=np.int64)
    np.add.at(table, (ai, bi), 1)
    both = _comb2(table)
    in_a = _comb2(table.sum(axis=1))
    in_b = _comb2(table.sum(axis=0))
    total = n * (n - 1) // 2
    return PairCounts(both, in_a - both, in_b - both, total - in_a - in_b + both)


def adjusted_rand(pa, pb) -> float:
    c = pair_counts(pa, pb)
    m = c.total
    a = c.q11 + c.q10
    b = c.q11 + c.q01
    expected = a * b / m
    num = c.q11 - expected
    den = 0.5 * (a + b) - expected
    if den == 0:
        return 1.0 if num == 0 and c.q10 == 0 and c.q01 == 0 and a > 0 else 0.0
    return float(num / den)


def f1_score(pa, pb) -> float:
    """Harmonic mean of pair precision ``q11/(q11+q01)`` and recall ``q11/(q11+q10)``."""
    c = pair_counts(pa, pb)
    if c.q11 == 0:
        return 0.0
    precision = c.q11 / (c.q11 + c.q01)
    recall = c.q11 / (c.q11 + c.q10)
    return 2 * precision * recall / (precision + recall)
