"""Seeded random graph generators: degree-corrected block models and their one-block null.

Randomness comes from numpy's PCG64 via :func:`make_rng`. Child streams are
derived with :func:`derive_seed` from the parent seed plus integer keys, so a
surrogate's graph depends only on (seed, index) and never on scheduling.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import Graph

HALFNORMAL_SHIFT = 1.0 - 1.0 / math.sqrt(2.0 * math.pi)
HALFNORMAL_SD = 0.5


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def derive_seed(seed: int, *keys: int) -> int:
    """Child seed for stream ``keys`` under ``seed``; a pure function of its arguments."""
    ss = np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, *[int(k) & 0xFFFFFFFFFFFFFFFF for k in keys]])
    return int(ss.generate_state(1, np.uint64)[0])


def fingerprint(vertices: Sequence[int]) -> int:
    """Stable 64-bit digest of a vertex set (order-insensitive)."""
    data = np.asarray(sorted(int(v) for v in vertices), dtype="<i8").tobytes()
    return int.from_bytes(hashlib.blake2b(data, digest_size=8).digest(), "little")


def sample_theta_adjusted_halfnormal(count: int, seed: int) -> np.ndarray:
    """Right-skewed degree parameters ``|z| + 1 - 1/sqrt(2 pi)`` with ``z ~ N(0, 0.5^2)``.

    The shift makes the mean exactly 1.
    """
    if count < 1:
        raise ValueError("count must be positive")
    z = make_rng(seed).normal(0.0, HALFNORMAL_SD, size=int(count))
    return np.abs(z) + HALFNORMAL_SHIFT


@dataclass
class DcsbmSpec:
    block_sizes: list[int]
    w: np.ndarray
    theta: np.ndarray = field(default=None)

    def __post_init__(self):
        self.block_sizes = [int(s) for s in self.block_sizes]
        if not self.block_sizes or min(self.block_sizes) < 1:
            raise ValueError("block sizes must be positive")
        self.w = np.atleast_2d(np.asarray(self.w, dtype=np.float64))
        k = len(self.block_sizes)
        if self.w.shape != (k, k):
            raise ValueError(f"w must be {k}x{k}")
        if not np.allclose(self.w, self.w.T, rtol=0, atol=0) or np.any(self.w < 0):
            raise ValueError("w must be symmetric and nonnegative")
        if self.theta is None:
            self.theta = np.ones(self.n)
        self.theta = np.asarray(self.theta, dtype=np.float64)
        if self.theta.shape != (self.n,) or np.any(self.theta <= 0):
            raise ValueError(f"theta must hold {self.n} positive entries")

    @property
    def n(self) -> int:
        return sum(self.block_sizes)

    @property
    def offsets(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum(self.block_sizes)])

    def labels(self) -> np.ndarray:
        return np.repeat(np.arange(len(self.block_sizes)), self.block_sizes)

    @classmethod
    def two_block(cls, n1: int, n2: int, w_in: float, w_out: float, theta=None) -> "DcsbmSpec":
        return cls([n1, n2], [[w_in, w_out], [w_out, w_in]], theta)


def _canonical(pairs: np.ndarray) -> np.ndarray:
    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    pairs = np.sort(pairs, axis=1)
    return np.unique(pairs, axis=0) if len(pairs) else pairs.reshape(0, 2)


def sample_dcsbm_raw(spec: DcsbmSpec, seed: int) -> tuple[np.ndarray, int]:
    """Drawn endpoint pairs before collision handling, plus the raw draw count."""
    rng = make_rng(seed)
    off = spec.offsets
    k = len(spec.block_sizes)
    probs = []
    for s in range(k):
        th = spec.theta[off[s]:off[s + 1]]
        probs.append(th / th.sum())
    chunks = []
    drawn = 0
    for s in range(k):
        for t in range(s, k):
            ns, nt = spec.block_sizes[s], spec.block_sizes[t]
            rate = spec.w[s, t] * (ns * ns / 2.0 if s == t else ns * nt)
            m = int(rng.poisson(rate))
            drawn += m
            if m == 0:
                continue
            a = off[s] + rng.choice(ns, size=m, p=probs[s])
            b = off[t] + rng.choice(nt, size=m, p=probs[t])
            chunks.append(np.stack([a, b], axis=1))
    pairs = np.concatenate(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    return pairs.astype(np.int64), drawn


def sample_dcsbm(spec: DcsbmSpec, seed: int) -> tuple[Graph, np.ndarray]:
    """Poisson edge counts per block pair, endpoints drawn proportional to theta.

    Self-loops and repeated pairs are discarded rather than redrawn.
    Returns the graph and the planted block labels.
    """
    pairs, _ = sample_dcsbm_raw(spec, seed)
    return Graph.from_edges_unchecked(spec.n, _canonical(pairs)), spec.labels()


def dcerg_pair_probabilities(n: int, w: float, theta: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Upper-triangle pair index arrays and their edge probabilities ``min(1, w theta_i theta_j)``."""
    iu, ju = np.triu_indices(n, k=1)
    p = np.minimum(1.0, w * theta[iu] * theta[ju])
    return iu, ju, p


def sample_dcerg(n: int, w: float, theta: Sequence[float], seed: int) -> Graph:
    """Degree-corrected Erdos-Renyi graph with independent per-pair Bernoulli edges."""
    if n < 2:
        raise ValueError("need at least two vertices")
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (n,) or np.any(theta < 0):
        raise ValueError("theta must hold n nonnegative entries")
    if w < 0:
        raise ValueError("w must be nonnegative")
    iu, ju, p = dcerg_pair_probabilities(n, w, theta)
    hit = make_rng(seed).random(len(p)) < p
    return Graph.from_edges_unchecked(n, np.stack([iu[hit], ju[hit]], axis=1))


def sample_er(n: int, p: float, seed: int) -> Graph:
    """Plain G(n, p); used as an independent reference sampler."""
    iu, ju = np.triu_indices(n, k=1)
    hit = make_rng(seed).random(len(iu)) < p
    return Graph.from_edges_unchecked(n, np.stack([iu[hit], ju[hit]], axis=1))
