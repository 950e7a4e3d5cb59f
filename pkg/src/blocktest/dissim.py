"""Graph dissimilarity: weighted square-rooted Jensen-Shannon divergences of the
distance, clustering and centrality distributions, each scaled into [0, 1]."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .features import DEFAULT_DAMPING, GraphFeatures, graph_features
from .graph import Graph

LN2 = math.log(2.0)


@dataclass(frozen=True)
class DissimWeights:
    """Weights of the distance, clustering and centrality terms.

    The defaults lean on the centrality term and keep a small clustering term;
    equal thirds split the karate club into many small groups and over-reject
    on sparse null graphs.
    """

    gamma1: float = 0.35
    gamma2: float = 0.05
    gamma3: float = 0.6

    def __post_init__(self):
        g = (self.gamma1, self.gamma2, self.gamma3)
        if min(g) < 0:
            raise ValueError("dissimilarity weights must be nonnegative")
        if abs(sum(g) - 1.0) > 1e-12:
            raise ValueError(f"dissimilarity weights must sum to 1, got {sum(g):.12g}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.gamma1, self.gamma2, self.gamma3)

    def active(self) -> tuple[bool, bool, bool]:
        return tuple(g > 0 for g in self.as_tuple())


def _pad(p: np.ndarray, q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = max(len(p), len(q))
    return np.pad(p, (0, n - len(p))), np.pad(q, (0, n - len(q)))


def jsd(p, q) -> float:
    """Jensen-Shannon divergence in nats; the shorter vector is zero-padded."""
    p, q = _pad(np.asarray(p, dtype=np.float64), np.asarray(q, dtype=np.float64))
    s = p + q
    with np.errstate(divide="ignore", invalid="ignore"):
        tp = np.where(p > 0, p * np.log(2.0 * p / s), 0.0)
        tq = np.where(q > 0, q * np.log(2.0 * q / s), 0.0)
    val = 0.5 * tp.sum() + 0.5 * tq.sum()
    return float(min(max(val, 0.0), LN2))


def _align_tail(p: np.ndarray, q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # The last entry of every feature vector is a remainder bucket (unreachable
    # pairs, or 1 - sum). Pad the bodies so the buckets line up with each other.
    if len(p) == len(q):
        return p, q
    bp, bq = _pad(p[:-1], q[:-1])
    return np.append(bp, p[-1]), np.append(bq, q[-1])


def normalized_jsd(p: np.ndarray, q: np.ndarray) -> float:
    return math.sqrt(min(jsd(*_align_tail(p, q)) / LN2, 1.0))


def dissimilarity_from_features(f1: GraphFeatures, f2: GraphFeatures, weights: DissimWeights = DissimWeights()) -> float:
    pairs = ((f1.distance, f2.distance), (f1.clustering, f2.clustering), (f1.centrality, f2.centrality))
    # zero-weight terms are skipped, so their features may be absent
    return float(sum(w * normalized_jsd(p, q) for w, (p, q) in zip(weights.as_tuple(), pairs) if w > 0))


def dissimilarity(g1: Graph, g2: Graph, weights: DissimWeights = DissimWeights(), damping: float = DEFAULT_DAMPING) -> float:
    if g1.n == 0 or g2.n == 0:
        raise ValueError("dissimilarity needs nonempty graphs")
    which = weights.active()
    return dissimilarity_from_features(graph_features(g1, damping, which), graph_features(g2, damping, which), weights)
