"""Vertex-level structural distributions: hop distances, clustering, alpha-centrality.

Each distribution is a plain float array summing to one. Nothing here touches
an eigensolver; centrality comes from fixed-point iteration, the rest from BFS
and triangle counting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph, triangles_per_vertex

DEFAULT_DAMPING = 0.95
CENTRALITY_TOL = 1e-10
MAX_ITER = 100_000


def distance_distribution(g: Graph) -> np.ndarray:
    """Fraction of ordered vertex pairs at each hop distance 1..diameter.

    A trailing entry carries the fraction of ordered pairs with no path, so the
    vector sums to one for disconnected graphs too.
    """
    n = g.n
    if n < 2:
        raise ValueError("distance distribution needs at least two vertices")
    counts = _kernels.distance_counts(g.indptr, g.indices, n)
    reach = counts[1:n]
    nz = np.flatnonzero(reach)
    diameter = int(nz[-1]) + 1 if nz.size else 0
    total = float(n) * (n - 1)
    out = np.empty(diameter + 1)
    out[:diameter] = reach[:diameter] / total
    out[diameter] = counts[n] / total
    return out


def clustering_coefficients(g: Graph) -> np.ndarray:
    k = g.degrees.astype(np.float64)
    tri = triangles_per_vertex(g).astype(np.float64)
    out = np.zeros(g.n)
    ok = k >= 2
    out[ok] = 2.0 * tri[ok] / (k[ok] * (k[ok] - 1.0))
    return out


def _sorted_with_remainder(values: np.ndarray) -> np.ndarray:
    # values must lie in [0, 1] so the remainder is nonnegative
    n = len(values)
    pi = np.sort(values)
    out = np.empty(n + 1)
    out[:n] = pi / n
    out[n] = max(n - pi.sum(), 0.0) / n
    return out


def clustering_distribution(g: Graph) -> np.ndarray:
    if g.n == 0:
        raise ValueError("empty graph")
    return _sorted_with_remainder(clustering_coefficients(g))


def default_alpha(g: Graph, damping: float = DEFAULT_DAMPING) -> float:
    """``damping / k_max``; any positive value works for an edgeless graph."""
    kmax = int(g.degrees.max()) if g.n else 0
    return damping / kmax if kmax else damping


def alpha_centrality(g: Graph, alpha: float | None = None) -> np.ndarray:
    """Fixed point of ``x = alpha * A x + 1`` by iteration from ``x = 1``.

    ``alpha * k_max < 1`` bounds the spectral radius of ``alpha * A`` below one,
    which makes the iteration a contraction.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    if alpha is None:
        alpha = default_alpha(g)
    kmax = int(g.degrees.max())
    if not alpha > 0 or alpha * kmax >= 1:
        raise ValueError(f"alpha={alpha} outside (0, 1/k_max) with k_max={kmax}")
    x = np.ones(g.n)
    if g.m == 0:
        return x
    a = g.to_sparse()
    for _ in range(MAX_ITER):
        nxt = alpha * (a @ x) + 1.0
        if np.max(np.abs(nxt - x)) < CENTRALITY_TOL:
            return nxt
        x = nxt
    raise RuntimeError("alpha-centrality iteration did not converge")


def centrality_distribution(g: Graph, alpha: float | None = None) -> np.ndarray:
    x = alpha_centrality(g, alpha)
    return _sorted_with_remainder(x / x.max())


@dataclass(frozen=True)
class GraphFeatures:
    distance: np.ndarray | None
    clustering: np.ndarray | None
    centrality: np.ndarray | None


def graph_features(g: Graph, damping: float = DEFAULT_DAMPING, which=(True, True, True)) -> GraphFeatures:
    """The three distributions, with alpha chosen per graph as ``damping / k_max``.

    ``which`` switches individual distributions off (left as ``None``) when
    their dissimilarity weight is zero.
    """
    want_l, want_c, want_a = which
    return GraphFeatures(
        distance_distribution(g) if want_l else None,
        clustering_distribution(g) if want_c else None,
        centrality_distribution(g, default_alpha(g, damping)) if want_a else None,
    )
