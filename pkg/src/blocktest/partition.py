"""Divisive bisection: delete the edge with the highest inter-community score until
the graph falls apart.

The score of an edge is ``beta1 * B~ - beta2 * C`` where ``B~`` is edge
betweenness min-max scaled over the live edges and ``C`` is the edge
clustering coefficient ``triangles / min(k_i - 1, k_j - 1)``. Scores are
recomputed from scratch after every deletion.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .config import BisectConfig
from .gen import make_rng
from .graph import Graph

TIE_TOL = 1e-9


class WorkGraph:
    """A :class:`Graph` whose edges can be deleted; edge ids stay those of the base graph."""

    def __init__(self, g: Graph):
        self.base = g
        self.alive = np.ones(g.m, dtype=np.bool_)
        self.degrees = g.degrees.copy()

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return int(self.alive.sum())

    def live_edges(self) -> np.ndarray:
        return np.flatnonzero(self.alive)

    def delete(self, e: int) -> None:
        if not self.alive[e]:
            raise ValueError(f"edge {e} already deleted")
        self.alive[e] = False
        i, j = self.base.edges[e]
        self.degrees[i] -= 1
        self.degrees[j] -= 1

    def endpoints_connected(self, e: int) -> bool:
        i, j = self.base.edges[e]
        g = self.base
        return bool(_kernels.reachable(g.indptr, g.indices, g.edge_index, self.alive, i, j))

    def components(self) -> list[list[int]]:
        g = self.base
        comp = _kernels.live_components(g.indptr, g.indices, g.edge_index, self.alive)
        groups: dict[int, list[int]] = {}
        for v, c in enumerate(comp.tolist()):
            groups.setdefault(c, []).append(v)
        return [groups[c] for c in sorted(groups)]

    def snapshot(self) -> Graph:
        return Graph.from_edges_unchecked(self.n, self.base.edges[self.alive])


def _view(g) -> WorkGraph:
    return g if isinstance(g, WorkGraph) else WorkGraph(g)


def _sources(n: int, cfg: BisectConfig | None, seed: int) -> tuple[np.ndarray, float]:
    if cfg is None or n <= cfg.sample_threshold or cfg.sample_sources >= n:
        return np.arange(n, dtype=np.int64), 1.0
    chosen = np.sort(make_rng(seed).choice(n, size=cfg.sample_sources, replace=False))
    return chosen.astype(np.int64), n / cfg.sample_sources


def edge_betweenness(g, cfg: BisectConfig | None = None, seed: int = 0) -> np.ndarray:
    """Shortest-path betweenness per base edge id (0 for deleted edges).

    Sums, over unordered vertex pairs, the fraction of shortest paths through
    each edge. Above ``cfg.sample_threshold`` vertices a seeded subset of BFS
    sources is used and rescaled.
    """
    w = _view(g)
    base = w.base
    sources, scale = _sources(base.n, cfg, seed)
    eb = _kernels.edge_betweenness(base.indptr, base.indices, base.edge_index, w.alive, base.m, sources)
    return eb * (0.5 * scale)


def edge_clustering(g) -> np.ndarray:
    """``triangles / min(k_i - 1, k_j - 1)`` per base edge id; 0 where an endpoint has degree 1."""
    w = _view(g)
    base = w.base
    tri = _kernels.edge_triangles(base.indptr, base.indices, base.edge_index, w.alive, base.edges)
    k = w.degrees
    denom = np.minimum(k[base.edges[:, 0]], k[base.edges[:, 1]]) - 1
    out = np.zeros(base.m)
    ok = w.alive & (denom > 0)
    out[ok] = tri[ok] / denom[ok]
    return out


def inter_community_scores(g, cfg: BisectConfig = BisectConfig(), seed: int = 0) -> np.ndarray:
    """Scores for live edges (``-inf`` on deleted ones)."""
    w = _view(g)
    live = w.alive
    if not live.any():
        raise ValueError("graph has no edges")
    b = edge_betweenness(w, cfg, seed)
    lo, hi = b[live].min(), b[live].max()
    b_scaled = (b - lo) / (hi - lo) if hi > lo else np.zeros_like(b)
    scores = cfg.beta1 * b_scaled - cfg.beta2 * edge_clustering(w)
    scores[~live] = -np.inf
    return scores


def bisect(g: Graph, cfg: BisectConfig = BisectConfig(), seed: int = 0) -> list[list[int]]:
    """Delete top-scoring edges until ``g`` disconnects; return every resulting component.

    Ties go to the lowest edge id, i.e. the lexicographically smallest ``(i, j)``.
    """
    if g.n < 2 or g.m == 0:
        raise ValueError("bisect needs a connected graph with at least one edge")
    w = WorkGraph(g)
    if len(w.components()) > 1:
        raise ValueError("bisect needs a connected graph")
    while True:
        scores = inter_community_scores(w, cfg, seed)
        # float accumulation order can split exact ties; treat near-equal as equal
        e = int(np.flatnonzero(scores >= scores.max() - TIE_TOL)[0])
        w.delete(e)
        if not w.endpoints_connected(e):
            return w.components()
