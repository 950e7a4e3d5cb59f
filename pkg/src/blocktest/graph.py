"""Undirected simple graphs on dense integer ids.

A :class:`Graph` is immutable once built. Adjacency is held in CSR form
(``indptr``/``indices``) with each neighbor list sorted, plus an ``(m, 2)``
edge array with ``i < j`` rows in lexicographic order. ``edge_index`` maps
every CSR slot to the row of the edge it belongs to, which is what the
betweenness kernel accumulates into.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from . import _kernels

UNREACHABLE = -1


class Graph:
    __slots__ = ("n", "edges", "indptr", "indices", "edge_index", "_deg")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if arr.size:
            if arr.min() < 0 or arr.max() >= n:
                raise ValueError("edge endpoint out of range")
            if np.any(arr[:, 0] == arr[:, 1]):
                raise ValueError("self-loops are not allowed")
            arr = np.sort(arr, axis=1)
            order = np.lexsort((arr[:, 1], arr[:, 0]))
            arr = arr[order]
            if np.any(np.all(arr[1:] == arr[:-1], axis=1)):
                raise ValueError("duplicate edge")
        self.n = n
        self.edges = arr
        self.edges.setflags(write=False)
        self._build_csr()

    @classmethod
    def from_edges_unchecked(cls, n: int, edges: np.ndarray) -> "Graph":
        """Build from an already canonical (sorted, unique, i<j) edge array."""
        g = cls.__new__(cls)
        g.n = int(n)
        g.edges = np.ascontiguousarray(edges, dtype=np.int64).reshape(-1, 2)
        g.edges.setflags(write=False)
        g._build_csr()
        return g

    def _build_csr(self) -> None:
        m = len(self.edges)
        src = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        dst = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        eid = np.concatenate([np.arange(m), np.arange(m)])
        order = np.lexsort((dst, src))
        self._deg = np.bincount(src, minlength=self.n).astype(np.int64)
        self.indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self._deg, out=self.indptr[1:])
        self.indices = dst[order].astype(np.int64)
        self.edge_index = eid[order].astype(np.int64)
        for a in (self._deg, self.indptr, self.indices, self.edge_index):
            a.setflags(write=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> np.ndarray:
        return self._deg

    def _check(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"vertex {i} out of range for graph with {self.n} vertices")
        return int(i)

    def neighbors(self, i: int) -> np.ndarray:
        i = self._check(i)
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    @property
    def adjacency(self) -> list[list[int]]:
        return [self.indices[self.indptr[i]:self.indptr[i + 1]].tolist() for i in range(self.n)]

    def has_edge(self, i: int, j: int) -> bool:
        nb = self.neighbors(i)
        k = np.searchsorted(nb, j)
        return bool(k < len(nb) and nb[k] == j)

    def to_sparse(self) -> sp.csr_matrix:
        data = np.ones(len(self.indices), dtype=np.float64)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.edges.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def degree(g: Graph, i: int) -> int:
    i = g._check(i)
    return int(g.degrees[i])


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop distances from ``source``; unreachable vertices hold ``UNREACHABLE``."""
    source = g._check(source)
    dist = np.full(g.n, UNREACHABLE, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    indptr, indices = g.indptr, g.indices
    while queue:
        v = queue.popleft()
        d = dist[v] + 1
        for w in indices[indptr[v]:indptr[v + 1]]:
            if dist[w] == UNREACHABLE:
                dist[w] = d
                queue.append(w)
    return dist


def connected_components(g: Graph) -> list[list[int]]:
    """Components as ascending vertex lists, ordered by their smallest vertex."""
    if g.n == 0:
        return []
    ncomp, labels = csgraph.connected_components(g.to_sparse(), directed=False)
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(labels.tolist()):
        groups.setdefault(c, []).append(v)
    return sorted(groups.values(), key=lambda vs: vs[0])


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def induced_subgraph(g: Graph, vs: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph on ``vs``; new ids follow ascending old ids."""
    keep = sorted(set(int(v) for v in vs))
    if not keep:
        raise ValueError("cannot induce a subgraph on an empty vertex set")
    for v in keep:
        g._check(v)
    mapping = {old: new for new, old in enumerate(keep)}
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[keep] = np.arange(len(keep))
    if g.m:
        a, b = remap[g.edges[:, 0]], remap[g.edges[:, 1]]
        mask = (a >= 0) & (b >= 0)
        # remap is monotone, so lexicographic order survives
        sub = np.stack([a[mask], b[mask]], axis=1)
    else:
        sub = np.empty((0, 2), dtype=np.int64)
    return Graph.from_edges_unchecked(len(keep), sub), mapping


def triangle_count_per_edge(g: Graph) -> np.ndarray:
    """Common-neighbor count for each row of ``g.edges``."""
    alive = np.ones(g.m, dtype=np.bool_)
    return _kernels.edge_triangles(g.indptr, g.indices, g.edge_index, alive, g.edges)


def triangles_per_vertex(g: Graph) -> np.ndarray:
    return _kernels.vertex_triangles(g.indptr, g.indices, g.n)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Isomorphic copy in which vertex ``v`` becomes ``perm[v]``."""
    perm = np.asarray(perm, dtype=np.int64)
    return Graph(g.n, perm[g.edges] if g.m else [])


def check_partition(labels: Sequence[int], n: int | None = None) -> np.ndarray:
    """Validate a vertex partition (contiguous ids ``0..K-1``) and return it as an array."""
    arr = np.asarray(labels, dtype=np.int64)
    if n is not None and len(arr) != n:
        raise ValueError(f"partition covers {len(arr)} vertices, expected {n}")
    if arr.size and (arr.min() < 0 or set(np.unique(arr).tolist()) != set(range(arr.max() + 1))):
        raise ValueError("community ids must be contiguous 0..K-1")
    return arr


def canonical_labels(labels: Sequence) -> np.ndarray:
    """Renumber arbitrary community ids to 0..K-1 in order of first occurrence."""
    seen: dict = {}
    return np.array([seen.setdefault(x, len(seen)) for x in labels], dtype=np.int64)


def partition_from_sets(n: int, sets: Iterable[Iterable[int]]) -> np.ndarray:
    """Labels from vertex sets, numbered by ascending smallest member."""
    groups = sorted((sorted(s) for s in sets), key=lambda s: s[0])
    labels = np.full(n, -1, dtype=np.int64)
    for k, s in enumerate(groups):
        if np.any(labels[s] >= 0):
            raise ValueError("vertex sets overlap")
        labels[s] = k
    if np.any(labels < 0):
        raise ValueError("vertex sets do not cover every vertex")
    return labels
