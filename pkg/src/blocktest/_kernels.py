"""Compiled inner loops over CSR adjacency.

Every kernel takes an ``alive`` mask indexed by edge id so the same code serves
immutable graphs (all alive) and the edge-deleting work graph used for bisection.
All kernels release the GIL.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True, nogil=True)
def distance_counts(indptr, indices, n):
    """Ordered-pair counts by hop distance.

    Returns ``counts`` of length ``n + 1``: ``counts[d]`` for ``1 <= d < n`` is the
    number of ordered pairs at distance ``d`` and ``counts[n]`` the number of
    ordered unreachable pairs. Sources are processed 64 at a time, one bit each,
    so a level costs one pass over the edges per batch.
    """
    counts = np.zeros(n + 1, dtype=np.int64)
    seen = np.empty(n, dtype=np.uint64)
    frontier = np.empty(n, dtype=np.uint64)
    nxt = np.empty(n, dtype=np.uint64)
    one = np.uint64(1)
    for base in range(0, n, 64):
        width = min(64, n - base)
        seen[:] = 0
        frontier[:] = 0
        for b in range(width):
            bit = one << np.uint64(b)
            seen[base + b] = bit
            frontier[base + b] = bit
        reached = width
        d = 0
        active = True
        while active:
            d += 1
            nxt[:] = 0
            for v in range(n):
                f = frontier[v]
                if f == 0:
                    continue
                for k in range(indptr[v], indptr[v + 1]):
                    nxt[indices[k]] |= f
            active = False
            level = 0
            for v in range(n):
                new = nxt[v] & ~seen[v]
                frontier[v] = new
                if new != 0:
                    seen[v] |= new
                    level += _popcount(new)
                    active = True
            counts[d] += level
            reached += level
        counts[n] += width * n - reached
    return counts


@njit(cache=True, nogil=True)
def edge_betweenness(indptr, indices, edge_index, alive, n_edges, sources):
    """Brandes dependency accumulation onto edges, summed over ``sources``.

    Each unordered pair is seen from both ends, so a full source set yields twice
    the pair-sum betweenness; the caller halves it.
    """
    n = len(indptr) - 1
    eb = np.zeros(n_edges, dtype=np.float64)
    dist = np.empty(n, dtype=np.int64)
    sigma = np.empty(n, dtype=np.float64)
    delta = np.empty(n, dtype=np.float64)
    order = np.empty(n, dtype=np.int64)
    for s in sources:
        dist[:] = -1
        sigma[:] = 0.0
        delta[:] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        head = 0
        tail = 1
        order[0] = s
        while head < tail:
            v = order[head]
            head += 1
            for k in range(indptr[v], indptr[v + 1]):
                if not alive[edge_index[k]]:
                    continue
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    order[tail] = w
                    tail += 1
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
        for idx in range(tail - 1, 0, -1):
            w = order[idx]
            coeff = (1.0 + delta[w]) / sigma[w]
            for k in range(indptr[w], indptr[w + 1]):
                if not alive[edge_index[k]]:
                    continue
                v = indices[k]
                if dist[v] == dist[w] - 1:
                    c = sigma[v] * coeff
                    eb[edge_index[k]] += c
                    delta[v] += c
    return eb


@njit(cache=True, nogil=True)
def edge_triangles(indptr, indices, edge_index, alive, edges):
    """Common live neighbors of each live edge's endpoints (sorted-list merge)."""
    m = len(edges)
    out = np.zeros(m, dtype=np.int64)
    for e in range(m):
        if not alive[e]:
            continue
        i = edges[e, 0]
        j = edges[e, 1]
        a = indptr[i]
        b = indptr[j]
        a_end = indptr[i + 1]
        b_end = indptr[j + 1]
        c = 0
        while a < a_end and b < b_end:
            if not alive[edge_index[a]]:
                a += 1
            elif not alive[edge_index[b]]:
                b += 1
            elif indices[a] < indices[b]:
                a += 1
            elif indices[a] > indices[b]:
                b += 1
            else:
                c += 1
                a += 1
                b += 1
        out[e] = c
    return out


@njit(cache=True, nogil=True)
def vertex_triangles(indptr, indices, n):
    """Triangles through each vertex of a full graph, by marking neighbor sets."""
    out = np.zeros(n, dtype=np.int64)
    mark = np.zeros(n, dtype=np.bool_)
    for v in range(n):
        for k in range(indptr[v], indptr[v + 1]):
            mark[indices[k]] = True
        for k in range(indptr[v], indptr[v + 1]):
            u = indices[k]
            if u <= v:
                continue
            for q in range(indptr[u], indptr[u + 1]):
                w = indices[q]
                if w > u and mark[w]:
                    out[v] += 1
                    out[u] += 1
                    out[w] += 1
        for k in range(indptr[v], indptr[v + 1]):
            mark[indices[k]] = False
    return out


@njit(cache=True, nogil=True)
def reachable(indptr, indices, edge_index, alive, s, t):
    n = len(indptr) - 1
    seen = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    seen[s] = True
    stack[0] = s
    top = 1
    while top > 0:
        top -= 1
        v = stack[top]
        if v == t:
            return True
        for k in range(indptr[v], indptr[v + 1]):
            if alive[edge_index[k]]:
                w = indices[k]
                if not seen[w]:
                    seen[w] = True
                    stack[top] = w
                    top += 1
    return False


@njit(cache=True, nogil=True)
def live_components(indptr, indices, edge_index, alive):
    """Component label per vertex over live edges, numbered by smallest member."""
    n = len(indptr) - 1
    comp = np.full(n, -1, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    label = 0
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = label
        stack[0] = s
        top = 1
        while top > 0:
            top -= 1
            v = stack[top]
            for k in range(indptr[v], indptr[v + 1]):
                if alive[edge_index[k]]:
                    w = indices[k]
                    if comp[w] < 0:
                        comp[w] = label
                        stack[top] = w
                        top += 1
        label += 1
    return comp
