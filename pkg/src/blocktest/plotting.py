"""Figures for sweeps and detection results. Imports matplotlib lazily with the Agg backend."""

from __future__ import annotations

import math

import numpy as np


class MissingExtra(ImportError):
    """matplotlib is not installed."""


def _plt():
    try:
        import matplotlib
    except ImportError as exc:  # pragma: no cover - exercised only without the extra
        raise MissingExtra("figures need matplotlib: pip install 'blocktest[plot]'") from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams.update({"font.size": 10, "axes.spines.top": False, "axes.spines.right": False})
    return plt


PARAM_LABELS = {
    "balanced_w12": r"$w_{12}$",
    "unbalanced_w12": r"$w_{12}$",
    "unbalanced_n1": r"$n_1$",
}


def plot_sweep(rows, experiment: str, path, significance: float = 0.05) -> None:
    """Mean p-value with one-standard-deviation bars and the significance line."""
    plt = _plt()
    x = [r.param for r in rows]
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    ax.errorbar(x, [r.mean_pvalue for r in rows], yerr=[r.std_pvalue for r in rows], fmt="o-", ms=4, capsize=3, color="k")
    ax.axhline(significance, ls="--", color="tab:red", lw=1)
    ax.set_xlabel(PARAM_LABELS.get(experiment, "parameter"))
    ax.set_ylabel("P-value")
    ax.set_ylim(-0.02, 1.02)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_adjacency(g, partition, path, title: str | None = None) -> None:
    """Adjacency matrix with rows and columns grouped by community."""
    plt = _plt()
    partition = np.asarray(partition)
    order = np.lexsort((np.arange(g.n), partition))
    pos = np.empty(g.n, dtype=np.int64)
    pos[order] = np.arange(g.n)
    fig, ax = plt.subplots(figsize=(4, 4))
    if g.m:
        i, j = pos[g.edges[:, 0]], pos[g.edges[:, 1]]
        size = max(0.2, 2000.0 / g.n)
        ax.scatter(np.concatenate([i, j]), np.concatenate([j, i]), s=size, marker="s", c="k", linewidths=0)
    bounds = np.flatnonzero(np.diff(partition[order])) + 0.5
    for b in bounds:
        ax.axhline(b, color="tab:red", lw=0.6)
        ax.axvline(b, color="tab:red", lw=0.6)
    ax.set_xlim(-0.5, g.n - 0.5)
    ax.set_ylim(g.n - 0.5, -0.5)
    ax.set_aspect("equal")
    ax.set_xticks([])
    ax.set_yticks([])
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_division(g, partition, path, vertex_labels=None, truth=None) -> None:
    """Vertices on a circle per community; marker shape shows the ground truth when given."""
    plt = _plt()
    partition = np.asarray(partition)
    k = int(partition.max()) + 1
    xy = np.zeros((g.n, 2))
    for c in range(k):
        members = np.flatnonzero(partition == c)
        cx, cy = 3.0 * math.cos(2 * math.pi * c / k), 3.0 * math.sin(2 * math.pi * c / k)
        r = 0.25 + 0.12 * math.sqrt(len(members))
        for t, v in enumerate(members):
            a = 2 * math.pi * t / len(members)
            xy[v] = (cx + r * math.cos(a), cy + r * math.sin(a)) if k > 1 else (r * math.cos(a), r * math.sin(a))
    fig, ax = plt.subplots(figsize=(5, 5))
    for i, j in g.edges.tolist():
        ax.plot(xy[[i, j], 0], xy[[i, j], 1], color="0.75", lw=0.5, zorder=1)
    markers = "osD^v<>ph*"
    cmap = plt.get_cmap("tab20")
    groups = np.zeros(g.n, dtype=int) if truth is None else np.asarray(truth)
    for t in np.unique(groups):
        sel = groups == t
        ax.scatter(xy[sel, 0], xy[sel, 1], c=[cmap(int(c) % 20) for c in partition[sel]],
                   marker=markers[int(t) % len(markers)], s=60, edgecolors="k", linewidths=0.5, zorder=2)
    if vertex_labels is not None and g.n <= 60:
        for v in range(g.n):
            ax.annotate(str(vertex_labels[v]), xy[v], fontsize=6, ha="center", va="center", zorder=3)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
