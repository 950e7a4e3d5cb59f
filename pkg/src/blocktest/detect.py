"""Recursive community detection and the synthetic-benchmark sweeps.

A connected (sub)graph is tested against its fitted null; on rejection it is
bisected and each part is processed in turn. Leaves of the resulting tree are
the communities.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .config import DetectConfig
from .gen import DcsbmSpec, derive_seed, fingerprint, sample_dcsbm, sample_theta_adjusted_halfnormal
from .graph import Graph, connected_components, induced_subgraph, partition_from_sets
from .inference import DEGENERATE, TestResult, hypothesis_test
from .partition import bisect

log = logging.getLogger(__name__)

ACCEPTED = "accepted"
SPLIT = "split"
BY_SIZE = "accepted-by-size"
BY_DEPTH = "accepted-max-depth"
ACCEPTED_DEGENERATE = "accepted-degenerate"
COMPONENTS = "components"


@dataclass
class TreeNode:
    vertices: list[int]
    depth: int
    status: str
    test: TestResult | None = None
    children: list["TreeNode"] = field(default_factory=list)

    def leaves(self) -> list["TreeNode"]:
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]

    def to_dict(self) -> dict:
        d = {"vertices": self.vertices, "depth": self.depth, "status": self.status}
        if self.test is not None:
            d["test"] = self.test.to_dict()
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d


@dataclass
class DetectionResult:
    partition: np.ndarray
    tree: TreeNode

    @property
    def n_communities(self) -> int:
        return int(self.partition.max()) + 1 if len(self.partition) else 0

    def communities(self) -> list[list[int]]:
        return [leaf.vertices for leaf in sorted(self.tree.leaves(), key=lambda t: t.vertices[0])]


def _process(g: Graph, vertices: list[int], depth: int, cfg: DetectConfig) -> TreeNode:
    if len(vertices) < cfg.min_test_size:
        return TreeNode(vertices, depth, BY_SIZE)
    if depth >= cfg.max_depth:
        return TreeNode(vertices, depth, BY_DEPTH)
    sub, _ = induced_subgraph(g, vertices)
    seed = derive_seed(cfg.seed, fingerprint(vertices))
    res = hypothesis_test(sub, cfg, seed, level=cfg.level_at(depth))
    log.debug("depth %d, %d vertices: D=%.5f p=%.4g", depth, len(vertices), res.mean_dissim, res.pvalue)
    if res.status == DEGENERATE:
        return TreeNode(vertices, depth, ACCEPTED_DEGENERATE, res)
    if not res.reject:
        return TreeNode(vertices, depth, ACCEPTED, res)
    parts = bisect(sub, cfg.bisect, seed)
    node = TreeNode(vertices, depth, SPLIT, res)
    for part in parts:
        node.children.append(_process(g, [vertices[v] for v in part], depth + 1, cfg))
    return node


def detect_communities(g: Graph, cfg: DetectConfig | None = None) -> DetectionResult:
    cfg = cfg or DetectConfig()
    if g.n == 0:
        raise ValueError("cannot detect communities in an empty graph")
    comps = connected_components(g)
    if len(comps) == 1:
        tree = _process(g, comps[0], 0, cfg)
    else:
        tree = TreeNode(list(range(g.n)), 0, COMPONENTS)
        tree.children = [_process(g, c, 0, cfg) for c in comps]
    partition = partition_from_sets(g.n, [leaf.vertices for leaf in tree.leaves()])
    return DetectionResult(partition, tree)


EXPERIMENTS = ("balanced_w12", "unbalanced_n1", "unbalanced_w12")
W12_GRID = tuple(round(0.02 * k, 2) for k in range(1, 11))
N1_GRID = tuple(range(50, 101, 10))


@dataclass(frozen=True)
class SweepSpec:
    experiment: str
    runs: int = 100
    n: int = 1000
    w_in: float = 0.2
    w_out: float = 0.02
    n1: int = 100
    grid: tuple | None = None
    seed: int = 0

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; choose from {', '.join(EXPERIMENTS)}")
        if self.runs < 1:
            raise ValueError("runs must be at least 1")

    def values(self) -> tuple:
        if self.grid is not None:
            return tuple(self.grid)
        return N1_GRID if self.experiment == "unbalanced_n1" else W12_GRID

    def block_spec(self, value, theta: np.ndarray) -> DcsbmSpec:
        if self.experiment == "balanced_w12":
            return DcsbmSpec.two_block(self.n // 2, self.n - self.n // 2, self.w_in, value, theta)
        if self.experiment == "unbalanced_n1":
            return DcsbmSpec.two_block(int(value), self.n - int(value), self.w_in, self.w_out, theta)
        return DcsbmSpec.two_block(self.n1, self.n - self.n1, self.w_in, value, theta)


@dataclass
class SweepRow:
    param: float
    mean_pvalue: float
    std_pvalue: float
    reject_rate: float
    pvalues: list[float]


def run_sweep(spec: SweepSpec, cfg: DetectConfig | None = None, progress=None) -> list[SweepRow]:
    """Stage-one p-values of fresh two-block graphs at each grid value.

    Run ``r`` at grid index ``k`` draws its degree parameters, graph and test
    from streams keyed by ``(seed, k, r)``.
    """
    cfg = cfg or DetectConfig()
    rows = []
    for k, value in enumerate(spec.values()):
        pvals, rejects = [], []
        for r in range(spec.runs):
            base = derive_seed(spec.seed, k, r)
            theta = sample_theta_adjusted_halfnormal(spec.n, derive_seed(base, 1))
            g, _ = sample_dcsbm(spec.block_spec(value, theta), derive_seed(base, 2))
            res = hypothesis_test(g, cfg, derive_seed(base, 3))
            pvals.append(res.pvalue)
            rejects.append(res.reject)
            if progress:
                progress(value, r, res)
        arr = np.array(pvals)
        rows.append(SweepRow(float(value), float(arr.mean()), float(arr.std(ddof=1)) if len(arr) > 1 else 0.0,
                             float(np.mean(rejects)), pvals))
    return rows
