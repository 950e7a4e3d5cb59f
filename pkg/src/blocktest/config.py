from __future__ import annotations

import os
from dataclasses import dataclass, field

from .dissim import DissimWeights
from .features import DEFAULT_DAMPING

THREADS_ENV = "BLOCKTEST_THREADS"


@dataclass(frozen=True)
class BisectConfig:
    beta1: float = 0.5
    beta2: float = 0.5
    # exact betweenness up to this many vertices, sampled BFS sources above it
    sample_threshold: int = 2000
    sample_sources: int = 500

    def __post_init__(self):
        if self.beta1 < 0 or self.beta2 < 0 or self.beta1 + self.beta2 <= 0:
            raise ValueError("beta weights must be nonnegative with a positive sum")


@dataclass(frozen=True)
class DetectConfig:
    significance: float = 0.05
    surrogates: int = 50
    weights: DissimWeights = field(default_factory=DissimWeights)
    bisect: BisectConfig = field(default_factory=BisectConfig)
    min_test_size: int = 4
    max_depth: int = 32
    seed: int = 0
    damping: float = DEFAULT_DAMPING
    # cap on pairwise surrogate dissimilarities fed to the KDE; None keeps all
    max_pairs: int | None = None
    bonferroni_by_depth: bool = False
    threads: int | None = None

    def __post_init__(self):
        if not 0 < self.significance < 1:
            raise ValueError("significance must lie in (0, 1)")
        if self.surrogates < 2:
            raise ValueError("need at least two surrogates")
        if self.min_test_size < 2:
            raise ValueError("min_test_size must be at least 2")
        if not 0 < self.damping < 1:
            raise ValueError("damping must lie in (0, 1)")

    def level_at(self, depth: int) -> float:
        return self.significance / (depth + 1) if self.bonferroni_by_depth else self.significance


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(threads))
