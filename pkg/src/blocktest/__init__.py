"""Community detection by recursive hypothesis tests against a degree-corrected Erdos-Renyi null."""

from .config import BisectConfig, DetectConfig
from .detect import DetectionResult, SweepSpec, detect_communities, run_sweep
from .dissim import DissimWeights, dissimilarity, jsd
from .gen import DcsbmSpec, sample_dcerg, sample_dcsbm, sample_theta_adjusted_halfnormal
from .graph import Graph
from .inference import TestResult, fit_dcerg, hypothesis_test
from .io import load_dataset, read_edgelist
from .metrics import adjusted_rand, f1_score, pair_counts
from .partition import bisect

__version__ = "0.1.0"

__all__ = [
    "BisectConfig",
    "DcsbmSpec",
    "DetectConfig",
    "DetectionResult",
    "DissimWeights",
    "Graph",
    "SweepSpec",
    "TestResult",
    "adjusted_rand",
    "bisect",
    "detect_communities",
    "dissimilarity",
    "f1_score",
    "fit_dcerg",
    "hypothesis_test",
    "jsd",
    "load_dataset",
    "pair_counts",
    "read_edgelist",
    "run_sweep",
    "sample_dcerg",
    "sample_dcsbm",
    "sample_theta_adjusted_halfnormal",
]
