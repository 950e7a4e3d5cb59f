import os

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from blocktest.graph import Graph

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n=0, max_n=64, connected=False):
    """Random simple graphs; density is drawn too so both sparse and dense cases appear."""
    n = draw(st.integers(min_n, max_n))
    p = draw(st.floats(0.0, 1.0))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    edges = np.stack([iu[keep], ju[keep]], axis=1)
    if connected and n > 1:
        # a random spanning tree guarantees connectivity
        perm = rng.permutation(n)
        tree = [(perm[k], perm[rng.integers(0, k)]) for k in range(1, n)]
        edges = np.concatenate([edges, np.sort(np.array(tree), axis=1)])
        edges = np.unique(edges, axis=0)
    return Graph(n, edges.tolist())


def K(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def barbell():
    """Two triangles {0,1,2} and {3,4,5} joined by the bridge (2,3)."""
    return Graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])


@pytest.fixture(scope="session")
def karate():
    from blocktest.io import load_dataset

    return load_dataset("karate")


def fitted_null_graph(n: int, seed: int, w: float = 0.2):
    """A DCERG graph whose parameters were fitted to a one-block benchmark graph.

    The benchmark graph is the block model used in the sweeps with a single
    block (``w_in = w_out = w``), so this is the null end of those sweeps.
    """
    from blocktest.gen import DcsbmSpec, derive_seed, sample_dcsbm, sample_theta_adjusted_halfnormal
    from blocktest.inference import fit_dcerg

    theta = sample_theta_adjusted_halfnormal(n, derive_seed(seed, 1))
    g0, _ = sample_dcsbm(DcsbmSpec([n], [[w]], theta), derive_seed(seed, 2))
    return fit_dcerg(g0).sample(derive_seed(seed, 3))


# one line per acceptance criterion, filled by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
