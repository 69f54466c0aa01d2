import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from grpflow import cases, fvm1d  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance runs")


@pytest.fixture(scope="session")
def wc_reference():
    """Self-reference Woodward-Colella run on 4000 cells (same scheme)."""
    cfg = cases.builtin("woodward-colella")
    frame = fvm1d.run(cfg, cells=4000)[-1]
    return frame


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260808)


def random_states(rng, n, rho=(0.05, 10.0), v=(-3.0, 3.0), p=(0.05, 10.0)):
    return np.stack([rng.uniform(*rho, n), rng.uniform(*v, n), rng.uniform(*p, n)])
