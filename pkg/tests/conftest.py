import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from graphlimits import Graph


def random_graph(rng: np.random.Generator, n: int, p: float = 0.5) -> Graph:
    upper = np.triu(rng.random((n, n)) < p, 1)
    return Graph(upper | upper.T)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# acceptance lines collected by test_acceptance.py and printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
