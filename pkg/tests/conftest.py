from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from cyclepack.harness.generators import theta
from cyclepack.planar import Cycle

settings.register_profile(
    "repo",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
    derandomize=True,
)
settings.load_profile("repo")


@pytest.fixture
def theta_graph():
    return theta()


@pytest.fixture
def theta_cycles(theta_graph):
    g = theta_graph
    return {
        "C12": Cycle.from_edges(g, [0, 1]),
        "C23": Cycle.from_edges(g, [1, 2]),
        "C13": Cycle.from_edges(g, [0, 2]),
    }


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(LINES):
            terminalreporter.write_line(LINES[k])
