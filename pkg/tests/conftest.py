import os
import random

import pytest
from hypothesis import HealthCheck, settings

from quasigraphic.graph import Multigraph

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running exhaustive searches")


def random_multigraph(rng: random.Random, max_vertices=5, max_edges=7, loops=True, name="r"):
    n = rng.randint(1, max_vertices)
    m = rng.randint(0, max_edges)
    edges = []
    for i in range(m):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v and not loops:
            continue
        edges.append((f"x{i}", min(u, v), max(u, v)))
    return Multigraph(n, tuple(edges), name)


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES: list = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line; the lines are repeated in the terminal summary."""

    def report(criterion, ok, detail=""):
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
