import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=50, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

EXAMPLE_T = (11, 3, 8, 6, 16, 19, 5, 15, 21, 24)
EXAMPLE_P = (9, 2, 17, 4, 13)


def naive_ct(ranks):
    """Recursive construction straight from the definition.

    Returns ``(root, left, right)`` with 1-based node ids and ``-1`` for NIL.
    """
    n = len(ranks)
    left = [-1] * (n + 1)
    right = [-1] * (n + 1)

    def build(a, b):  # inclusive 1-based range
        if a > b:
            return -1
        v = min(range(a, b + 1), key=lambda j: ranks[j - 1])
        left[v] = build(a, v - 1)
        right[v] = build(v + 1, b)
        return v

    return build(1, n), left, right


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def example():
    return EXAMPLE_T, EXAMPLE_P


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LOG: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(ACCEPTANCE_LOG):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
