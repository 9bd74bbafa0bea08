import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from d2drelay import SystemConfig, estimate_outage  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture
def table2():
    """Evaluation setup with rho = 0.75 and r_ct = r_dt = 1."""
    return SystemConfig()


@functools.lru_cache(maxsize=None)
def cached_estimate(trials, seed, **overrides):
    return estimate_outage(SystemConfig(**overrides), trials, seed, workers=4)


@pytest.fixture
def mc():
    return cached_estimate


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
