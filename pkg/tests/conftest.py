import pathlib

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from kreinframes import make_krein_space
from kreinframes.oracle import GenConfig, random_krein

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CORPUS = pathlib.Path(__file__).resolve().parents[1] / "corpus"


@pytest.fixture
def corpus():
    return CORPUS


@pytest.fixture
def d3():
    """diag(1, -1, 1)."""
    return make_krein_space(np.diag([1.0, -1.0, 1.0]))


@pytest.fixture
def d2():
    """diag(1, -1)."""
    return make_krein_space(np.diag([1.0, -1.0]))


def space_from(dim, n_plus, seed, field="real"):
    return random_krein(GenConfig(dim=dim, signature=(n_plus, dim - n_plus), family_size=dim, seed=seed, field=field))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
