import os
import random

import pytest

from superell import make_field
from superell.polyring import Poly


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running checks, enabled with SUPERELL_SLOW_TESTS=1")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("SUPERELL_SLOW_TESTS") == "1":
        return
    skip = pytest.mark.skip(reason="set SUPERELL_SLOW_TESTS=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def F5():
    return make_field(5, 1)


@pytest.fixture(scope="session")
def F7():
    return make_field(7, 1)


@pytest.fixture(scope="session")
def F25():
    return make_field(5, 2)


@pytest.fixture
def rng():
    return random.Random(20260808)


def poly(F, *ints) -> Poly:
    """Polynomial from low-to-high integer coefficients."""
    return Poly.from_ints(F, ints)


def rand_poly(F, max_deg, rng) -> Poly:
    return Poly(F, tuple(F.elem_at(rng.randrange(F.q)) for _ in range(max_deg + 1)))
