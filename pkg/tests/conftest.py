import random

import pytest

from cokahler.samples import random_finite_order

SWEEP_SEED = 20261014
SWEEP_SIZE = 100


def make_sweep(seed=SWEEP_SEED, size=SWEEP_SIZE):
    rng = random.Random(seed)
    return [random_finite_order(rng) for _ in range(size)]


@pytest.fixture(scope="session")
def sweep():
    """100 random finite-order monodromies (2n <= 8) with a preserved Kahler form."""
    return make_sweep()


@pytest.fixture(scope="session")
def small_sweep():
    return make_sweep(seed=7, size=25)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
