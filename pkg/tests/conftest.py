import numpy as np
import pytest

from mahlerlab import convex2d as c2
from mahlerlab import pentagon as pg

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def square():
    return c2.square()


@pytest.fixture
def triangle():
    return pg.build(pg.PentagonParams(pg.Q_MIN, pg.B_MAX))


@pytest.fixture
def p0():
    return pg.build(pg.PentagonParams(0.0, 3 ** -0.25))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
