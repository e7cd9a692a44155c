import numpy as np
import pytest

from majorunc.unitaries import HADAMARD2, O3

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20171009)


@pytest.fixture
def hadamard():
    return HADAMARD2.astype(complex)


@pytest.fixture
def o3():
    return O3.astype(complex)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
