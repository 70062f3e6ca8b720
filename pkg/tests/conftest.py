import numpy as np
import pytest

from zetasing.lagrangian import LagrangianPair
from zetasing.spectral_data import EigenvalueSpec


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def example3():
    nu = 0.7
    return (EigenvalueSpec.from_nus([nu], q0=1),
            LagrangianPair([[0, 1], [-1, 0]], np.eye(2), 1))


@pytest.fixture
def example4():
    nu = 0.7
    return (EigenvalueSpec.from_nus([nu], q0=1),
            LagrangianPair([[-1, 1], [0, 0]], [[0, 0], [1, -1]], 1))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
