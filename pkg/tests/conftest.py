import numpy as np
import pytest

from gatedpcc import GateConfig, GateShape, reference_model


@pytest.fixture
def model():
    return reference_model()


@pytest.fixture
def lorentz_b():
    return GateConfig(GateShape.LORENTZIAN, 7.0, 8.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS, key=lambda k: (int(k[0]), k)):
        terminalreporter.write_line(mod.RESULTS[key])
