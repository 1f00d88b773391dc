"""Shared fixtures and reporting hooks for the suite.

All gas fixtures use one small-rational parameter set so frozen reference
values in the tests stay legible.
"""
import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from thermogeom import Berthelot, GasParameters, IdealGas, VanDerWaals

settings.register_profile(
    "suite",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

PARAMS = GasParameters(a=1.5, b=0.2, r_gas=2.0, cv0=2.5)


@pytest.fixture(scope="session")
def params():
    return PARAMS


@pytest.fixture(scope="session")
def ideal_model():
    return IdealGas(PARAMS)


@pytest.fixture(scope="session")
def vdw_model():
    return VanDerWaals(PARAMS)


@pytest.fixture(scope="session")
def berthelot_model():
    return Berthelot(PARAMS)


@pytest.fixture
def rng():
    return np.random.default_rng(20230817)


def pytest_runtest_logreport(report):
    # One visible status line per acceptance criterion, regardless of capture.
    if report.when != "call":
        return
    marker = "test_acceptance.py::test_criterion_"
    idx = report.nodeid.find(marker)
    if idx < 0:
        return
    tail = report.nodeid[idx + len(marker):]
    number = tail.split("_", 1)[0]
    status = "PASS" if report.passed else "FAIL"
    print(f"\nCRITERION {int(number)}: {status}")
