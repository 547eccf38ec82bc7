import numpy as np
import pytest

from config.settings import load_config
from core.elliptic import CurveParams
from core.elliptic import FParams
from core.rootweyl import preset


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size numerical checks")


@pytest.fixture(scope="session")
def curve():
    return CurveParams(0.3 + 1.1j)


@pytest.fixture(scope="session")
def square_curve():
    return CurveParams(1.0j)


@pytest.fixture(scope="session")
def fp(curve):
    return FParams.from_coords((0.23, 0.31), (0.57, 0.11), curve)


@pytest.fixture(scope="session")
def sl2():
    return preset("sl2")


@pytest.fixture(scope="session")
def a2():
    return preset("a2")


@pytest.fixture(scope="session")
def b2():
    return preset("b2")


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def small_config(monkeypatch):
    monkeypatch.delenv("ELLHECKE_SEED", raising=False)
    monkeypatch.delenv("ELLHECKE_SAMPLES", raising=False)
    return load_config(samples=3)
