import pytest

from src.kernel.algebra import get_algebra
from src.kernel.cartan import build_cartan


@pytest.fixture(scope="session")
def a1():
    return build_cartan("A1", "P")


@pytest.fixture(scope="session")
def a1_root():
    return build_cartan("A1", "Q")


@pytest.fixture(scope="session")
def a2():
    return build_cartan("A2", "P")


@pytest.fixture(scope="session")
def U(a1):
    return get_algebra(a1, "full")


@pytest.fixture(scope="session")
def H(a1):
    return get_algebra(a1, "H")
