import pytest

from sepgraph import build_surface
from sepgraph.mcg import generators


@pytest.fixture(scope="session")
def torus():
    return build_surface((1, 1))


@pytest.fixture(scope="session")
def s21():
    return build_surface((2, 1))


@pytest.fixture(scope="session")
def s31():
    return build_surface((3, 1))


@pytest.fixture(scope="session")
def gens21():
    return generators((2, 1))


@pytest.fixture(scope="session")
def gens31():
    return generators((3, 1))
