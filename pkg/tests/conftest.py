import pytest

from mobconj import catalog


@pytest.fixture(scope="session")
def arrangements():
    return catalog.arrangements()


@pytest.fixture(scope="session")
def matroids():
    return catalog.matroids()


@pytest.fixture
def triangle(arrangements):
    return arrangements["triangle"]
