import numpy as np
import pytest

from modules.lie import build_algebra


@pytest.fixture(scope='session')
def sp4():
    return build_algebra('C', 2)


@pytest.fixture(scope='session')
def sp6():
    return build_algebra('C', 3)


@pytest.fixture(scope='session')
def sp8():
    return build_algebra('C', 4)


@pytest.fixture(scope='session')
def sl2():
    return build_algebra('A', 2)


@pytest.fixture(scope='session')
def sl3():
    return build_algebra('A', 3)


@pytest.fixture(scope='session')
def sl4():
    return build_algebra('A', 4)


@pytest.fixture
def rng():
    return np.random.default_rng(20)
