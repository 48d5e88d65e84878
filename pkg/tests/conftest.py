import pytest

from qalcove.qbg import QBG


@pytest.fixture(scope="session")
def qbg2():
    return QBG(2)


@pytest.fixture(scope="session")
def qbg3():
    return QBG(3)


@pytest.fixture(scope="session")
def qbg4():
    return QBG(4)
