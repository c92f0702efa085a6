import pytest

from topolab import zoo


@pytest.fixture(scope="session")
def spaces():
    return zoo()


@pytest.fixture
def sierpinski(spaces):
    return spaces["sierpinski"]


@pytest.fixture
def discrete2(spaces):
    return spaces["discrete2"]


@pytest.fixture
def vee(spaces):
    return spaces["vee"]


@pytest.fixture
def diamond4(spaces):
    return spaces["diamond"]
