import pytest

from alcovelab import root_datum


@pytest.fixture
def gl2():
    return root_datum("gl", 2)


@pytest.fixture
def gl3():
    return root_datum("gl", 3)


@pytest.fixture
def gl4():
    return root_datum("gl", 4)


@pytest.fixture
def gsp4():
    return root_datum("gsp", 2)
