import pytest

from syncmat.harness import build_cerny, build_kari, build_roman, golden_table


@pytest.fixture(scope="session")
def kari():
    return build_kari()


@pytest.fixture(scope="session")
def roman():
    return build_roman()


@pytest.fixture(scope="session")
def cerny4():
    return build_cerny(4)


@pytest.fixture(scope="session")
def kari_s():
    return golden_table("kari").s


@pytest.fixture(scope="session")
def roman_s():
    return golden_table("roman").s
