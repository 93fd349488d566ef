import pytest

from fqcover import FieldSpec


@pytest.fixture(scope="session")
def F2():
    return FieldSpec(2)


@pytest.fixture(scope="session")
def F3():
    return FieldSpec(3)


@pytest.fixture(scope="session")
def F4():
    return FieldSpec(2, 2)
