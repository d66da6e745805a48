import pytest

from repgf.fields import make_field
from repgf.groups import AbelianGroupSpec, group_from_permutations, semidirect, subgroup


@pytest.fixture(scope="session")
def gf3():
    return make_field(3)


@pytest.fixture(scope="session")
def gf5():
    return make_field(5)


@pytest.fixture(scope="session")
def gf7():
    return make_field(7)


@pytest.fixture(scope="session")
def gf25():
    return make_field(5, 2, [1, 1, 1])


def c2():
    return group_from_permutations([[1, 0]])


@pytest.fixture(scope="session")
def s3():
    return semidirect(AbelianGroupSpec((3,)), c2(), [[[-1]]])


@pytest.fixture(scope="session")
def d4():
    return semidirect(AbelianGroupSpec((4,)), c2(), [[[-1]]])


@pytest.fixture(scope="session")
def c4():
    return semidirect(AbelianGroupSpec((4,)), group_from_permutations([]), [])


@pytest.fixture(scope="session")
def c3():
    return semidirect(AbelianGroupSpec((3,)), group_from_permutations([]), [])


@pytest.fixture(scope="session")
def c2g():
    return semidirect(AbelianGroupSpec((2,)), group_from_permutations([]), [])
