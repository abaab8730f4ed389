import random

import pytest

from demazure.realization import permutation_realization


@pytest.fixture(scope="session")
def perm4():
    return permutation_realization(4)


@pytest.fixture(scope="session")
def perm5():
    return permutation_realization(5)


@pytest.fixture()
def rng():
    return random.Random(20240817)
