import random

import pytest

from grasswt.gf import field_from_q

# every randomized suite draws from this seed; reports print it
SEED = 20241015


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture(scope="session")
def F2():
    return field_from_q(2)


@pytest.fixture(scope="session")
def F3():
    return field_from_q(3)


@pytest.fixture(scope="session")
def F4():
    return field_from_q(4)


@pytest.fixture(scope="session")
def seed():
    return SEED
