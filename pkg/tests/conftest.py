import random

import pytest

from period2.coeff_rings import RingTower
from period2.fleet import fleet


@pytest.fixture(scope="session")
def fleet_with_schemes():
    members, skipped = fleet(with_schemes=True)
    return members, skipped


@pytest.fixture(scope="session")
def ring11():
    return RingTower(1, 1, 6)


@pytest.fixture(scope="session")
def ring12():
    return RingTower(1, 2, 6)


@pytest.fixture(scope="session")
def ring21():
    return RingTower(2, 1, 6)


@pytest.fixture
def rng():
    return random.Random(20240611)
