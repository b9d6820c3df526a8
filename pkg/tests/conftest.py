import random

import pytest


@pytest.fixture
def rng():
    return random.Random(20250814)


TREFOIL = [[-1, 1], [0, -1]]
FIGURE8 = [[1, 1], [0, -1]]


@pytest.fixture
def trefoil():
    return [row[:] for row in TREFOIL]


@pytest.fixture
def figure8():
    return [row[:] for row in FIGURE8]
