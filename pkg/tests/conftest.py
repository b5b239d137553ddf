import random
from fractions import Fraction

import pytest

from stairdist.geometry import StaircaseInterval, point


def square(a, b):
    return StaircaseInterval.rect(point(a, a), point(b, b))


def rect(r1, r2, s1, s2):
    return StaircaseInterval.rect(point(r1, r2), point(s1, s2))


@pytest.fixture
def thick_l():
    # ([0,4] x [0,3]) union ([0,3] x [0,4])
    return StaircaseInterval.from_antichains([point(0, 0)],
                                             [point(3, 4), point(4, 3)])


@pytest.fixture
def thin_l():
    # ([0,3] x [0,1]) union ([0,1] x [0,3])
    return StaircaseInterval.from_antichains([point(0, 0)],
                                             [point(1, 3), point(3, 1)])


@pytest.fixture
def rng():
    return random.Random(20240817)


def frac(a, b=1):
    return Fraction(a, b)
