import math
import os

os.environ["ENV"] = "unittest"
##We need to do this before importing config

import pytest

from kepler_stieltjes.kepler import make_orbit

#
# Orbits
#


@pytest.fixture(scope="session")
def parabolic():
    return make_orbit(1.0)


@pytest.fixture(scope="session")
def circular():
    return make_orbit(0.0)


@pytest.fixture(scope="session")
def table_one():
    """The divergent resummation case: eps = 9/10, z = 10 exp(i pi/3)."""
    return make_orbit(0.9), 10.0 * complex(math.cos(math.pi / 3), math.sin(math.pi / 3))
