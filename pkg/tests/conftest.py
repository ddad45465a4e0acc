import math

import numpy as np
import pytest

import shiftlab as sl


@pytest.fixture(scope="session")
def flagship():
    """k=3 single-factor map with p(z) = z^2 - 6, alpha = 1."""
    return sl.flagship_map()


@pytest.fixture(scope="session")
def flagship_saddle(flagship):
    a = np.array([math.sqrt(6.0)] * 3)
    return sl.classify_saddle(flagship, a)


@pytest.fixture(scope="session")
def flagship_series(flagship, flagship_saddle):
    return sl.sternberg_series(flagship, flagship_saddle, N=40)


@pytest.fixture(scope="session")
def gp():
    return sl.GreenParams()
