import math

import numpy as np
import pytest
from hypothesis import strategies as st

GAMMAS = (1.0, 1.25, 2.0, 5.0)
PHIS = tuple(k * math.pi / 12 for k in range(7))


@st.composite
def betas(draw, max_speed=0.99):
    """Velocities with |beta| <= max_speed in a uniformly drawn direction."""
    v = draw(st.tuples(*[st.floats(-1, 1, allow_nan=False)] * 3))
    v = np.array(v)
    n = np.linalg.norm(v)
    if n < 1e-3:
        v, n = np.array([1.0, 0.0, 0.0]), 1.0
    speed = draw(st.floats(0.0, max_speed))
    return speed * v / n


def speed_of(gamma):
    return math.sqrt(1.0 - 1.0 / gamma**2)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
