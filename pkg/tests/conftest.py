import math

import hypothesis.strategies as st
import numpy as np
import pytest

from xy_discord.xstate import XState

BELL = XState(a=0.5, b=0.0, d=0.5, z=0.0, f=0.5)
PRODUCT = XState(a=0.0, b=0.0, d=1.0, z=0.0, f=0.0)
MIXED = XState(a=0.25, b=0.25, d=0.25, z=0.0, f=0.0)


@st.composite
def x_states(draw):
    """Valid X states: unit trace, |z| <= b and f^2 <= a d."""
    w = [draw(st.floats(0.0, 1.0)) for _ in range(3)]
    total = sum(w)
    if total < 1e-6:
        w, total = [1.0, 1.0, 1.0], 3.0
    a, two_b, d = (x / total for x in w)
    b = two_b / 2
    z = b * draw(st.floats(-1.0, 1.0))
    f = math.sqrt(a * d) * draw(st.floats(-1.0, 1.0))
    return XState(a=a, b=b, d=d, z=z, f=f)


def random_x_states(n, seed=0):
    """Deterministic batch of valid X states with a spread of shapes."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(n):
        alpha = [0.3, 1.0, 3.0][k % 3]
        a, two_b, d = rng.dirichlet([alpha] * 3)
        b = two_b / 2
        out.append(XState(a=float(a), b=float(b), d=float(d),
                          z=float(b * rng.uniform(-1, 1)), f=float(math.sqrt(a * d) * rng.uniform(-1, 1))))
    return out


@pytest.fixture
def bell():
    return BELL


@pytest.fixture
def product():
    return PRODUCT
