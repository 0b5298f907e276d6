"""Shared strategies and matrix utilities for the test suite."""

import math

import numpy as np
from hypothesis import strategies as st

from gce.core import StandardForm, is_physical


def rotation(theta: float) -> np.ndarray:
    """Single-mode phase rotation acting on (x, p)."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]])


def squeeze(s: float) -> np.ndarray:
    """Single-mode squeezing acting on (x, p)."""
    return np.diag([math.exp(s), math.exp(-s)])


def local_symplectic(theta1: float, s1: float, theta2: float, s2: float) -> np.ndarray:
    """Block-diagonal local symplectic: rotation then squeezing per mode."""
    out = np.zeros((4, 4))
    out[:2, :2] = rotation(theta1) @ squeeze(s1)
    out[2:, 2:] = rotation(theta2) @ squeeze(s2)
    return out


def transform(matrix: np.ndarray, symplectic: np.ndarray) -> np.ndarray:
    return symplectic.T @ matrix @ symplectic


unit_floats = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@st.composite
def purity_triples(draw, mu_min: float = 0.15):
    """Valid (mu1, mu2, mu): marginals in [mu_min, 1], mu inside its strip."""
    mu1 = draw(st.floats(min_value=mu_min, max_value=1.0))
    mu2 = draw(st.floats(min_value=mu_min, max_value=1.0))
    lower = mu1 * mu2
    upper = lower / (lower + abs(mu1 - mu2))
    frac = draw(unit_floats)
    return mu1, mu2, lower + frac * (upper - lower)


@st.composite
def purity_quads(draw, mu_min: float = 0.15):
    """Valid (mu1, mu2, mu, delta) with delta inside its bounds."""
    from gce.param import delta_bounds

    mu1, mu2, mu = draw(purity_triples(mu_min))
    lo, hi = delta_bounds(mu1, mu2, mu)
    frac = draw(unit_floats)
    return mu1, mu2, mu, lo + frac * (hi - lo)


@st.composite
def physical_standard_forms(draw, a_max: float = 5.0):
    """Random physical StandardForm in canonical orientation."""
    a = draw(st.floats(min_value=0.5, max_value=a_max))
    b = draw(st.floats(min_value=0.5, max_value=a_max))
    cmax = math.sqrt(a * b)
    c_plus = draw(st.floats(min_value=0.0, max_value=0.999 * cmax))
    c_minus = draw(st.floats(min_value=-1.0, max_value=1.0)) * c_plus
    sf = StandardForm(a, b, c_plus, c_minus)
    if not is_physical(sf).ok:
        # Shrink the correlations until the state is physical; c = 0 always is.
        for scale in (0.5, 0.25, 0.1, 0.0):
            sf = StandardForm(a, b, scale * c_plus, scale * c_minus)
            if is_physical(sf).ok:
                break
    return sf
