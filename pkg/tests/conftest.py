"""Shared extended-precision oracles.  mpmath is used only here, never in the library."""

import mpmath
import numpy as np
import pytest

mpmath.mp.dps = 40


def mp_gamma(z):
    return mpmath.gamma(mpmath.mpc(z) if isinstance(z, complex) else mpmath.mpf(z))


def rel_err(value, reference):
    reference = complex(reference)
    return abs(complex(value) - reference) / abs(reference)


def pole_distance(z):
    """Distance from z to the nearest nonpositive integer."""
    z = complex(z)
    k = max(0, round(-z.real))
    return abs(z + k)


def random_points(count, radius, min_pole_distance, seed, avoid=pole_distance):
    """Deterministic complex points in |z| <= radius, kept away from poles."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
        if abs(z) <= radius and avoid(z) >= min_pole_distance:
            out.append(z)
    return out


@pytest.fixture(scope="session")
def cross_method_grid():
    re = np.round(np.arange(0.1, 10.0 + 1e-9, 0.3), 10)
    im = np.round(np.arange(-5.0, 5.0 + 1e-9, 0.3), 10)
    return [complex(x, y) for x in re for y in im]
