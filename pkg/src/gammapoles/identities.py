"""Residual checkers for the classical identities around Gamma(nz)/Gamma(z).

Each ``*_residual`` function returns a single non-negative float.  The
``check_*`` functions sweep a deterministic grid, take the maximum residual
and wrap it in an :class:`IdentityReport`.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleError
from .gamma_core import (
    LOG_2PI,
    LogMagnitudeSign,
    PI,
    cos_pi,
    gamma,
    log_gamma,
    nearest_pole,
    pole_index,
    sin_pi,
)

__all__ = [
    "IdentityId",
    "IdentityReport",
    "RootOfUnity",
    "reflection_residual",
    "sine_product",
    "roots_of_unity_product",
    "chord_length_residual",
    "gauss_residual",
    "gamma_product",
    "gamma_fraction_product",
    "gamma_fraction_product_residual",
    "THRESHOLDS",
    "check_reflection",
    "check_sine_product",
    "check_roots_of_unity",
    "check_chord_length",
    "check_gauss",
    "check_gamma_fraction_product",
    "run_check",
    "run_all",
]

# Products with more factors than this are accumulated in log space.
DIRECT_PRODUCT_LIMIT = 30


class IdentityId(str, enum.Enum):
    REFLECTION = "reflection"
    SINE_PRODUCT = "sine-product"
    GAUSS_MULTIPLICATION = "gauss"
    GAMMA_FRACTION_PRODUCT = "gamma-fraction-product"
    ROOTS_OF_UNITY_PRODUCT = "roots-of-unity"
    CHORD_LENGTH = "chord-length"


# Engineering thresholds; the identities themselves are exact.
THRESHOLDS = {
    IdentityId.REFLECTION: 1e-11,
    IdentityId.SINE_PRODUCT: 1e-10,
    IdentityId.GAUSS_MULTIPLICATION: 1e-10,
    IdentityId.GAMMA_FRACTION_PRODUCT: 1e-10,
    IdentityId.ROOTS_OF_UNITY_PRODUCT: 1e-10,
    IdentityId.CHORD_LENGTH: 1e-13,
}


@dataclass(frozen=True)
class IdentityReport:
    identity_id: IdentityId
    grid: str
    max_rel_residual: float
    threshold: float

    @property
    def passed(self):
        return self.max_rel_residual <= self.threshold

    def as_row(self):
        return {
            "id": self.identity_id.value,
            "grid": self.grid,
            "max_residual": self.max_rel_residual,
            "threshold": self.threshold,
            "status": "PASS" if self.passed else "FAIL",
        }


@dataclass(frozen=True)
class RootOfUnity:
    """omega_k = exp(2 pi i k / n), built from reduced sin/cos of pi*(2k/n)."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 2 or not 0 <= self.k < self.n:
            raise ValueError(f"need n >= 2 and 0 <= k < n, got n={self.n}, k={self.k}")

    @property
    def value(self):
        x = _turn_fraction(self.k, self.n)
        return complex(cos_pi(x), sin_pi(x))


def _turn_fraction(k, n):
    # 2k/n reduced into (-1, 1] with a single rounding
    return (2 * k - 2 * n) / n if 2 * k > n else 2 * k / n


def _roots_of_unity(n):
    """omega_1 .. omega_{n-1} as an array, same construction as RootOfUnity."""
    twice = 2 * np.arange(1, n)
    x = np.where(twice > n, (twice - 2 * n) / n, twice / n)
    return cos_pi(x) + 1j * sin_pi(x)


# -- single-point residuals ------------------------------------------------


def reflection_residual(xi):
    """|Gamma(xi) Gamma(1-xi) sin(pi xi) / pi - 1|."""
    xi = complex(xi) if isinstance(xi, complex) else float(xi)
    k = pole_index(xi)
    if k is not None or pole_index(1 - xi) is not None:
        raise PoleError(k if k is not None else 0, f"reflection undefined at integer xi = {xi}")
    return abs(gamma(xi) * gamma(1 - xi) * sin_pi(xi) / PI - 1.0)


def sine_product(n):
    """prod_{k=1}^{n-1} sin(k pi / n) as a LogMagnitudeSign (always positive)."""
    n = int(n)
    if n < 2:
        raise ValueError("n must be >= 2")
    s = sin_pi(np.arange(1, n) / n)
    return LogMagnitudeSign(math.fsum(np.log(s)), 0.0)


def roots_of_unity_product(n):
    """prod_{k=1}^{n-1} (1 - omega_k), which should equal n."""
    n = int(n)
    if n < 2:
        raise ValueError("n must be >= 2")
    factors = 1.0 - _roots_of_unity(n)
    if n - 1 <= DIRECT_PRODUCT_LIMIT:
        out = 1.0 + 0j
        for f in factors:
            out *= complex(f)
        return out
    logs = np.log(factors)
    return cmath.exp(complex(math.fsum(logs.real), math.fsum(logs.imag)))


def chord_length_residual(n, k):
    """| |1 - omega_k| - 2 sin(pi k / n) |, absolute."""
    n, k = int(n), int(k)
    if not 1 <= k <= n - 1:
        raise ValueError(f"need 1 <= k <= n-1, got n={n}, k={k}")
    return abs(abs(1.0 - RootOfUnity(n, k).value) - 2.0 * sin_pi(k / n))


def gamma_product(args, log_space=None):
    """prod Gamma(a) over ``args`` as a LogMagnitudeSign.

    ``log_space=None`` picks direct multiplication for at most
    DIRECT_PRODUCT_LIMIT factors and log-space accumulation otherwise.
    """
    args = list(args)
    if log_space is None:
        log_space = len(args) > DIRECT_PRODUCT_LIMIT
    if log_space:
        return LogMagnitudeSign.product(log_gamma(a) for a in args)
    out = 1.0
    for a in args:
        out *= gamma(a)
    return LogMagnitudeSign.from_value(out)


def gauss_residual(z, n):
    """Relative residual of Gauss's multiplication formula

        prod_{k=0}^{n-1} Gamma(z + k/n) = (2 pi)^((n-1)/2) n^(1/2 - n z) Gamma(n z),

    with both sides formed in log space.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    is_complex = isinstance(z, complex)
    z = complex(z) if is_complex else float(z)
    args = [z + k / n for k in range(n)]
    for k, a in enumerate(args):
        p = pole_index(a)
        if p is not None:
            raise PoleError(p, f"factor Gamma(z + {k}/{n}) sits on the pole z + {k}/{n} = {-p}")
    nz = n * z
    p = pole_index(nz)
    if p is not None:
        raise PoleError(p, f"Gamma({n}z) sits on the pole {n}z = {-p}")
    lhs = LogMagnitudeSign.product(log_gamma(a) for a in args)
    rhs = LogMagnitudeSign.from_log(0.5 * (n - 1) * LOG_2PI + (0.5 - nz) * math.log(n)) * log_gamma(nz)
    return lhs.relative_difference(rhs)


def gamma_fraction_product(n, log_space=None):
    """prod_{k=1}^{n-1} Gamma(k/n)."""
    n = int(n)
    return gamma_product((k / n for k in range(1, n)), log_space=log_space)


def gamma_fraction_product_residual(n):
    """Relative deviation of prod Gamma(k/n) from (2 pi)^((n-1)/2) / sqrt(n)."""
    n = int(n)
    if n < 2:
        raise ValueError("n must be >= 2")
    expected = LogMagnitudeSign(0.5 * (n - 1) * LOG_2PI - 0.5 * math.log(n))
    return gamma_fraction_product(n).relative_difference(expected)


# -- grid reports ----------------------------------------------------------


def _distance_to_poles(z):
    p = nearest_pole(z)
    return math.inf if p is None else p.distance


def _disk_samples(rng, count, radius, accept):
    out = []
    while len(out) < count:
        r = radius * np.sqrt(rng.random(256))
        t = 2 * PI * rng.random(256)
        for z in r * np.cos(t) + 1j * r * np.sin(t):
            z = complex(z)
            if accept(z):
                out.append(z)
                if len(out) == count:
                    break
    return out


def check_reflection(points=1000, radius=10.0, min_pole_distance=1e-2, seed=0, threshold=None):
    rng = np.random.default_rng(seed)

    def far_from_integers(z):
        return abs(z - round(z.real)) >= min_pole_distance

    grid = _disk_samples(rng, points, radius, far_from_integers)
    worst = max(reflection_residual(z) for z in grid)
    return IdentityReport(
        IdentityId.REFLECTION,
        f"{points} random xi, |xi| <= {radius:g}, integer distance >= {min_pole_distance:g}, seed {seed}",
        worst,
        THRESHOLDS[IdentityId.REFLECTION] if threshold is None else threshold,
    )


def check_sine_product(n_max=10_000, n_min=2, threshold=None):
    worst = 0.0
    for n in range(n_min, n_max + 1):
        expected = LogMagnitudeSign(math.log(n) - (n - 1) * math.log(2.0))
        worst = max(worst, sine_product(n).relative_difference(expected))
    return IdentityReport(
        IdentityId.SINE_PRODUCT,
        f"n = {n_min}..{n_max}, log space",
        worst,
        THRESHOLDS[IdentityId.SINE_PRODUCT] if threshold is None else threshold,
    )


def check_roots_of_unity(n_max=10_000, n_min=2, threshold=None):
    worst = 0.0
    for n in range(n_min, n_max + 1):
        worst = max(worst, abs(roots_of_unity_product(n) - n) / n)
    return IdentityReport(
        IdentityId.ROOTS_OF_UNITY_PRODUCT,
        f"n = {n_min}..{n_max}",
        worst,
        THRESHOLDS[IdentityId.ROOTS_OF_UNITY_PRODUCT] if threshold is None else threshold,
    )


def check_chord_length(ns=None, threshold=None):
    if ns is None:
        ns = list(range(2, 101)) + [1000]
    ns = list(ns)
    worst = 0.0
    for n in ns:
        for k in range(1, n):
            worst = max(worst, chord_length_residual(n, k))
    label = f"n = {ns[0]}..{ns[-1]}" if ns == list(range(ns[0], ns[-1] + 1)) else f"n in {_compact(ns)}"
    return IdentityReport(
        IdentityId.CHORD_LENGTH,
        f"{label}, all k",
        worst,
        THRESHOLDS[IdentityId.CHORD_LENGTH] if threshold is None else threshold,
    )


def check_gauss(n_values=range(1, 13), points=100, radius=5.0, min_pole_distance=1e-2, seed=0, threshold=None):
    n_values = list(n_values)
    worst = 0.0
    for n in n_values:
        rng = np.random.default_rng([seed, n])

        def clear_of_poles(z, n=n):
            if _distance_to_poles(n * z) < min_pole_distance:
                return False
            return all(_distance_to_poles(z + k / n) >= min_pole_distance for k in range(n))

        for z in _disk_samples(rng, points, radius, clear_of_poles):
            worst = max(worst, gauss_residual(z, n))
    return IdentityReport(
        IdentityId.GAUSS_MULTIPLICATION,
        f"n in {_compact(n_values)}, {points} random z per n, |z| <= {radius:g}, "
        f"pole distance >= {min_pole_distance:g}, seed {seed}",
        worst,
        THRESHOLDS[IdentityId.GAUSS_MULTIPLICATION] if threshold is None else threshold,
    )


def check_gamma_fraction_product(n_max=500, n_min=2, threshold=None):
    worst = max(gamma_fraction_product_residual(n) for n in range(n_min, n_max + 1))
    return IdentityReport(
        IdentityId.GAMMA_FRACTION_PRODUCT,
        f"n = {n_min}..{n_max}",
        worst,
        THRESHOLDS[IdentityId.GAMMA_FRACTION_PRODUCT] if threshold is None else threshold,
    )


def _compact(values):
    values = list(values)
    if len(values) > 2 and values == list(range(values[0], values[-1] + 1)):
        return f"{values[0]}..{values[-1]}"
    head = values[:-1]
    if len(head) > 2 and head == list(range(head[0], head[-1] + 1)):
        return f"{head[0]}..{head[-1]} and {values[-1]}"
    if len(values) > 6:
        return "{" + ",".join(map(str, values[:3])) + ",...," + str(values[-1]) + "}"
    return "{" + ",".join(map(str, values)) + "}"


_CHECKS = {
    IdentityId.REFLECTION: check_reflection,
    IdentityId.SINE_PRODUCT: check_sine_product,
    IdentityId.GAUSS_MULTIPLICATION: check_gauss,
    IdentityId.GAMMA_FRACTION_PRODUCT: check_gamma_fraction_product,
    IdentityId.ROOTS_OF_UNITY_PRODUCT: check_roots_of_unity,
    IdentityId.CHORD_LENGTH: check_chord_length,
}


def run_check(identity, **grid):
    """Run one named check; ``grid`` is forwarded to its ``check_*`` function."""
    return _CHECKS[IdentityId(identity)](**grid)


def run_all(threshold=None):
    return [fn(threshold=threshold) for fn in _CHECKS.values()]
