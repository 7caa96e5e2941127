"""Limits of Gamma(nz)/Gamma(z) at the poles z = -k.

Two closed forms are available for k >= 1:

* ``SignConvention.PAPER_THEOREM2``: (-1)^k Gamma(k) / (n^2 Gamma(nk))
* ``SignConvention.RESIDUE_ORACLE``: (-1)^(k(n-1)) Gamma(k) / (n^2 Gamma(nk)),
  which is what the simple-pole residues of Gamma give.

They share the magnitude and differ in sign exactly when n and k are both odd.
:func:`limit_extrapolate` measures the limit numerically so the sign can be
settled without trusting either formula.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConvergenceError, DegenerateError
from .gamma_core import (
    LOG_2PI,
    LogMagnitudeSign,
    PI,
    log_gamma,
    nearest_pole,
    residue_at_pole,
    sin_pi,
)
from .identities import gamma_product

__all__ = [
    "SignConvention",
    "RatioLimitSpec",
    "LimitEstimate",
    "ratio_limit_closed_form",
    "ratio_limit_float",
    "residue_ratio_oracle",
    "residue_ratio_exact",
    "sign_discrepancy",
    "ratio_stable",
    "ratio_stable_log",
    "limit_extrapolate",
    "path_discrepancy",
    "reflection_sign_limit",
    "reflection_sign_target",
    "theorem2_product_limit",
    "theorem2_product_magnitude",
    "richardson",
]

# Smallest offset from the pole used by the extrapolation schedule.
EPS_FLOOR = 1e-12


class SignConvention(str, enum.Enum):
    PAPER_THEOREM2 = "paper"
    RESIDUE_ORACLE = "residue"


@dataclass(frozen=True)
class RatioLimitSpec:
    """Dilation ``n`` and pole index ``k`` (pole at z = -k)."""

    n: int
    k: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if int(self.k) != self.k or self.k < 0:
            raise ValueError(f"k must be a nonnegative integer, got {self.k!r}")


@dataclass(frozen=True)
class LimitEstimate:
    value: LogMagnitudeSign
    steps: list = field(default_factory=list)  # (epsilon, ratio) pairs, epsilon decreasing
    order: float = math.nan
    achieved_tol: float = math.nan  # absolute, in the units of value

    @property
    def sign(self):
        return self.value.sign

    def to_float(self):
        return self.value.to_float()

    def to_complex(self):
        return self.value.to_complex()


def _as_spec(spec, k=None):
    if isinstance(spec, RatioLimitSpec):
        return spec
    if k is not None:
        return RatioLimitSpec(spec, k)
    return RatioLimitSpec(*spec)


def sign_discrepancy(spec):
    """True when the two sign conventions disagree, i.e. n and k both odd."""
    spec = _as_spec(spec)
    return spec.k >= 1 and spec.n % 2 == 1 and spec.k % 2 == 1


def ratio_limit_closed_form(spec, convention=SignConvention.RESIDUE_ORACLE):
    """Closed-form limit of Gamma(nz)/Gamma(z) as z -> -k.

    The magnitude Gamma(k) / (n^2 Gamma(nk)) is formed from log_gamma.
    """
    spec = _as_spec(spec)
    n, k = spec.n, spec.k
    if k == 0:
        return LogMagnitudeSign(-math.log(n))
    log_mag = log_gamma(k).log_mag - 2.0 * math.log(n) - log_gamma(n * k).log_mag
    if SignConvention(convention) is SignConvention.PAPER_THEOREM2:
        negative = k % 2 == 1
    else:
        negative = (k * (n - 1)) % 2 == 1
    return LogMagnitudeSign(log_mag, PI if negative else 0.0)


def ratio_limit_float(spec, convention=SignConvention.RESIDUE_ORACLE):
    """The closed-form limit as a float, rounded once from the exact rational.

    Going through exp(log_mag) would cost a few ulps (0.01 would come back
    as 0.009999999999999995).  Very large nk falls back to the log form.
    """
    spec = _as_spec(spec)
    if spec.n * spec.k > 5000:
        return ratio_limit_closed_form(spec, convention).to_float()
    value = residue_ratio_exact(spec)
    if SignConvention(convention) is SignConvention.PAPER_THEOREM2 and sign_discrepancy(spec):
        value = -value
    return float(value)


def residue_ratio_oracle(spec):
    """Res_{z=-nk} Gamma / (n Res_{z=-k} Gamma), the limit implied by the simple poles.

    Near z = -k, Gamma(z) ~ R_k / (z + k) and Gamma(nz) ~ R_{nk} / (n (z + k)),
    with R_j = (-1)^j / j!.
    """
    spec = _as_spec(spec)
    n, k = spec.n, spec.k
    if k == 0:
        return LogMagnitudeSign(-math.log(n))
    return residue_at_pole(n * k) / (residue_at_pole(k) * n)


def residue_ratio_exact(spec):
    """The oracle value as an exact Fraction."""
    spec = _as_spec(spec)
    n, k = spec.n, spec.k
    if k == 0:
        return Fraction(1, n)
    sign = -1 if (k * (n - 1)) % 2 else 1
    return Fraction(sign * math.factorial(k), n * math.factorial(n * k))


def ratio_stable_log(z, n):
    """Gamma(nz)/Gamma(z) as a LogMagnitudeSign, accurate right up to z = -k.

    Near a pole -k of Gamma (and -nk of Gamma(n.)), both Gammas are reflected:

        Gamma(nz)/Gamma(z) = (-1)^(k(n+1)) sin(pi e) Gamma(1-z) / (sin(pi n e) Gamma(1-nz)),

    with e = z + k formed exactly, so nothing is lost to the cancellation in
    n*z + n*k.  At e = 0 the removable singularity is filled with its limit.
    Elsewhere the ratio is log_gamma(nz) - log_gamma(z).
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(z, complex):
        z = complex(z)
    else:
        z = float(z)
    if n == 1:
        return LogMagnitudeSign(0.0)
    p = nearest_pole(z)
    if p is not None:
        k = p.pole_index
        e = z + k
        if abs(n * e) < 0.5:
            if e == 0:
                sin_ratio = LogMagnitudeSign(-math.log(n))
            else:
                sin_ratio = LogMagnitudeSign.from_value(sin_pi(e) / sin_pi(n * e))
            num = log_gamma(1 - z)
            den = log_gamma((1 + n * k) - n * e)
            out = sin_ratio * num / den
            if (k * (n + 1)) % 2:
                out = out * -1
            return out
        if abs(e) <= 1e-15:
            raise DegenerateError(f"z = {z} is at the pole {-k} but {n}z is not near a pole")
    return log_gamma(n * z) / log_gamma(z)


def ratio_stable(z, n):
    """Gamma(nz)/Gamma(z); float for real z, complex for complex z."""
    out = ratio_stable_log(z, n)
    return out.to_complex() if isinstance(z, complex) else out.to_float()


def richardson(values, ratio=2.0):
    """Polynomial (Richardson) extrapolation of f(h_j), h_j = h_0 / ratio^j, to h = 0.

    The leading error is taken as first order, then second, third, ... .
    Returns (best, error_estimate), picking the tableau entry whose
    error estimate is smallest.
    """
    values = list(values)
    if len(values) < 3:
        raise ValueError("need at least 3 values")
    prev = [values[0]]
    best, best_err = values[0], math.inf
    for j in range(1, len(values)):
        row = [values[j]]
        for m in range(1, j + 1):
            fac = ratio**m
            t = row[m - 1] + (row[m - 1] - prev[m - 1]) / (fac - 1.0)
            row.append(t)
            err = max(abs(t - row[m - 1]), abs(t - prev[m - 1]))
            if err < best_err:
                best, best_err = t, err
        prev = row
    return best, best_err


def _observed_order(values):
    d = [abs(values[j] - values[j + 1]) for j in range(len(values) - 1)]
    orders = []
    for j in range(min(4, len(d) - 1)):
        if d[j] > 0 and d[j + 1] > 0:
            orders.append(math.log2(d[j] / d[j + 1]))
    if not orders:
        return math.nan
    orders.sort()
    return orders[len(orders) // 2]


def _extrapolate(eps_list, samples, real, max_rel_tol):
    """Shared tail of the limit estimators; samples are LogMagnitudeSign."""
    scale = samples[0]
    scaled = [(s / scale).to_complex() for s in samples]
    if real:
        scaled = [v.real for v in scaled]
    best, err = richardson(scaled)
    if not math.isfinite(err) or err > max_rel_tol * max(abs(best), 1e-300):
        raise ConvergenceError(f"extrapolation did not contract (error estimate {err:.3g}, value {best!r})")
    # never report better than rounding allows; exp(log_mag) costs ~|log_mag| ulps
    err = max(err, 16 * 2.0**-52 * abs(best) * max(1.0, abs(scale.log_mag)))
    value = LogMagnitudeSign.from_value(best) * scale
    achieved = err * math.exp(scale.log_mag)
    ratios = [s.to_float() if real else s.to_complex() for s in samples]
    return LimitEstimate(value, list(zip(eps_list, ratios)), _observed_order(scaled), achieved)


def _schedule(eps0, steps):
    if not 0 < eps0 <= 0.1:
        raise ValueError("eps0 must lie in (0, 0.1]")
    if steps < 3:
        raise ValueError("steps must be >= 3")
    eps = [eps0 * 2.0**-j for j in range(steps)]
    eps = [e for e in eps if e >= EPS_FLOOR]
    if len(eps) < 3:
        raise ValueError("schedule reaches the noise floor before 3 steps")
    return eps


def limit_extrapolate(spec, eps0=1e-3, steps=20, path="real", max_rel_tol=1e-6):
    """Extrapolate Gamma(nz)/Gamma(z) to z = -k.

    Samples at z_j = -k + eps0 2^-j (``path="real"``) or -k + i eps0 2^-j
    (``path="imaginary"``), halving down to at most EPS_FLOOR, then
    Richardson-extrapolates assuming a first-order leading error.
    """
    spec = _as_spec(spec)
    eps = _schedule(eps0, steps)
    if path == "real":
        zs = [-spec.k + e for e in eps]
    elif path == "imaginary":
        zs = [complex(-spec.k, e) for e in eps]
    else:
        raise ValueError(f"unknown path {path!r}")
    samples = [ratio_stable_log(z, spec.n) for z in zs]
    return _extrapolate(eps, samples, path == "real", max_rel_tol)


def path_discrepancy(spec, eps0=1e-3, steps=20):
    """Relative gap between the real-axis and imaginary-axis limit estimates."""
    a = limit_extrapolate(spec, eps0, steps, path="real")
    b = limit_extrapolate(spec, eps0, steps, path="imaginary")
    return abs(b.to_complex() / a.to_complex() - 1.0)


def reflection_sign_target(n, r, k):
    """(-1)^k pi / sin(pi r / n)."""
    v = PI / sin_pi(r / n)
    return -v if k % 2 else v


def reflection_sign_limit(n, r, k, eps):
    """Largest deviation of pi / sin(pi r/n - pi w), w = k -/+ eps, from its limit at w = k."""
    n, r, k = int(n), int(r), int(k)
    if n < 2 or not 1 <= r <= n - 1 or k < 1:
        raise ValueError(f"need n >= 2, 1 <= r <= n-1, k >= 1; got n={n}, r={r}, k={k}")
    if not 0 < eps <= 0.01:
        raise ValueError("eps must lie in (0, 0.01]")
    target = reflection_sign_target(n, r, k)
    base = r / n - k
    return max(abs(PI / sin_pi(base - eps) - target), abs(PI / sin_pi(base + eps) - target))


def theorem2_product_limit(n, k, eps0=1e-3, steps=20, max_rel_tol=1e-6):
    """Extrapolate prod_{r=1}^{n-1} Gamma(-w + r/n) Gamma(1 + w - r/n) to w = k from below.

    The magnitude should be (2 pi)^(n-1) / n; the sign is whatever the
    numbers say.
    """
    n, k = int(n), int(k)
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    eps = _schedule(eps0, steps)
    samples = []
    for e in eps:
        args = []
        for r in range(1, n):
            args.append((r / n - k) + e)
            args.append((1 + k - r / n) - e)
        samples.append(gamma_product(args))
    return _extrapolate(eps, samples, True, max_rel_tol)


def theorem2_product_magnitude(n):
    """(2 pi)^(n-1) / n as a LogMagnitudeSign."""
    return LogMagnitudeSign((n - 1) * LOG_2PI - math.log(n))
