"""Gamma function evaluators and the small numeric types they share.

Three independent routes to Gamma(z) live here:

* :func:`gamma` -- Lanczos rational approximation plus the reflection formula,
  the production evaluator used everywhere else in the package.
* :func:`gamma_weierstrass` -- the truncated Euler/Weierstrass infinite product.
* :func:`gamma_integral` -- quadrature of Euler's integral, Re(z) > 0.

Real inputs give real outputs and complex inputs give complex outputs.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational

import numpy as np

from .errors import DomainError, GammaOverflowError, PoleError

__all__ = [
    "LogMagnitudeSign",
    "PoleProximity",
    "RationalApprox",
    "TruncatedProduct",
    "Quadrature",
    "evaluate",
    "gamma",
    "log_gamma",
    "gamma_weierstrass",
    "gamma_integral",
    "sin_pi",
    "cos_pi",
    "residue_at_pole",
    "nearest_pole",
    "pole_index",
]

PI = math.pi
TWO_PI = 2.0 * math.pi
LOG_PI = math.log(math.pi)
LOG_2PI = math.log(TWO_PI)
SQRT_2PI = math.sqrt(TWO_PI)

# Godfrey's Lanczos coefficients, g = 607/128, 15 terms.  Validated in the test
# suite against mpmath and against gamma_integral (relative error ~2e-14 for
# |z| <= 20 in the right half plane).
LANCZOS_G = 607.0 / 128.0
LANCZOS_COEF = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)


def _reduce_phase(phase):
    """Map an angle to the principal interval (-pi, pi]."""
    r = math.remainder(phase, TWO_PI)
    return PI if r == -PI else r


@dataclass(frozen=True)
class LogMagnitudeSign:
    """A number stored as ``exp(log_mag) * exp(1j * phase)``.

    Real values carry ``phase`` 0 (positive) or pi (negative).  Products and
    quotients add/subtract the logs and reduce the phase after every binary
    operation, so signs of real values stay exact.
    """

    log_mag: float
    phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "log_mag", float(self.log_mag))
        object.__setattr__(self, "phase", _reduce_phase(float(self.phase)))

    @classmethod
    def from_value(cls, x):
        x = complex(x)
        if x == 0:
            return cls(-math.inf, 0.0)
        if x.imag == 0:
            return cls(math.log(abs(x.real)), PI if x.real < 0 else 0.0)
        return cls(math.log(abs(x)), math.atan2(x.imag, x.real))

    @classmethod
    def from_log(cls, w):
        """Wrap a (complex) logarithm ``w`` so that the value is ``exp(w)``."""
        w = complex(w)
        return cls(w.real, w.imag)

    @classmethod
    def product(cls, factors):
        """Multiply many factors; exact sign bookkeeping when all are real."""
        factors = list(factors)
        log_mag = math.fsum(f.log_mag for f in factors)
        if all(f.phase in (0.0, PI) for f in factors):
            negatives = sum(1 for f in factors if f.phase == PI)
            return cls(log_mag, PI if negatives % 2 else 0.0)
        return cls(log_mag, math.fsum(f.phase for f in factors))

    @property
    def is_real(self):
        return self.phase in (0.0, PI)

    @property
    def sign(self):
        """+1 or -1 for real values; raises for genuinely complex ones."""
        if self.phase == 0.0:
            return 1
        if self.phase == PI:
            return -1
        raise ValueError(f"value with phase {self.phase!r} has no real sign")

    @property
    def log(self):
        return complex(self.log_mag, self.phase)

    def to_complex(self):
        return cmath.rect(math.exp(self.log_mag), self.phase)

    def to_float(self):
        return self.sign * math.exp(self.log_mag)

    def __float__(self):
        return self.to_float()

    def __complex__(self):
        return self.to_complex()

    def __mul__(self, other):
        if not isinstance(other, LogMagnitudeSign):
            other = LogMagnitudeSign.from_value(other)
        return LogMagnitudeSign(self.log_mag + other.log_mag, self.phase + other.phase)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, LogMagnitudeSign):
            other = LogMagnitudeSign.from_value(other)
        return LogMagnitudeSign(self.log_mag - other.log_mag, self.phase - other.phase)

    def __rtruediv__(self, other):
        return LogMagnitudeSign.from_value(other) / self

    def __pow__(self, p):
        if isinstance(p, Integral):
            if self.phase == PI:
                return LogMagnitudeSign(self.log_mag * p, PI if p % 2 else 0.0)
            return LogMagnitudeSign(self.log_mag * p, self.phase * p)
        return LogMagnitudeSign.from_log(self.log * p)

    def relative_difference(self, other):
        """|self/other - 1| evaluated without leaving log space."""
        q = self / other
        # exp(a + ib) - 1 = expm1(a) e^{ib} + 2i sin(b/2) e^{ib/2}, no cancellation
        a, b = q.log_mag, q.phase
        return abs(math.expm1(a) * cmath.exp(1j * b) + 2j * math.sin(0.5 * b) * cmath.exp(0.5j * b))


@dataclass(frozen=True)
class PoleProximity:
    """Nearest pole ``z = -pole_index`` and the distance to it."""

    pole_index: int
    distance: float


# -- evaluation method selectors -------------------------------------------


@dataclass(frozen=True)
class RationalApprox:
    """Production evaluator (Lanczos + reflection)."""


@dataclass(frozen=True)
class TruncatedProduct:
    terms: int = 1_000_000

    def __post_init__(self):
        if self.terms < 1:
            raise ValueError("TruncatedProduct needs terms >= 1")


@dataclass(frozen=True)
class Quadrature:
    nodes: int = 200

    def __post_init__(self):
        if self.nodes < 2:
            raise ValueError("Quadrature needs nodes >= 2")


def evaluate(z, method=RationalApprox()):
    """Gamma(z) via the selected method."""
    if isinstance(method, RationalApprox):
        return gamma(z)
    if isinstance(method, TruncatedProduct):
        return gamma_weierstrass(z, method.terms)
    if isinstance(method, Quadrature):
        return gamma_integral(z, method.nodes)
    raise TypeError(f"unknown evaluation method {method!r}")


# -- helpers ----------------------------------------------------------------


def _scalar(z):
    """Normalise to a Python float or complex and report which one it is."""
    if isinstance(z, (complex, np.complexfloating)):
        z = complex(z)
        return z, True
    return float(z), False


def pole_index(z):
    """k if z is exactly the nonpositive integer -k, else None."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        return int(-z.real)
    return None


def nearest_pole(z):
    """Nearest pole of Gamma for Re(z) < 0.5, ties going to the smaller k.

    Returns None in the right half plane Re(z) >= 0.5.
    """
    z = complex(z)
    if not z.real < 0.5:
        return None
    k = max(0, math.ceil(-z.real - 0.5))
    return PoleProximity(k, abs(z + k))


def sin_pi(z):
    """sin(pi*z) with the argument reduced by its nearest integer first.

    Works on floats, complex numbers and numpy arrays.  Integers map to an
    exact zero and the relative accuracy survives arbitrarily close to them.
    """
    if isinstance(z, np.ndarray):
        return _sin_pi_array(z)
    z, is_complex = _scalar(z)
    if not is_complex:
        if not math.isfinite(z):
            return math.nan
        n = round(z)
        r = z - n
        if r == 0:
            return 0.0
        s = math.sin(PI * r)
        return -s if n % 2 else s
    x, y = z.real, z.imag
    if not math.isfinite(x):
        return complex(math.nan, math.nan)
    n = round(x)
    r = x - n
    s = math.sin(PI * r)
    c = _cos_pi_reduced(r)
    out = complex(s * math.cosh(PI * y), c * math.sinh(PI * y))
    return -out if n % 2 else out


def _cos_pi_reduced(r):
    # |r| <= 1/2; cos(pi/2) must come out as exactly 0
    if abs(r) < 0.25:
        return math.cos(PI * r)
    return math.sin(PI * (0.5 - abs(r)))


def cos_pi(x):
    """cos(pi*x) for real x (or an array of them) with exact integer reduction."""
    if isinstance(x, np.ndarray):
        x = x.astype(float)
        n = np.rint(x)
        r = x - n
        a = np.abs(r)
        c = np.where(a < 0.25, np.cos(PI * r), np.sin(PI * (0.5 - a)))
        return np.where(np.fmod(n, 2) != 0, -c, c)
    x = float(x)
    n = round(x)
    c = _cos_pi_reduced(x - n)
    return -c if n % 2 else c


def _sin_pi_array(z):
    if np.iscomplexobj(z):
        x, y = z.real, z.imag
        n = np.rint(x)
        r = x - n
        a = np.abs(r)
        s = np.sin(PI * r)
        c = np.where(a < 0.25, np.cos(PI * r), np.sin(PI * (0.5 - a)))
        out = s * np.cosh(PI * y) + 1j * (c * np.sinh(PI * y))
    else:
        x = z.astype(float)
        n = np.rint(x)
        out = np.sin(PI * (x - n))
    return np.where(np.fmod(n, 2) != 0, -out, out)


def _log_sin_pi(z):
    """log(sin(pi z)) for complex z as LogMagnitudeSign, safe for large |Im z|."""
    y = z.imag
    if abs(y) < 30.0:
        return LogMagnitudeSign.from_value(sin_pi(z))
    # sin(pi z) = exp(-i pi z) (1 - exp(2 i pi z)) / (2i) for y > 0; conjugate for y < 0
    w = z if y > 0 else z.conjugate()
    n = round(w.real)
    r = w - n
    small = cmath.exp(2j * PI * r)  # |small| = exp(-2 pi y), tiny
    log_val = -1j * PI * r + cmath.log(1 - small) + cmath.log(0.5j)
    if n % 2:
        log_val += 1j * PI
    if y < 0:
        log_val = log_val.conjugate()
    return LogMagnitudeSign.from_log(log_val)


def _lanczos_sum(zm1):
    x = LANCZOS_COEF[0]
    for i in range(1, len(LANCZOS_COEF)):
        x += LANCZOS_COEF[i] / (zm1 + i)
    return x


def _lanczos_log_core(z):
    """((z - 1/2) log t - t, A(z)) with t = z - 1/2 + g, for complex z, Re(z) >= 1/2."""
    zm1 = z - 1.0
    t = zm1 + LANCZOS_G + 0.5
    return (zm1 + 0.5) * cmath.log(t) - t, _lanczos_sum(zm1)


# -- Gamma ------------------------------------------------------------------


def gamma(z):
    """Gamma(z), reflecting for Re(z) < 1/2.

    Complex arguments go through the Lanczos approximation; real ones through
    the C library's gamma, which is correctly rounded at the usual anchors
    such as Gamma(1/2) = sqrt(pi).  Raises PoleError at the nonpositive
    integers and GammaOverflowError when the result does not fit in a double.
    """
    z, is_complex = _scalar(z)
    k = pole_index(z)
    if k is not None:
        raise PoleError(k)
    if not is_complex:
        try:
            return math.gamma(z)
        except OverflowError:
            raise GammaOverflowError(f"|Gamma({z})| overflows a double; use log_gamma") from None
    re = z.real
    if re == math.floor(re) and 1 <= re <= 171 and z.imag == 0:
        return complex(float(math.factorial(int(re) - 1)), 0.0)
    if re < 0.5:
        s = sin_pi(z)
        try:
            g = gamma(1.0 - z)
        except GammaOverflowError:
            # Gamma(1 - z) is huge, so Gamma(z) underflows
            return log_gamma(z).to_complex()
        return PI / (s * g)
    w, a = _lanczos_log_core(z)
    try:
        e = cmath.exp(w)
    except OverflowError:
        raise GammaOverflowError(f"|Gamma({z})| overflows a double; use log_gamma") from None
    out = SQRT_2PI * a * e
    if cmath.isinf(out):
        raise GammaOverflowError(f"|Gamma({z})| overflows a double; use log_gamma")
    return out


def log_gamma(z):
    """log Gamma(z) as a LogMagnitudeSign (principal phase)."""
    z, is_complex = _scalar(z)
    k = pole_index(z)
    if k is not None:
        raise PoleError(k)
    if not is_complex:
        # Gamma is negative on (-2m-1, -2m)
        return LogMagnitudeSign(math.lgamma(z), PI if z < 0 and math.floor(z) % 2 else 0.0)
    if z.real < 0.5:
        return LogMagnitudeSign(LOG_PI) / _log_sin_pi(z) / log_gamma(1.0 - z)
    w, a = _lanczos_log_core(z)
    return LogMagnitudeSign.from_log(w + 0.5 * LOG_2PI + cmath.log(a))


@functools.lru_cache(maxsize=8)
def _weierstrass_numerator(N):
    """(n, sum_{n<=N} log(1 + 1/n)) for the truncated product."""
    n = np.arange(1, N + 1, dtype=float)
    return n, math.fsum(np.log1p(1.0 / n))


def gamma_weierstrass(z, terms, exact=False):
    """Truncated Euler/Weierstrass product

        (1/z) * prod_{n=1}^{N} (1 + 1/n)^z / (1 + z/n).

    The truncation error is first order in 1/N: asymptotically the relative
    error is z(z-1)/(2N).  With ``exact=True`` and an integer ``z`` the partial
    product is returned as a Fraction.
    """
    N = int(terms)
    if N < 1:
        raise ValueError("terms must be >= 1")
    if exact:
        if not isinstance(z, Rational) or Fraction(z).denominator != 1:
            raise TypeError("exact evaluation needs an integer z")
        zi = int(z)
        if zi == 0 or -N <= zi < 0:
            raise PoleError(-zi)
        if zi > 0:
            return _weierstrass_positive_integer(zi, N)
        out = Fraction(1, zi)
        for n in range(1, N + 1):
            out *= Fraction(n + 1, n) ** zi / Fraction(n + zi, n)
        return out

    z, is_complex = _scalar(z)
    if z == 0:
        raise PoleError(0)
    if not is_complex and z.is_integer() and 1 <= z <= 170:
        # telescoped exactly, then rounded once
        return float(_weierstrass_positive_integer(int(z), N))
    k = pole_index(z)
    if k is not None and k <= N:
        raise PoleError(k)
    n, log_num = _weierstrass_numerator(N)
    if not is_complex:
        u = z / n
        ok = u > -1.0
        log_den = np.where(ok, np.log1p(np.where(ok, u, 0.0)), np.log(np.abs(1.0 + u)))
        log_mag = z * log_num - float(np.sum(log_den))
        negatives = int(np.count_nonzero(~ok))
        out = math.exp(log_mag) / z
        return -out if negatives % 2 else out
    u = z / n
    ur, ui = u.real, u.imag
    # log(1 + u) with the real part through log1p to keep small |u| accurate
    log_den_re = 0.5 * np.log1p(2.0 * ur + ur * ur + ui * ui)
    log_den_im = np.arctan2(ui, 1.0 + ur)
    s = z * log_num
    w = complex(s.real - float(np.sum(log_den_re)), s.imag - float(np.sum(log_den_im)))
    return cmath.exp(w) / z


def _weierstrass_positive_integer(m, N):
    # (1/m) prod (1+1/n)^m / (1+m/n) telescopes to (N+1)^m (m-1)! / ((N+1)...(N+m))
    return Fraction((N + 1) ** m * math.factorial(m - 1), math.prod(range(N + 1, N + m + 1)))


_GL_CACHE = {}


def _gauss_legendre(m):
    if m not in _GL_CACHE:
        _GL_CACHE[m] = np.polynomial.legendre.leggauss(m)
    return _GL_CACHE[m]


def gamma_integral(z, nodes=200):
    """Euler's integral  int_0^inf exp(-t) t^(z-1) dt  by quadrature, Re(z) > 0.

    The integration ray is rotated to t = r exp(i theta), theta following
    arg(z) but capped at |theta| <= pi/2 - 1/2, so the oscillation of
    t^(i Im z) is largely absorbed and the terms do not cancel.  In the
    variable u = log r:

    * r in [0, T] with T = exp(-3) is summed exactly from the series
      sum_k (-e^{i theta})^k T^(z+k) / (k! (z+k)),
    * r in [T, R] uses two Gauss-Legendre panels sharing ``nodes`` points, with
      R placed where the integrand has decayed by ~exp(-50) past its peak.

    Observed relative error on Re(z) in [0.1, 20], |Im(z)| <= 10:
    ~2e-8 at 100 nodes, ~3e-13 at 150, ~1.6e-12 at 200-400 (rounding floor).
    """
    z, is_complex = _scalar(z)
    zc = complex(z)
    if not zc.real > 0:
        raise DomainError(f"integral definition needs Re(z) > 0, got {z}")
    nodes = int(nodes)
    if nodes < 2:
        raise ValueError("nodes must be >= 2")
    cap = PI / 2 - 0.5
    theta = math.copysign(min(abs(math.atan2(zc.imag, zc.real)), cap), zc.imag) if zc.imag else 0.0
    rot = cmath.exp(1j * theta)
    c = math.cos(theta)
    a = -3.0
    b = math.log((abs(zc) + 50.0 + 10.0 * math.sqrt(abs(zc) + 1.0)) / c)

    head = 0j
    coef = 1.0 + 0j
    for j in range(60):
        head += coef * cmath.exp((zc + j) * a) / (zc + j)
        coef *= -rot / (j + 1)
        if abs(coef) * math.exp((j + 1) * a) < 1e-18:
            break

    m1 = nodes // 2
    m2 = nodes - m1
    mid = 0.5 * (a + b)
    body = 0j
    for m, lo, hi in ((m1, a, mid), (m2, mid, b)):
        if m == 0:
            continue
        x, w = _gauss_legendre(m)
        u = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        body += 0.5 * (hi - lo) * complex(np.sum(w * np.exp(zc * u - np.exp(u) * rot)))
    out = cmath.exp(1j * theta * zc) * (head + body)
    return out if is_complex else out.real


def residue_at_pole(k):
    """Residue (-1)^k / k! of Gamma at z = -k, as a LogMagnitudeSign."""
    k = int(k)
    if k < 0:
        raise ValueError("k must be >= 0")
    log_fact = math.log(math.factorial(k)) if k <= 2000 else math.lgamma(k + 1.0)
    return LogMagnitudeSign(-log_fact, PI if k % 2 else 0.0)
