"""Exception types raised by gammapoles."""


class GammaPolesError(Exception):
    """Base class for all library errors."""


class PoleError(GammaPolesError, ValueError):
    """Argument sits exactly on a pole ``z = -k`` of the Gamma function."""

    def __init__(self, k, message=None):
        self.k = int(k)
        super().__init__(message or f"pole at z = {-self.k}")


class DomainError(GammaPolesError, ValueError):
    """Argument outside the region where the chosen method is defined."""


class GammaOverflowError(GammaPolesError, OverflowError):
    """|Gamma(z)| does not fit in a double; use ``log_gamma`` instead."""


class DegenerateError(GammaPolesError, ValueError):
    """Input is too close to a pole for the requested quantity to be formed."""


class ConvergenceError(GammaPolesError, ArithmeticError):
    """An extrapolation table failed to contract."""
