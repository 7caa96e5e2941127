"""Complex Gamma evaluators, identity residual checks, and the limits of
Gamma(nz)/Gamma(z) at the nonpositive integers."""

from .errors import (
    ConvergenceError,
    DegenerateError,
    DomainError,
    GammaOverflowError,
    GammaPolesError,
    PoleError,
)
from .gamma_core import (
    LogMagnitudeSign,
    PoleProximity,
    Quadrature,
    RationalApprox,
    TruncatedProduct,
    cos_pi,
    evaluate,
    gamma,
    gamma_integral,
    gamma_weierstrass,
    log_gamma,
    nearest_pole,
    residue_at_pole,
    sin_pi,
)
from .identities import (
    IdentityId,
    IdentityReport,
    RootOfUnity,
    chord_length_residual,
    gamma_fraction_product_residual,
    gauss_residual,
    reflection_residual,
    roots_of_unity_product,
    sine_product,
)
from .pole_limits import (
    LimitEstimate,
    RatioLimitSpec,
    SignConvention,
    limit_extrapolate,
    ratio_limit_closed_form,
    ratio_limit_float,
    ratio_stable,
    reflection_sign_limit,
    residue_ratio_exact,
    residue_ratio_oracle,
    sign_discrepancy,
    theorem2_product_limit,
)

__version__ = "0.1.0"
