"""Optimal filtering errors for linear models driven by fractional noises.

The package evaluates the steady-state mean-squared filtering error of the
scalar linear model with fractional Brownian state and observation noises,
both through explicit formulas and through an exact Gaussian-conditioning
oracle on a discretized horizon.
"""

from .closed_form import (
    SmallNoiseLaw,
    SteadyStateResult,
    kalman_bucy_steady,
    p_infinity,
    p_infinity_equal_hurst,
    p_infinity_general,
    p_infinity_white_obs,
    p_infinity_white_state,
    riccati_error,
    small_noise_law,
    spectral_steady_state,
    x_ratio,
)
from .errors import (
    ConvergenceError,
    DomainError,
    FactorizationError,
    FracFilterError,
    QuadratureError,
    RegimeError,
)
from .fractional_kernels import fbm_cov, fgn_autocov, fou_cov, fou_stationary_variance
from .gauss_oracle import filtering_error, oracle_run, small_noise_slope, steady_state_estimate
from .params import ModelParams
from .structural import find_zero, kappa_alpha, kappa_h, lambda_fn, theta_branch

__version__ = "0.1.0"

__all__ = [
    "ModelParams",
    "SteadyStateResult",
    "SmallNoiseLaw",
    "FracFilterError",
    "DomainError",
    "RegimeError",
    "QuadratureError",
    "ConvergenceError",
    "FactorizationError",
    "fbm_cov",
    "fgn_autocov",
    "fou_cov",
    "fou_stationary_variance",
    "kappa_h",
    "kappa_alpha",
    "lambda_fn",
    "find_zero",
    "theta_branch",
    "kalman_bucy_steady",
    "riccati_error",
    "p_infinity",
    "p_infinity_equal_hurst",
    "p_infinity_white_obs",
    "p_infinity_white_state",
    "p_infinity_general",
    "spectral_steady_state",
    "x_ratio",
    "small_noise_law",
    "filtering_error",
    "oracle_run",
    "steady_state_estimate",
    "small_noise_slope",
]
