"""Covariance kernels of fractional Brownian motion and of the state process.

The state process is the fractional Ornstein-Uhlenbeck process

    X_t = int_0^t exp(beta (t - u)) dW_u,

driven by a fractional Brownian motion ``W`` with Hurst exponent ``h1``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate
from scipy.special import gamma

from .errors import DomainError, QuadratureError
from .params import ModelParams

__all__ = [
    "fbm_cov",
    "fgn_autocov",
    "fou_cov",
    "fou_stationary_variance",
]


def _check_hurst(h):
    if not (0.0 < h < 1.0):
        raise DomainError(f"Hurst exponent must lie in (0, 1), got {h!r}")


def fbm_cov(s, t, h):
    """Covariance of fractional Brownian motion.

    Args:
        s: First time (scalar or array), non-negative.
        t: Second time (scalar or array), non-negative.
        h: Hurst exponent in (0, 1).

    Returns:
        ``0.5 * (s**2h + t**2h - |s - t|**2h)`` with numpy broadcasting.
    """
    _check_hurst(h)
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(s < 0) or np.any(t < 0):
        raise DomainError("times must be non-negative")
    two_h = 2.0 * h
    out = 0.5 * (s**two_h + t**two_h - np.abs(s - t) ** two_h)
    return out[()] if out.ndim == 0 else out


def fgn_autocov(m, h):
    """Autocovariance of unit-step fractional Gaussian noise at integer lag ``m``.

    ``0.5 * (|m + 1|**2h + |m - 1|**2h - 2 |m|**2h)``; equals 1 at lag 0.
    """
    _check_hurst(h)
    m = np.abs(np.asarray(m, dtype=float))
    two_h = 2.0 * h
    out = 0.5 * ((m + 1.0) ** two_h + np.abs(m - 1.0) ** two_h - 2.0 * m**two_h)
    return out[()] if out.ndim == 0 else out


def fou_stationary_variance(h, beta):
    """Stationary variance ``Gamma(2h + 1) / (2 |beta|**2h)`` for ``beta < 0``."""
    _check_hurst(h)
    if not beta < 0:
        raise DomainError("the stationary variance exists only for beta < 0")
    return gamma(2.0 * h + 1.0) / (2.0 * abs(beta) ** (2.0 * h))


def _quad(f, a, b, points, epsabs, limit=200):
    """Adaptive quadrature on [a, b] split at interior breakpoints."""
    edges = [a] + sorted(p for p in points if a < p < b) + [b]
    total = 0.0
    err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi <= lo:
            continue
        val, e = integrate.quad(f, lo, hi, epsabs=epsabs, epsrel=1e-12, limit=limit)
        total += val
        err += e
    return total, err


def _exp_weighted_power(s, beta, two_h, epsabs):
    """``L_s[u**2h](s) = 2h int_0^s exp(beta (s - u)) u**(2h - 1) du``.

    This is ``u**2h`` pushed through the operator
    ``L_s f = f(s) + beta int_0^s exp(beta (s - u)) f(u) du`` after one
    integration by parts, which keeps the integrand positive.
    """
    if s == 0.0:
        return 0.0, 0.0
    if beta == 0.0:
        return s**two_h, 0.0
    # Substitute u = s * x**(1/2h) so that the integrand is smooth.
    inv = 1.0 / two_h

    def f(x):
        u = s * x**inv
        return math.exp(beta * (s - u))

    val, err = integrate.quad(f, 0.0, 1.0, epsabs=epsabs / max(s**two_h, 1e-300), epsrel=1e-13, limit=200)
    return s**two_h * val, s**two_h * err


def _one_sided(s, t, beta, two_h, epsabs):
    """``J(s, t) = int_0^s exp(beta (s - u)) |u - t|**2h du``."""
    if s == 0.0:
        return 0.0, 0.0
    return _quad(lambda u: math.exp(beta * (s - u)) * abs(u - t) ** two_h, 0.0, s, [t], epsabs)


def _two_sided(s, t, beta, two_h, epsabs):
    """``I(s, t) = int_0^s int_0^t exp(beta (s - u + t - v)) |u - v|**2h dv du``.

    With ``w = (t - v) - (s - u)`` and ``sigma = (t - v) + (s - u)`` the
    exponential weight integrates in closed form over ``sigma``, leaving a
    one-dimensional integral in ``w``.
    """
    if s == 0.0 or t == 0.0:
        return 0.0, 0.0
    d = s - t

    def weight(w):
        lo = abs(w)
        hi = min(2.0 * s + w, 2.0 * t - w)
        if hi <= lo:
            return 0.0
        if beta == 0.0:
            return hi - lo
        return math.exp(beta * lo) * math.expm1(beta * (hi - lo)) / beta

    val, err = _quad(lambda w: abs(d + w) ** two_h * weight(w), -s, t, [0.0, -d], epsabs)
    return 0.5 * val, 0.5 * err


def fou_cov(s, t, params: ModelParams, rtol: float = 1e-10):
    """Covariance ``K_X(s, t)`` of the fractional Ornstein-Uhlenbeck state.

    Writing ``X_t = L_t[W]`` with
    ``L_t f = f(t) + beta int_0^t exp(beta (t - u)) f(u) du`` gives
    ``K_X(s, t) = L_s L_t K_W(s, t)``. Applying the operator to the three
    terms of ``K_W`` separately yields continuous one-dimensional integrals
    for every ``h1`` in (0, 1).

    Args:
        s: First time, non-negative.
        t: Second time, non-negative.
        params: Model parameters; only ``h1`` and ``beta`` are used.
        rtol: Absolute tolerance relative to ``K_W(max(s,t), max(s,t))``.

    Raises:
        QuadratureError: If the combined error estimate exceeds the target.
    """
    s = float(s)
    t = float(t)
    if s < 0 or t < 0:
        raise DomainError("times must be non-negative")
    h = params.h1
    beta = params.beta
    two_h = 2.0 * h
    if beta == 0.0:
        return float(fbm_cov(s, t, h))
    if s == 0.0 or t == 0.0:
        return 0.0
    scale = max(s, t) ** two_h
    atol = rtol * scale
    # Individual pieces are integrated an order of magnitude tighter.
    sub = 0.1 * atol
    ls, e1 = _exp_weighted_power(s, beta, two_h, sub)
    lt, e2 = _exp_weighted_power(t, beta, two_h, sub)
    j_st, e3 = _one_sided(s, t, beta, two_h, sub)
    j_ts, e4 = _one_sided(t, s, beta, two_h, sub)
    i_st, e5 = _two_sided(s, t, beta, two_h, sub / max(beta * beta, 1e-300))
    d_term = abs(s - t) ** two_h + beta * (j_st + j_ts) + beta * beta * i_st
    value = 0.5 * (math.exp(beta * t) * ls + math.exp(beta * s) * lt - d_term)
    err = 0.5 * (
        math.exp(beta * t) * e1
        + math.exp(beta * s) * e2
        + abs(beta) * (e3 + e4)
        + beta * beta * e5
    )
    if err > atol * max(1.0, math.exp(beta * (s + t))):
        raise QuadratureError(f"fou_cov error estimate {err:.3g} exceeds target", estimate=err)
    return value
