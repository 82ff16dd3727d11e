"""Closed-form and semi-closed-form steady-state filtering errors.

Every evaluator returns the limit ``P_inf = lim_{T -> inf} P_T`` of the
optimal mean-squared filtering error for one parameter regime:

========================  ================================  ============
regime                    evaluator                         method tag
========================  ================================  ============
h1 = h2 = 1/2             :func:`kalman_bucy_steady`        classical
h1 = h2                   :func:`p_infinity_equal_hurst`    thm1
h2 = 1/2                  :func:`p_infinity_white_obs`      thm2
h2 = 1/2, beta < 0        :func:`spectral_steady_state`     spectral
h1 = 1/2, beta > 0        :func:`p_infinity_white_state`    thm3
h1 < h2, h2 > 1/2         :func:`p_infinity_general`        general
========================  ================================  ============
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import gamma

from .errors import DomainError, QuadratureError, RegimeError
from .params import HURST_ATOL, ModelParams, is_half
from .quadrature import (
    integrate_semi_infinite,
    log_gauss_rule,
    principal_value,
)
from .structural import (
    StructuralZero,
    find_zero,
    kappa_h,
    kappa_or_one,
    lambda_tilde_plus,
    theta_branch,
)

__all__ = [
    "SteadyStateResult",
    "SmallNoiseLaw",
    "METHODS",
    "kalman_bucy_steady",
    "riccati_error",
    "p_infinity_equal_hurst",
    "p_infinity_white_obs",
    "white_obs_bracket",
    "white_obs_bracket_beta0",
    "spectral_steady_state",
    "x_ratio",
    "x_values",
    "x_product_identity",
    "p_infinity_white_state",
    "p_infinity_general",
    "small_noise_law",
    "p_infinity",
]

METHODS = ("classical", "thm1", "thm2", "thm3", "general", "spectral")


@dataclass(frozen=True)
class SteadyStateResult:
    """Steady-state filtering error with provenance.

    Attributes:
        p_infinity: The limit error, positive.
        method: Which evaluator produced it (one of :data:`METHODS`).
        quad_error: Absolute error estimate of the quadratures involved.
        zero: The structural zero used, if any.
        diagnostics: Free-form extra numbers (imaginary residues etc.).
    """

    p_infinity: float
    method: str
    quad_error: float = 0.0
    zero: Optional[StructuralZero] = None
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SmallNoiseLaw:
    """Leading small-noise behaviour ``P ~ constant * eps**nu``."""

    nu: float
    constant: float


def _scale(params: ModelParams) -> float:
    """Length scale where the two terms of Lambda balance."""
    p = 2.0 + params.alpha2 - params.alpha1
    natural = params.mu_eps2 ** (1.0 / p) if p > 0 else 1.0
    return max(abs(params.beta), natural)


def _beta_breakpoints(params: ModelParams, scale: float) -> list:
    """``[|beta|]`` when it is resolvable relative to ``scale``, else ``[]``.

    The quadratures start their panels at ``scale * 1e-8``; a smaller
    ``|beta|`` has no visible feature to resolve.
    """
    b = abs(params.beta)
    return [b] if b > 1e-8 * scale else []


# ---------------------------------------------------------------------------
# Classical Kalman-Bucy
# ---------------------------------------------------------------------------


def _checked(result: SteadyStateResult, rel: float = 1e-2) -> SteadyStateResult:
    """Refuse results whose error estimate is a sizeable fraction of the value.

    The bracket forms subtract quantities of order one and divide by
    ``mu_eps**2``, so precision is lost for weak observations; for
    ``beta < 0`` the equal-exponent and spectral formulas stay accurate.
    """
    if not result.quad_error <= rel * abs(result.p_infinity):
        raise QuadratureError(
            f"{result.method}: error estimate {result.quad_error:.3g} exceeds {rel:g} of the value "
            f"{result.p_infinity:.6g} (weak observations lose precision in this form)",
            result.quad_error,
        )
    return result


def kalman_bucy_steady(beta: float, mu: float, eps: float) -> float:
    """Steady-state Riccati solution ``(beta + sqrt(beta**2 + mu**2/eps)) / (mu**2/eps)``."""
    if mu == 0 or not eps > 0:
        raise DomainError("need mu != 0 and eps > 0")
    g = mu * mu / eps
    root = math.hypot(beta, math.sqrt(g))
    if beta < 0:
        # Conjugate form avoids cancellation when |beta| dominates.
        return 1.0 / (root - beta)
    return (beta + root) / g


def riccati_error(T: float, beta: float, mu: float, eps: float, rtol: float = 1e-10) -> float:
    """Solve ``P' = 2 beta P + 1 - (mu**2/eps) P**2`` with ``P(0) = 0`` up to ``T``."""
    if T < 0:
        raise DomainError("T must be non-negative")
    if T == 0:
        return 0.0
    g = mu * mu / eps
    sol = solve_ivp(
        lambda _t, p: 2.0 * beta * p + 1.0 - g * p * p,
        (0.0, T),
        [0.0],
        method="RK45",
        rtol=rtol,
        atol=rtol * 1e-3,
    )
    if not sol.success:
        raise QuadratureError(f"Riccati integration failed: {sol.message}")
    return float(sol.y[0, -1])


# ---------------------------------------------------------------------------
# Equal Hurst exponents
# ---------------------------------------------------------------------------


def p_infinity_equal_hurst(params: ModelParams) -> SteadyStateResult:
    """Limit error for ``h1 == h2 == H``.

    ``0.5 Gamma(2H+1) t0**(-2H) (1 + sin(pi H) (t0 + beta)/(t0 - beta))``
    with ``t0 = sqrt(beta**2 + mu_eps**2)``.
    """
    if not params.equal_hurst:
        raise RegimeError("p_infinity_equal_hurst requires h1 == h2")
    h = params.h1
    beta = params.beta
    t0 = math.hypot(beta, params.mu_eps)
    # (t0 + beta)/(t0 - beta) = (t0 + beta)**2 / mu_eps**2 avoids cancellation
    # when beta > 0 and mu_eps is small.
    ratio = (t0 + beta) ** 2 / params.mu_eps2
    value = 0.5 * gamma(2.0 * h + 1.0) * t0 ** (-2.0 * h) * (1.0 + math.sin(math.pi * h) * ratio)
    return SteadyStateResult(float(value), "thm1", 0.0, StructuralZero("real_pair", complex(t0)))


# ---------------------------------------------------------------------------
# White observation noise (h2 = 1/2)
# ---------------------------------------------------------------------------


def white_obs_bracket(params: ModelParams, tol: float = 1e-10):
    """``(1/pi) int_0^inf theta dt + 2 Re z0 [h1 > 1/2]`` for ``h2 = 1/2``.

    Returns:
        ``(value, abs_error, zero)``.
    """
    if not is_half(params.h2):
        raise RegimeError("white observation noise requires h2 = 1/2")
    if is_half(params.h1):
        raise RegimeError("h1 = 1/2 is the classical case")
    branch = theta_branch(params)
    scale = _scale(params)
    bps = _beta_breakpoints(params, scale)
    res = integrate_semi_infinite(
        lambda t: float(branch(t)), branch.decay_exponent, tol=tol, scale=scale, breakpoints=bps
    )
    value = res.value / math.pi
    zero = find_zero(params) if params.h1 > 0.5 else StructuralZero("none")
    if zero.kind == "complex_quadruple":
        value += 2.0 * zero.z0.real
    return value, res.abs_error_estimate / math.pi, zero


def white_obs_bracket_beta0(h1: float, mu_eps: float) -> float:
    """Closed form of :func:`white_obs_bracket` at ``beta = 0``.

    ``kappa(h1)**(1/(2h1+1)) / sin(pi/(2h1+1)) * mu_eps**(2/(2h1+1))``.
    """
    e = 1.0 / (2.0 * h1 + 1.0)
    return kappa_h(h1) ** e / math.sin(math.pi * e) * abs(mu_eps) ** (2.0 * e)


def p_infinity_white_obs(params: ModelParams, tol: float = 1e-10) -> SteadyStateResult:
    """Limit error for white observation noise, ``h2 = 1/2``, ``h1 != 1/2``.

    ``(eps/mu**2) ((1/pi) int theta + beta + 2 Re z0 [h1 > 1/2])``.
    """
    bracket, err, zero = white_obs_bracket(params, tol)
    value = (bracket + params.beta) / params.mu_eps2
    return _checked(SteadyStateResult(value, "thm2", err / params.mu_eps2, zero))


def spectral_steady_state(params: ModelParams, tol: float = 1e-10) -> SteadyStateResult:
    """Stationary (Wiener) filtering error for ``h2 = 1/2`` and ``beta < 0``.

    ``(eps/mu**2) (1/pi) int_0^inf log(1 + mu_eps**2 kappa(h1)
    w**(1-2h1) / (beta**2 + w**2)) dw``.
    """
    if not is_half(params.h2):
        raise RegimeError("the spectral formula requires h2 = 1/2")
    if not params.beta < 0:
        raise RegimeError("the spectral formula requires beta < 0")
    h1 = params.h1
    c = params.mu_eps2 * kappa_h(h1)
    b2 = params.beta**2

    m2 = params.mu_eps2

    def f(w):
        # Normalized by mu_eps**2 so that ``tol`` acts on the scale of P.
        return math.log1p(c * w ** (1.0 - 2.0 * h1) / (b2 + w * w)) / m2

    scale = _scale(params)
    res = integrate_semi_infinite(f, 1.0 + 2.0 * h1, tol=tol, scale=scale, breakpoints=_beta_breakpoints(params, scale))
    return SteadyStateResult(res.value / math.pi, "spectral", res.abs_error_estimate / math.pi)


# ---------------------------------------------------------------------------
# White state noise (h1 = 1/2): the canonical function X
# ---------------------------------------------------------------------------


def _check_white_state(params: ModelParams):
    if not is_half(params.h1):
        raise RegimeError("this evaluator requires h1 = 1/2")
    if is_half(params.h2):
        raise RegimeError("h2 = 1/2 is the classical case")
    if not params.beta > 0:
        raise RegimeError("X(beta) is defined for beta > 0 only")


def _x_index(params: ModelParams) -> int:
    """Integer ``k`` fixing the growth of X: +1 for h2 > 1/2, -1 for h2 < 1/2."""
    return 1 if params.h2 > 0.5 else -1


def _j_integral(params: ModelParams, tol: float):
    """``J`` of :func:`x_ratio` and its absolute error estimate.

    ``PV int_0^inf c/(t**2 - beta**2) dt = 0`` for any constant ``c``, so
    the value at the pole, ``c = theta(beta) - theta(inf)``, is subtracted
    first. The remaining integrand is bounded, whereas the raw one is of
    order ``1/beta`` near the pole while ``J/beta`` stays bounded, which
    loses all precision as ``beta -> 0``.
    """
    branch = theta_branch(params)
    beta = params.beta
    c = float(branch.tilde(beta))

    def f(t):
        return (float(branch.tilde(t)) - c) / (t * t - beta * beta)

    res = principal_value(f, beta, 2.0, tol=tol, scale=max(beta, _scale(params)))
    return 2.0 * beta / math.pi * res.value, 2.0 * beta / math.pi * res.abs_error_estimate


def x_ratio(params: ModelParams, tol: float = 1e-12):
    """``X(-beta) / X(beta)`` for ``h1 = 1/2``, ``beta > 0``.

    Uses ``X(beta)/X(-beta) = exp(J)`` with
    ``J = (2 beta/pi) PV int_0^inf (theta(t) - theta(inf)) / (t**2 - beta**2) dt``,
    which converges for every ``h2`` because the constant part of theta has
    been removed.

    Returns:
        ``(ratio, abs_error_of_J)``.
    """
    _check_white_state(params)
    j, err = _j_integral(params, tol)
    return math.exp(-j), err


def x_values(params: ModelParams, tol: float = 1e-12):
    """Evaluate ``X(beta)`` and ``X(-beta)`` directly from their Cauchy integrals.

    ``X(z) = (-z)**(k - theta(inf)/pi) exp((1/pi) int_0^inf
    (theta(t) - theta(inf)) / (t - z) dt)``; at ``z = beta`` on the cut the
    integral is a principal value and the common modulus of the two boundary
    values is returned.
    """
    _check_white_state(params)
    branch = theta_branch(params)
    beta = params.beta
    power = _x_index(params) - branch.theta_infinity / math.pi
    p = branch.decay_exponent + 1.0
    scale = max(beta, _scale(params))
    pv = principal_value(lambda t: float(branch.tilde(t)) / (t - beta), beta, p, tol=tol, scale=scale)
    reg = integrate_semi_infinite(
        lambda t: float(branch.tilde(t)) / (t + beta), p, tol=tol, scale=scale, breakpoints=[beta]
    )
    x_plus = beta**power * math.exp(pv.value / math.pi)
    x_minus = beta**power * math.exp(reg.value / math.pi)
    return x_plus, x_minus


def x_product_identity(params: ModelParams) -> float:
    """Right side of ``X(beta) X(-beta) = (mu_eps**2/kappa(h2)) |beta**2 - z0**2|**(-2 [h2 < 1/2])``."""
    _check_white_state(params)
    value = params.mu_eps2 / kappa_h(params.h2)
    if params.h2 < 0.5:
        z0 = find_zero(params).z0
        value /= abs(params.beta**2 - z0 * z0) ** 2
    return value


def p_infinity_white_state(params: ModelParams, tol: float = 1e-12) -> SteadyStateResult:
    """Limit error for white state noise, ``h1 = 1/2``, ``h2 != 1/2``, ``beta > 0``.

    ``(1/(2 beta)) (X(-beta)/X(beta) |(z0+beta)/(z0-beta)|**(2 [h2<1/2]) - 1)``.
    """
    _check_white_state(params)
    beta = params.beta
    j, j_err = _j_integral(params, tol)
    log_ratio = -j
    zero = StructuralZero("none")
    if params.h2 < 0.5:
        zero = find_zero(params)
        z0 = zero.z0
        # log|(1 + w)/(1 - w)| with w = beta/z0, accurate for small beta.
        w = beta / z0
        ww = abs(w) ** 2
        log_ratio += math.log1p(2.0 * w.real + ww) - math.log1p(-2.0 * w.real + ww)
    value = math.expm1(log_ratio) / (2.0 * beta)
    err = math.exp(log_ratio) * j_err / (2.0 * beta)
    return _checked(SteadyStateResult(value, "thm3", err, zero))


# ---------------------------------------------------------------------------
# General no-zero regime: h1 < h2, h2 > 1/2
# ---------------------------------------------------------------------------


def _fit_power(x0, f0, x1, f1):
    """Exponent ``e`` of ``f ~ x**e`` from two samples."""
    return math.log(abs(f1) / abs(f0)) / math.log(x1 / x0)


def p_infinity_general(
    params: ModelParams,
    y_lo: float = -25.0,
    y_hi: float = 18.0,
    inner_margin: tuple = (10.0, 30.0),
) -> SteadyStateResult:
    """Limit error for ``h1 < h2`` and ``h2 > 1/2`` (Lambda has no zeros).

    The limit is ``(1/2 pi i) int_0^inf (N2^+ - N2^-)(t) B^+(t) dt`` with

        B(z) = (z - beta) X(z) Q(z) / (mu_eps Lambda(z)) - N1(z)/Lambda(z),

    ``X`` the canonical function with ``k = 1`` and ``Q`` the Cauchy integral
    of the jump of ``N2 (z + beta) / (mu_eps X)`` across the positive axis.
    Two reductions make this computable without principal values:

    * ``N2 (z + beta) / (mu_eps X)`` minus ``Q`` only jumps on the negative
      axis, where ``X`` is real, so
      ``Q(z) = psi(z) + C R(z)`` with ``psi = N2 (z + beta) / (mu_eps X)``,
      ``C = kappa2 sin(a pi/2) / (pi mu_eps)``, ``a = alpha2 - 1`` and
      ``R(z) = int_0^inf s**a (beta - s) / (X(-s) (s + z)) ds``. Substituting
      gives ``B(z) = 1/mu_eps**2 + (z - beta) X(z) C R(z) / (mu_eps Lambda(z))``.
    * ``(N2^+ - N2^-)(t) = -2i kappa2 sin(a pi/2) t**a`` continues
      analytically to the upper half plane, and so does ``B``, so the
      contour is rotated onto the positive imaginary axis.

    All inner integrals share one composite log-Gauss rule; the outer
    integral gets power-law tails at both ends.

    Args:
        params: Parameters with ``h1 < h2`` and ``h2 > 1/2``.
        y_lo, y_hi: Outer range ``scale * e**y_lo .. scale * e**y_hi``.
        inner_margin: How far (in ``log t``) the inner rule extends beyond
            the outer range on each side.
    """
    if not (params.h1 < params.h2 - HURST_ATOL and params.h2 > 0.5 + HURST_ATOL):
        raise RegimeError("p_infinity_general requires h1 < h2 and h2 > 1/2")
    a1, a2 = params.alpha1, params.alpha2
    beta = params.beta
    m2 = params.mu_eps2
    me = math.sqrt(m2)
    branch = theta_branch(params)
    theta_inf = branch.theta_infinity
    scale = _scale(params)

    t_lo = y_lo - inner_margin[0]
    t_hi = y_hi + inner_margin[1]
    focus = focus_width = None
    if scale * math.exp(t_lo) < abs(beta) < scale * math.exp(t_hi):
        # theta turns by about pi across t = |beta| over a relative width of
        # about |Im lambda_tilde_plus(|beta|)| / 2; grade the rule towards it.
        focus = abs(beta)
        spread = abs(complex(lambda_tilde_plus(focus, params)).imag) / 2.0
        focus_width = min(max(spread / 4.0, 1e-8), 0.5)
    t, w = log_gauss_rule(scale, t_lo, t_hi, focus=focus, focus_width=focus_width)
    t_min = scale * math.exp(t_lo)
    t_max = scale * math.exp(t_hi)
    tt = branch.tilde(t)
    c0 = tt[0]
    power = 1.0 - theta_inf / math.pi

    def log_x(z):
        # Cauchy integral of theta - theta_inf, with theta frozen at its
        # first node below the rule.
        z = np.asarray(z, dtype=complex)
        out = np.empty(z.shape, dtype=complex)
        for i in range(0, z.size, 256):
            zc = z[i:i + 256]
            s = (w * tt / (t - zc[:, None])).sum(axis=1)
            s += c0 * np.log((t_min - zc) / (-zc))
            out[i:i + 256] = power * np.log(-zc) + s / math.pi
        return out

    x_neg = np.exp(log_x(-t).real)
    k2 = kappa_or_one(a2)
    a = a2 - 1.0
    sin_a = math.sin(0.5 * a * math.pi)
    c_const = k2 * sin_a / (math.pi * me)
    f = t**a * (beta - t) / x_neg
    # Algebraic behaviour of f at both ends of the rule, fitted one panel in.
    q_lo = _fit_power(t[0], f[0], t[16], f[16])
    q_hi = _fit_power(t[-17], f[-17], t[-1], f[-1])
    f_lo = f[0] * (t_min / t[0]) ** q_lo
    f_hi = f[-1] * (t_max / t[-1]) ** q_hi

    def r_fn(z):
        out = np.empty(z.shape, dtype=complex)
        for i in range(0, z.size, 256):
            zc = z[i:i + 256]
            main = (w * f / (t + zc[:, None])).sum(axis=1)
            # Tails with f ~ s**q and 1/(s + z) ~ 1/z (below) or 1/s (above).
            lower = f_lo * t_min / ((q_lo + 1.0) * zc)
            upper = -f_hi * t_max / ((q_hi) * (t_max + zc))
            out[i:i + 256] = main + lower + upper
        return out

    y, wy = log_gauss_rule(scale, y_lo, y_hi)
    z = 1j * y
    n2 = k2 * y ** (a2 - 1.0)
    n1 = kappa_or_one(a1) * y ** (a1 - 1.0)
    lam = (z * z - beta * beta) * n2 - m2 * n1
    bfun = 1.0 / m2 + (z - beta) * np.exp(log_x(z)) * c_const * r_fn(z) / (me * lam)
    g = -2j * k2 * sin_a * (y**a * np.exp(0.5j * a * math.pi)) * bfun

    body = np.sum(wy * g)
    # Lower tail: single fitted power.
    y_min = scale * math.exp(y_lo)
    e_lo = _fit_power(y[0], g[0], y[16], g[16])
    lower = g[0] * (y_min / y[0]) ** e_lo * y_min / (e_lo + 1.0)
    # Upper tail: the two leading algebraic orders.
    y_max = scale * math.exp(y_hi)
    e1 = 0.5 * (a2 - 3.0)
    e2 = a - (2.0 + a2 - a1)
    yy = y[-64:] / y_max
    if abs(e1 - e2) > 0.05:
        basis = np.stack([yy**e1, yy**e2], axis=1)
        integrals = np.array([-1.0 / (e1 + 1.0), -1.0 / (e2 + 1.0)])
    else:
        basis = np.stack([yy**e1, yy**e1 * np.log(yy)], axis=1)
        integrals = np.array([-1.0 / (e1 + 1.0), 1.0 / (e1 + 1.0) ** 2])
    coef = np.linalg.lstsq(basis, g[-64:], rcond=None)[0]
    upper = y_max * np.dot(coef, integrals)
    total = (body + lower + upper) / (2.0 * math.pi)

    # Error proxy: size of the extrapolated tails relative to the fit misfit.
    misfit = np.max(np.abs(basis @ coef - g[-64:])) / max(np.max(np.abs(g[-64:])), 1e-300)
    err = abs(lower) / (2 * math.pi) * 1e-3 + abs(upper) / (2 * math.pi) * misfit
    value = float(total.real)
    diag = {"imag_residue": float(abs(total.imag)), "tail_upper": float(abs(upper.real) / (2 * math.pi))}
    if not value > 0:
        raise QuadratureError("general formula produced a non-positive value", err)
    return _checked(SteadyStateResult(value, "general", float(err), StructuralZero("none"), diag))


# ---------------------------------------------------------------------------
# Small-noise law and dispatch
# ---------------------------------------------------------------------------


def small_noise_law(params: ModelParams) -> SmallNoiseLaw:
    """Exponent ``nu = h1/(1 + h1 - h2)`` and coefficient of ``eps**nu``.

    The coefficient is the limit error at ``beta = 0`` and ``eps = 1``
    (``mu`` kept), evaluated by whichever closed form covers the regime.
    """
    h1, h2, mu = params.h1, params.h2, params.mu
    nu = h1 / (1.0 + h1 - h2)
    if params.equal_hurst:
        h = h1
        const = 0.5 * gamma(2 * h + 1) * (1 + math.sin(math.pi * h)) * abs(mu) ** (-2 * h)
    elif is_half(h2):
        const = white_obs_bracket_beta0(h1, mu) / (mu * mu)
    elif is_half(h1):
        e = 1.0 / (3.0 - 2.0 * h2)
        const = kappa_h(h2) ** e / math.sin(math.pi * e) * abs(mu) ** (-2.0 * e)
    elif h1 < h2 and h2 > 0.5:
        const = p_infinity_general(params.replace(beta=0.0, eps=1.0)).p_infinity
    else:
        raise RegimeError("no closed form implemented for the small-noise constant; use oracle")
    return SmallNoiseLaw(nu, float(const))


def p_infinity(params: ModelParams, method: str = "auto", tol: Optional[float] = None) -> SteadyStateResult:
    """Dispatch to the closed form covering ``params``.

    Order: equal exponents (classical when both are 1/2), white observation
    noise, white state noise with ``beta > 0``, the general no-zero regime.
    ``method`` forces a specific evaluator; its regime checks still apply.
    ``tol`` is forwarded to the quadrature-based evaluators that accept one.

    Raises:
        RegimeError: When no evaluator covers the parameters.
    """
    if method == "auto":
        if params.equal_hurst:
            method = "classical" if is_half(params.h1) else "thm1"
        elif is_half(params.h2):
            method = "thm2"
        elif is_half(params.h1) and params.beta > 0:
            method = "thm3"
        elif params.h1 < params.h2 and params.h2 > 0.5:
            method = "general"
        else:
            raise RegimeError("no closed form implemented; use oracle")
    if method == "classical":
        if not (is_half(params.h1) and is_half(params.h2)):
            raise RegimeError("the classical formula requires h1 = h2 = 1/2")
        value = kalman_bucy_steady(params.beta, params.mu, params.eps)
        return SteadyStateResult(value, "classical")
    if method == "thm1":
        return p_infinity_equal_hurst(params)
    kw = {} if tol is None else {"tol": tol}
    if method == "thm2":
        return p_infinity_white_obs(params, **kw)
    if method == "thm3":
        return p_infinity_white_state(params, **kw)
    if method == "general":
        return p_infinity_general(params)
    if method == "spectral":
        return spectral_steady_state(params, **kw)
    raise DomainError(f"unknown method {method!r}")
