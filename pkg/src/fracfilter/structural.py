"""The structural function Lambda, its zeros and its boundary argument.

With ``alpha_j = 2 - 2 h_j`` and

    N_alpha(z) = kappa_alpha (z / i)**(alpha - 1)     for Im z > 0,
    N_alpha(z) = kappa_alpha (-z / i)**(alpha - 1)    for Im z < 0,

the structural function is

    Lambda(z) = (z**2 - beta**2) N_{alpha2}(z) - mu_eps**2 N_{alpha1}(z).

The zero set of Lambda depends only on the ordering of ``h1`` and ``h2``:
no zeros for ``h1 < h2``, a real pair ``+-t0`` for ``h1 == h2`` and a
symmetric quadruple of complex zeros for ``h1 > h2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq
from scipy.special import gamma

from .errors import ConvergenceError, DomainError
from .params import HURST_ATOL, ModelParams

__all__ = [
    "StructuralZero",
    "ThetaBranch",
    "kappa_h",
    "kappa_alpha",
    "kappa_or_one",
    "n_alpha",
    "n_alpha_boundary",
    "lambda_fn",
    "lambda_hurst_form",
    "lambda_tilde_plus",
    "find_zero",
    "theta_branch",
]


def kappa_h(h: float) -> float:
    """``Gamma(2h + 1) sin(pi h)``, positive on (0, 1)."""
    if not (0.0 < h < 1.0):
        raise DomainError(f"h must lie in (0, 1), got {h!r}")
    return float(gamma(2.0 * h + 1.0) * math.sin(math.pi * h))


def kappa_alpha(alpha: float) -> float:
    """``(1 - a)(1 - a/2) pi / (Gamma(a) cos(a pi / 2))`` for ``a`` in (0, 2), ``a != 1``.

    The removable singularity at ``a = 1`` (limit value 1) is not evaluated;
    callers treat ``N_1`` as the constant 1.
    """
    if not (0.0 < alpha < 2.0):
        raise DomainError(f"alpha must lie in (0, 2), got {alpha!r}")
    if alpha == 1.0:
        raise DomainError("kappa_alpha is not evaluated at alpha = 1; N_1 is identically 1")
    a = alpha
    return float((1.0 - a) * (1.0 - 0.5 * a) * math.pi / (gamma(a) * math.cos(0.5 * a * math.pi)))


def kappa_or_one(alpha: float) -> float:
    """``kappa_alpha`` with the white-noise value 1 substituted at ``alpha = 1``."""
    if abs(alpha - 1.0) <= 2 * HURST_ATOL:
        return 1.0
    return kappa_alpha(alpha)


def _is_one(alpha):
    return abs(alpha - 1.0) <= 2 * HURST_ATOL


def n_alpha(z, alpha: float):
    """Evaluate ``N_alpha`` off the real axis (vectorized over ``z``)."""
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag == 0):
        raise DomainError("n_alpha needs Im z != 0; use n_alpha_boundary on the real axis")
    if _is_one(alpha):
        out = np.ones_like(z)
    else:
        w = np.where(z.imag > 0, z / 1j, -z / 1j)
        out = kappa_alpha(alpha) * w ** (alpha - 1.0)
    return out[()] if out.ndim == 0 else out


def n_alpha_boundary(t, alpha: float, side: int = 1):
    """Boundary value ``N_alpha^{+-}(t)`` for real ``t != 0``.

    ``side=+1`` is the limit from the upper half plane, ``side=-1`` from the
    lower one. The two are complex conjugates of each other.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t == 0):
        raise DomainError("boundary values are taken at t != 0")
    if side not in (1, -1):
        raise DomainError("side must be +1 or -1")
    if _is_one(alpha):
        out = np.ones(t.shape, dtype=complex)
    else:
        # (t/i)**(a-1) from above: |t|**(a-1) * exp(i (a-1) arg(t/i)),
        # with arg(t/i) = -pi/2 for t > 0 and +pi/2 for t < 0.
        phase = np.where(t > 0, -0.5 * math.pi, 0.5 * math.pi) * side
        out = kappa_alpha(alpha) * np.abs(t) ** (alpha - 1.0) * np.exp(1j * (alpha - 1.0) * phase)
    return out[()] if out.ndim == 0 else out


def lambda_fn(z, params: ModelParams, side: Optional[int] = None):
    """Structural function ``Lambda(z)``.

    Args:
        z: Complex points off the real axis, or real points when ``side`` is set.
        params: Model parameters.
        side: ``None`` for interior evaluation; ``+1``/``-1`` for the boundary
            values ``Lambda^{+-}`` on the real axis.
    """
    b2 = params.beta**2
    m2 = params.mu_eps2
    if side is None:
        z = np.asarray(z, dtype=complex)
        out = (z * z - b2) * n_alpha(z, params.alpha2) - m2 * n_alpha(z, params.alpha1)
    else:
        t = np.asarray(z, dtype=float)
        out = (t * t - b2) * n_alpha_boundary(t, params.alpha2, side) - m2 * n_alpha_boundary(
            t, params.alpha1, side
        )
    out = np.asarray(out)
    return out[()] if out.ndim == 0 else out


def lambda_hurst_form(z, params: ModelParams):
    """``Lambda`` written with ``kappa(H)`` and powers ``(z/i)**(1 - 2H)``.

    Mathematically identical to :func:`lambda_fn`; kept as an independent
    evaluation route for consistency checks.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag == 0):
        raise DomainError("lambda_hurst_form needs Im z != 0")
    w = np.where(z.imag > 0, z / 1j, -z / 1j)
    h1, h2 = params.h1, params.h2
    out = (z * z - params.beta**2) * kappa_h(h2) * w ** (1.0 - 2.0 * h2) - params.mu_eps2 * kappa_h(
        h1
    ) * w ** (1.0 - 2.0 * h1)
    return out[()] if out.ndim == 0 else out


def lambda_tilde_plus(t, params: ModelParams):
    """``Lambda^+(t) / (t**2 N_{alpha2}^+(t))`` for ``t > 0``.

    Equal to ``1 - beta**2/t**2 - mu_eps**2 N1^+/(t**2 N2^+)``; its imaginary
    part has a fixed sign whenever ``h1 != h2``, so its principal argument is
    continuous on the half line.
    """
    t = np.asarray(t, dtype=float)
    a1, a2 = params.alpha1, params.alpha2
    ratio = kappa_or_one(a1) / kappa_or_one(a2)
    corr = params.mu_eps2 * ratio * t ** (a1 - a2 - 2.0) * np.exp(0.5j * math.pi * (a2 - a1))
    out = 1.0 - params.beta**2 / (t * t) - corr
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Zeros
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructuralZero:
    """Location of the zero of ``Lambda`` in the closed first quadrant.

    Attributes:
        kind: ``"none"``, ``"real_pair"`` or ``"complex_quadruple"``.
        z0: The zero (``None`` when ``kind == "none"``).
        residual: ``|Lambda(z0)| / (|z0|**2 |N_{alpha2}(z0)|)``.
    """

    kind: str
    z0: Optional[complex] = None
    residual: float = 0.0


def _lambda_upper(z: complex, params: ModelParams) -> complex:
    """Lambda and its derivative at a point of the open upper half plane."""
    a1, a2 = params.alpha1, params.alpha2
    n1 = complex(n_alpha(z, a1))
    n2 = complex(n_alpha(z, a2))
    b2 = params.beta**2
    m2 = params.mu_eps2
    lam = (z * z - b2) * n2 - m2 * n1
    dlam = 2.0 * z * n2 + (z * z - b2) * (a2 - 1.0) * n2 / z - m2 * (a1 - 1.0) * n1 / z
    return lam, dlam


def _normalized_residual(z: complex, params: ModelParams) -> float:
    lam, _ = _lambda_upper(z, params)
    return abs(lam) / (abs(z) ** 2 * abs(complex(n_alpha(z, params.alpha2))))


def find_zero(params: ModelParams, newton_steps: int = 30) -> StructuralZero:
    """Locate the zero of ``Lambda`` in the first quadrant.

    For ``h1 > h2`` the zero ``z0 = rho exp(i phi)`` is found by writing
    ``phi = pi/2 - u`` and reducing ``Lambda(z0) = 0`` to a monotone scalar
    equation in ``u`` on ``(0, pi/2)``, solved by bracketing; ``rho`` then
    follows explicitly and a damped Newton iteration on ``Lambda`` polishes
    the result to full precision.
    """
    if params.h1 < params.h2 - HURST_ATOL:
        return StructuralZero("none")
    if params.equal_hurst:
        return StructuralZero("real_pair", complex(math.hypot(params.beta, params.mu_eps)), 0.0)

    a1, a2 = params.alpha1, params.alpha2
    d = a2 - a1  # positive when h1 > h2
    c = params.mu_eps2 * kappa_or_one(a1) / kappa_or_one(a2)
    e = 2.0 + d
    rhs = -(params.beta**2) * c ** (-2.0 / e)

    def g(u):
        return (
            math.sin(u * d) ** (-d / e) * math.sin(2.0 * u) ** (-2.0 / e) * math.sin(u * e) - rhs
        )

    lo = 1e-12
    if g(lo) <= 0:
        raise ConvergenceError("zero bracket not found at the left end")
    hi = None
    for k in range(2, 17):
        cand = 0.5 * math.pi - 10.0**-k
        if g(cand) < 0:
            hi = cand
            break
    if hi is None:
        raise ConvergenceError("zero bracket not found at the right end")
    u = brentq(g, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=500)
    rho = (c * math.sin(u * d) / math.sin(2.0 * u)) ** (1.0 / e)
    z = rho * complex(math.cos(0.5 * math.pi - u), math.sin(0.5 * math.pi - u))

    # Damped Newton polishing.
    lam, dlam = _lambda_upper(z, params)
    for _ in range(newton_steps):
        if lam == 0 or dlam == 0:
            break
        step = lam / dlam
        damp = 1.0
        while damp > 1e-4:
            cand = z - damp * step
            if cand.imag > 0:
                lam_c, dlam_c = _lambda_upper(cand, params)
                if abs(lam_c) < abs(lam):
                    break
            damp *= 0.5
        else:
            break
        z, lam, dlam = cand, lam_c, dlam_c
        if abs(step) * damp <= 1e-16 * abs(z):
            break
    return StructuralZero("complex_quadruple", z, _normalized_residual(z, params))


# ---------------------------------------------------------------------------
# Argument branch
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaBranch:
    """Continuous argument ``theta(t)`` of ``Lambda^+(t)`` on ``(0, inf)``.

    Attributes:
        theta_at: Vectorized evaluator ``t -> theta(t)`` in radians.
        theta_zero_plus: The limit at ``0+``.
        theta_infinity: The limit at infinity, in ``[-pi, pi]``.
        decay_exponent: ``p`` with ``theta(t) - theta_infinity = O(t**-p)``.
        tilde_at: Evaluator of ``theta(t) - theta_infinity`` without the
            cancellation of the subtraction; ``None`` falls back to it.
    """

    theta_at: Callable
    theta_zero_plus: float
    theta_infinity: float
    decay_exponent: float
    tilde_at: Optional[Callable] = None

    def __call__(self, t):
        return self.theta_at(t)

    def tilde(self, t):
        """``theta(t) - theta_infinity``, the decaying part."""
        if self.tilde_at is not None:
            return self.tilde_at(t)
        return self.theta_at(t) - self.theta_infinity


def theta_branch(params: ModelParams) -> ThetaBranch:
    """Build the continuous argument branch of ``Lambda^+``.

    Since ``Lambda^+(t) = t**2 N2^+(t) * lambda_tilde_plus(t)`` and
    ``arg N2^+(t) = (1 - alpha2) pi / 2`` is constant, the branch is
    ``theta(t) = (1 - alpha2) pi/2 + Arg(lambda_tilde_plus(t))``. The
    principal argument never wraps because ``Im lambda_tilde_plus`` keeps a
    fixed sign for ``h1 != h2``, and ``lambda_tilde_plus -> 1`` at infinity
    anchors the branch there.

    Raises:
        DomainError: For ``h1 == h2``, where ``Lambda^+`` vanishes at ``t0``
            and no continuous argument exists.
    """
    if params.equal_hurst:
        raise DomainError("theta is undefined for h1 == h2: Lambda^+ vanishes at t0")
    a1, a2 = params.alpha1, params.alpha2
    theta_inf = 0.5 * (1.0 - a2) * math.pi
    if a1 > a2:
        if params.beta != 0.0:
            theta_0 = theta_inf + math.pi
        else:
            theta_0 = 0.5 * (1.0 - a1) * math.pi + math.pi
    else:
        theta_0 = 0.5 * (1.0 - a1) * math.pi - math.pi

    def tilde_at(t):
        return np.angle(lambda_tilde_plus(t, params))

    def theta_at(t):
        return theta_inf + tilde_at(t)

    return ThetaBranch(theta_at, theta_0, theta_inf, 2.0 + a2 - a1, tilde_at)
