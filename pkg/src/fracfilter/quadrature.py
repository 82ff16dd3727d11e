"""Quadrature for improper integrals with algebraic tails and simple poles.

Adaptive work is delegated to :func:`scipy.integrate.quad`; this module adds
panelling over decades, an analytic power-law tail and symmetric pairing
around a pole. A fixed composite Gauss-Legendre rule in ``log t`` is also
provided for the nested Cauchy-type integrals of the closed forms, where the
same nodes are reused many times.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate

from .errors import DomainError, QuadratureError

__all__ = [
    "QuadratureResult",
    "integrate_semi_infinite",
    "principal_value",
    "log_gauss_rule",
    "power_tail",
]

#: Decay exponents at or above this value are treated as "faster than any power".
FAST_DECAY = 50.0


@dataclass(frozen=True)
class QuadratureResult:
    """Value of an integral with its absolute error estimate.

    Attributes:
        value: The integral (real or complex).
        abs_error_estimate: Non-negative error bound estimate.
        evaluations: Number of integrand evaluations used.
    """

    value: complex | float
    abs_error_estimate: float
    evaluations: int


def _quad_panel(f, a, b, tol, limit, complex_func):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            out = integrate.quad(
                f, a, b, epsabs=tol, epsrel=1e-13, limit=limit, full_output=True,
                complex_func=complex_func,
            )
        except integrate.IntegrationWarning:
            # Fall back to the best available answer; the caller decides
            # whether the reported error is acceptable.
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", integrate.IntegrationWarning)
                out = integrate.quad(
                    f, a, b, epsabs=tol, epsrel=1e-13, limit=limit, full_output=True,
                    complex_func=complex_func,
                )
    val, err, info = out[0], out[1], out[2]
    if complex_func:
        neval = info["real"][0]["neval"] + info["imag"][0]["neval"]
    else:
        neval = info["neval"]
    return val, err, neval


def integrate_semi_infinite(
    f: Callable[[float], float],
    decay_exponent: float,
    tol: float = 1e-9,
    scale: float = 1.0,
    breakpoints: Sequence[float] = (),
    max_decades: int = 60,
    limit: int = 200,
    complex_func: bool = False,
) -> QuadratureResult:
    """Integrate ``f`` over ``(0, inf)``.

    The half line is cut into decades ``scale * 10**k``. Panels are added
    until the analytic tail ``C T**(1 - p) / (p - 1)``, with ``C`` fitted from
    ``f`` in the last decade, drops below the tolerance. Integrable algebraic
    singularities at 0 are handled by the first panel.

    Args:
        f: Integrand; must accept a float.
        decay_exponent: ``p > 1`` with ``|f(t)| = O(t**-p)``. Values of
            :data:`FAST_DECAY` or more switch the tail model off.
        tol: Target absolute error.
        scale: Natural length scale of ``f``; decades are placed around it.
        breakpoints: Extra interior points where ``f`` is not smooth.
        max_decades: Panel budget beyond ``scale``.

    Raises:
        QuadratureError: If the tail is still above ``tol`` after the budget.
    """
    p = float(decay_exponent)
    if not p > 1.0:
        raise DomainError("decay_exponent must exceed 1")
    if not scale > 0:
        raise DomainError("scale must be positive")
    edges = [0.0] + [scale * 10.0**k for k in range(-8, 1)]
    edges = sorted(set(edges) | {b for b in breakpoints if 0 < b < scale})
    panel_tol = tol / 64.0
    total = 0.0
    err = 0.0
    neval = 0
    for a, b in zip(edges[:-1], edges[1:]):
        v, e, n = _quad_panel(f, a, b, panel_tol, limit, complex_func)
        total += v
        err += e
        neval += n
    upper = sorted(b for b in breakpoints if b > scale)
    t_hi = scale
    for k in range(1, max_decades + 1):
        nxt = scale * 10.0**k
        stops = [b for b in upper if t_hi < b < nxt] + [nxt]
        for b in stops:
            v, e, n = _quad_panel(f, t_hi, b, panel_tol, limit, complex_func)
            total += v
            err += e
            neval += n
            t_hi = b
        if p >= FAST_DECAY:
            if abs(v) + e < panel_tol and k > 1:
                return QuadratureResult(total, err, neval)
            continue
        tail, tail_err = power_tail(f, t_hi, p)
        neval += 2
        if abs(tail) + tail_err < tol / 4.0 or (tail_err < tol / 4.0 and k > 2):
            total += tail
            err += tail_err
            return QuadratureResult(total, err, neval)
    raise QuadratureError("semi-infinite integral did not converge within the panel budget", err)


def power_tail(f, t_end: float, p: float):
    """Analytic tail ``int_{t_end}^inf f`` assuming ``f(t) ~ C t**-p``.

    ``C`` is fitted at ``t_end`` and at ``t_end / sqrt(10)``; the spread of
    the two fits gives the error estimate.
    """
    c_a = f(t_end) * t_end**p
    t_b = t_end / math.sqrt(10.0)
    c_b = f(t_b) * t_b**p
    factor = t_end ** (1.0 - p) / (p - 1.0)
    return c_a * factor, abs(c_a - c_b) * factor


def principal_value(
    f: Callable[[float], float],
    pole: float,
    decay_exponent: float,
    tol: float = 1e-9,
    delta: float | None = None,
    scale: float | None = None,
    limit: int = 200,
) -> QuadratureResult:
    """Cauchy principal value of ``int_0^inf f`` with a simple pole at ``pole``.

    On ``|t - pole| < delta`` the integrand is folded, ``f(pole + u) +
    f(pole - u)``, which cancels the ``1/u`` singularity; the rest is
    regular quadrature with a power-law tail.

    Raises:
        DomainError: If the pole is not strictly inside ``(0, inf)``.
    """
    if not pole > 0:
        raise DomainError("pole must lie strictly inside (0, inf)")
    if delta is None:
        delta = 0.5 * pole
    if not 0 < delta < pole:
        raise DomainError("delta must satisfy 0 < delta < pole")
    fold_v, fold_e, n1 = _quad_panel(
        lambda u: f(pole + u) + f(pole - u), 0.0, delta, tol / 16.0, limit, False
    )
    left_v, left_e, n2 = _quad_panel(f, 0.0, pole - delta, tol / 16.0, limit, False)
    shift = pole + delta
    right = integrate_semi_infinite(
        lambda u: f(shift + u), decay_exponent, tol / 2.0, scale=scale or shift, limit=limit
    )
    return QuadratureResult(
        fold_v + left_v + right.value,
        fold_e + left_e + right.abs_error_estimate,
        n1 + n2 + right.evaluations,
    )


def log_gauss_rule(
    scale: float,
    lo: float,
    hi: float,
    width: float = 0.5,
    order: int = 16,
    focus: float | None = None,
    focus_width: float | None = None,
):
    """Composite Gauss-Legendre rule in ``u = log(t / scale)`` on ``[lo, hi]``.

    With ``focus`` (a point ``t``) and ``focus_width`` (a width in ``u``),
    panels shrink geometrically towards ``log(focus / scale)`` down to
    ``focus_width``, which resolves a sharp transition there.

    Returns:
        ``(t, w)`` with ``sum(w * g(t))`` approximating ``int g(t) dt`` over
        ``[scale e**lo, scale e**hi]``. The Jacobian ``t`` is folded into ``w``.
    """
    x, wt = leggauss(order)
    edges = _panel_edges(lo, hi, width)
    if focus is not None and focus_width is not None and focus_width < width:
        c = math.log(focus / scale)
        if lo < c < hi:
            edges = _graded_edges(lo, c, width, focus_width)[:-1] + [c] + _graded_edges(
                c, hi, width, focus_width, reverse=True
            )[1:]
            edges = np.asarray(edges)
    a = edges[:-1, None]
    b = edges[1:, None]
    u = (a + (b - a) * (x + 1.0) / 2.0).ravel()
    w = ((b - a) / 2.0 * wt).ravel()
    t = scale * np.exp(u)
    return t, w * t


def _panel_edges(lo, hi, width):
    n_panels = max(1, int(round((hi - lo) / width)))
    return np.linspace(lo, hi, n_panels + 1)


def _graded_edges(a, b, width, finest, reverse=False):
    """Edges on ``[a, b]`` with widths doubling away from ``b`` (or ``a`` if ``reverse``)."""
    widths = []
    h = finest
    remaining = b - a
    while remaining > 0:
        step = min(h, width, remaining)
        widths.append(step)
        remaining -= step
        h *= 2.0
    # The last (outermost) width may be a sliver; merge it into its neighbour.
    if len(widths) > 1 and widths[-1] < 0.5 * widths[-2]:
        widths[-2] += widths.pop()
    if reverse:
        edges = [a]
        for d in widths:
            edges.append(edges[-1] + d)
        edges[-1] = b
    else:
        edges = [b]
        for d in widths:
            edges.append(edges[-1] - d)
        edges[-1] = a
        edges.reverse()
    return edges
