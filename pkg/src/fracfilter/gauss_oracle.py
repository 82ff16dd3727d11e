"""Finite-horizon optimal filtering error by exact Gaussian conditioning.

On the grid ``t_k = k T / n`` the state values ``X_{t_k}`` and the
observation increments

    Z_k = mu (D/2) (X_{t_{k-1}} + X_{t_k}) + sqrt(eps) (V_{t_k} - V_{t_{k-1}}),

with ``D = T/n``, form a jointly Gaussian vector. The error of the best
estimate of ``X_T`` from ``Z_1..Z_n`` is ``Var(X_T) - c' C^{-1} c``; it
converges to ``P_T`` as ``n`` grows and Richardson extrapolation in ``n``
accelerates that convergence.

The state covariance is assembled from the increment representation
``X_{t_k} = sum_{j<=k} exp(beta D (k - j)) xi_j`` where ``xi_j`` is the
fractional noise integrated against ``exp(beta (t_j - u))`` over one cell.
The ``xi`` sequence is stationary, so only its autocovariance at integer
lags is needed.
"""

from __future__ import annotations

import math
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate, linalg

from .errors import DomainError, FactorizationError
from .fractional_kernels import fgn_autocov
from .params import ModelParams

__all__ = [
    "OracleRun",
    "SteadyStateEstimate",
    "SmallNoiseFit",
    "cell_autocov",
    "state_covariance",
    "filtering_error",
    "oracle_run",
    "richardson",
    "steady_state_estimate",
    "small_noise_grid",
    "small_noise_fit",
    "small_noise_slope",
]

#: Refuse horizons where Var(X_T) exceeds this (unstable drift too strong).
VARIANCE_CAP = 1e12

_CACHE_BYTES = 320 * 2**20
_cache: "OrderedDict[tuple, np.ndarray]" = OrderedDict()


@dataclass(frozen=True)
class OracleRun:
    """Oracle values on a sequence of grids and their extrapolation.

    Attributes:
        grid_sizes: Node counts ``n`` used.
        p_values: Conditional variance on each grid.
        extrapolated: Richardson-extrapolated value.
        uncertainty: Spread of the last two extrapolation levels (or the last
            correction when only one level exists).
        T: Horizon.
        order: Fitted convergence order of the last level (``nan`` if the
            differences were not monotone).
    """

    grid_sizes: tuple
    p_values: tuple
    extrapolated: float
    uncertainty: float
    T: float
    order: float = float("nan")


@dataclass(frozen=True)
class SteadyStateEstimate:
    """Oracle estimate of the large-time limit.

    Attributes:
        value: Extrapolated error at the largest horizon.
        rel_gap: Relative change between the last two horizons.
        runs: The per-horizon :class:`OracleRun` records.
    """

    value: float
    rel_gap: float
    runs: tuple = field(default_factory=tuple)


@dataclass(frozen=True)
class SmallNoiseFit:
    """Least-squares fit ``log P = slope log eps + log intercept``."""

    slope: float
    intercept: float
    eps: tuple
    values: tuple


# ---------------------------------------------------------------------------
# Covariances
# ---------------------------------------------------------------------------


def _pair_weight(w, b):
    """``int exp(b(1-x)) exp(b(1-y)) dx`` along ``y - x = w`` inside the unit square."""
    w = np.asarray(w, dtype=float)
    x_lo = np.maximum(0.0, -w)
    length = 1.0 - np.abs(w)
    if b == 0.0:
        return length
    # exp(b(2 - w - 2 x_lo)) * (1 - exp(-2 b length)) / (2 b)
    return np.exp(b * (2.0 - w - 2.0 * x_lo)) * (-np.expm1(-2.0 * b * length)) / (2.0 * b)


def _near_lag(m: int, h: float, b: float) -> float:
    """Autocovariance at lag 0 or 1 from ``-1/2 int int |m + y - x|**2h dmu dmu``.

    ``mu = delta_1 - e**b delta_0 + b e**{b(1-x)} dx`` is the signed measure
    with ``int f dB = -int B dmu`` for ``f(x) = e**{b(1-x)}``; the ``u**2h``
    parts of the fBm covariance drop out because ``mu`` has zero mass.
    """
    two_h = 2.0 * h
    atoms = ((0.0, -math.exp(b)), (1.0, 1.0))
    total = 0.0
    for xi, ai in atoms:
        for yj, aj in atoms:
            total += ai * aj * abs(m + yj - xi) ** two_h
    if b != 0.0:
        dens = lambda x: b * math.exp(b * (1.0 - x))
        for xi, ai in atoms:
            v1 = integrate.quad(lambda y: dens(y) * abs(m + y - xi) ** two_h, 0, 1, epsabs=1e-15, epsrel=1e-13, limit=200)[0]
            v2 = integrate.quad(lambda x: dens(x) * abs(m + xi - x) ** two_h, 0, 1, epsabs=1e-15, epsrel=1e-13, limit=200)[0]
            total += ai * (v1 + v2)
        pts = sorted({0.0, float(-m)} - {-1.0, 1.0})
        edges = [-1.0] + [p for p in pts if -1.0 < p < 1.0] + [1.0]
        for lo, hi in zip(edges[:-1], edges[1:]):
            total += b * b * integrate.quad(
                lambda w: float(_pair_weight(w, b)) * abs(m + w) ** two_h, lo, hi,
                epsabs=1e-15, epsrel=1e-13, limit=200,
            )[0]
    return -0.5 * total


def cell_autocov(h: float, b: float, max_lag: int, order: int = 24) -> np.ndarray:
    """Autocovariance ``gamma(0..max_lag)`` of the unit-cell noise ``xi``.

    ``xi_j = int_{j-1}^{j} exp(b (j - u)) dB_u`` for a fractional Brownian
    motion ``B`` with Hurst exponent ``h``; ``b`` is ``beta`` times the cell
    width. Lags 0 and 1 (where the cells touch) use the measure form; for
    lags of 2 and more the kernel ``h(2h-1)|u - v|**(2h-2)`` is smooth on the
    cells and a tensor Gauss rule reduced to one dimension is exact to
    rounding.
    """
    if not (0.0 < h < 1.0):
        raise DomainError("h must lie in (0, 1)")
    out = np.zeros(max_lag + 1)
    for m in range(min(max_lag, 1) + 1):
        out[m] = _near_lag(m, h, b)
    if max_lag >= 2:
        x, wt = leggauss(order)
        # Two halves of w in [-1, 1]; the pair weight has a kink at w = 0.
        w = np.concatenate([(x - 1.0) / 2.0, (x + 1.0) / 2.0])
        ww = np.concatenate([wt, wt]) / 2.0 * _pair_weight(w, b)
        lags = np.arange(2, max_lag + 1, dtype=float)
        kern = (lags[:, None] + w[None, :]) ** (2.0 * h - 2.0)
        out[2:] = h * (2.0 * h - 1.0) * (kern @ ww)
    return out


def _cache_get(key):
    arr = _cache.get(key)
    if arr is not None:
        _cache.move_to_end(key)
    return arr


def _cache_put(key, arr):
    if arr.nbytes > _CACHE_BYTES // 2:
        return
    _cache[key] = arr
    while sum(a.nbytes for a in _cache.values()) > _CACHE_BYTES:
        _cache.popitem(last=False)


def state_covariance(params: ModelParams, T: float, n: int) -> np.ndarray:
    """Covariance matrix of ``(X_{t_1}, ..., X_{t_n})`` on the uniform grid.

    Computed as ``D**(2 h1) L G L'`` with ``G`` the Toeplitz matrix of
    :func:`cell_autocov` and ``L[k, j] = exp(beta D (k - j))`` for ``j <= k``;
    both products with ``L`` are done by the recursion
    ``row_k = exp(beta D) row_{k-1} + ...`` in ``O(n**2)``. Results are cached
    by ``(h1, beta, T, n)``; the returned array is read-only.
    """
    if not T > 0:
        raise DomainError("T must be positive")
    n = int(n)
    key = (params.h1, params.beta, float(T), n)
    hit = _cache_get(key)
    if hit is not None:
        return hit
    d = T / n
    b = params.beta * d
    g = cell_autocov(params.h1, b, n - 1)
    toe = linalg.toeplitz(g)
    e = math.exp(b)
    # M = L G, row recursion.
    for k in range(1, n):
        toe[k] += e * toe[k - 1]
    # K = M L' = (L M')'; M' rows are columns of M.
    mt = np.ascontiguousarray(toe.T)
    for k in range(1, n):
        mt[k] += e * mt[k - 1]
    k_mat = mt.T * d ** (2.0 * params.h1)
    k_mat = np.ascontiguousarray(0.5 * (k_mat + k_mat.T))
    k_mat.setflags(write=False)
    _cache_put(key, k_mat)
    return k_mat


def _cholesky_with_jitter(c: np.ndarray):
    scale = np.trace(c) / c.shape[0]
    try:
        return linalg.cholesky(c, lower=True, check_finite=False)
    except linalg.LinAlgError:
        pass
    for level in (1e-14, 1e-13, 1e-12, 1e-11, 1e-10):
        try:
            return linalg.cholesky(c + level * scale * np.eye(c.shape[0]), lower=True, check_finite=False)
        except linalg.LinAlgError:
            continue
    raise FactorizationError("observation covariance is not positive definite even with jitter")


def filtering_error(params: ModelParams, T: float, n: int) -> float:
    """Optimal error of estimating ``X_T`` from ``n`` trapezoid observation increments.

    Raises:
        DomainError: If ``n < 8`` or ``Var(X_T)`` exceeds :data:`VARIANCE_CAP`.
        FactorizationError: If the observation covariance cannot be factorized.
    """
    n = int(n)
    if n < 8:
        raise DomainError("n must be at least 8")
    k_mat = state_covariance(params, T, n)
    var_t = k_mat[-1, -1]
    if not var_t <= VARIANCE_CAP:
        raise DomainError(f"Var(X_T) = {var_t:.3g} is too large to condition reliably")
    d = T / n
    # Observations scaled by 2/(mu D): Z'_k = X_{k-1} + X_k + noise.
    ak = k_mat.copy()
    ak[1:] += k_mat[:-1]
    cov = ak.copy()
    cov[:, 1:] += ak[:, :-1]
    noise = 4.0 * params.eps / (params.mu**2 * d * d) * d ** (2.0 * params.h2)
    cov += noise * linalg.toeplitz(fgn_autocov(np.arange(n), params.h2))
    c = ak[:, -1]
    chol = _cholesky_with_jitter(cov)
    v = linalg.solve_triangular(chol, c, lower=True, check_finite=False)
    p = float(var_t - v @ v)
    return min(max(p, 0.0), float(var_t))


def richardson(values: Sequence[float]):
    """Extrapolate a sequence computed on grids refined by factors of two.

    Each consecutive triple gives a fitted order ``log2(d1/d2)`` and an
    extrapolated value ``v3 - d2/(r - 1)``. When the differences are not
    monotone the last value is kept.

    Returns:
        ``(extrapolated, uncertainty, order)``.
    """
    v = [float(x) for x in values]
    if len(v) == 1:
        return v[0], float("inf"), float("nan")
    if len(v) == 2:
        return v[1], abs(v[1] - v[0]), float("nan")
    levels = []
    order = float("nan")
    for a, b_, c in zip(v[:-2], v[1:-1], v[2:]):
        d1, d2 = a - b_, b_ - c
        if d2 != 0 and d1 * d2 > 0 and abs(d1) > abs(d2):
            r = d1 / d2
            levels.append(c - d2 / (r - 1.0))
            order = math.log2(r)
        else:
            levels.append(c)
            order = float("nan")
    if len(levels) >= 2:
        unc = abs(levels[-1] - levels[-2])
    else:
        unc = abs(levels[-1] - v[-1]) if levels[-1] != v[-1] else abs(v[-1] - v[-2])
    return levels[-1], unc, order


def oracle_run(params: ModelParams, T: float, grid_sizes: Sequence[int]) -> OracleRun:
    """Evaluate :func:`filtering_error` on several grids and extrapolate."""
    sizes = tuple(int(n) for n in grid_sizes)
    vals = tuple(filtering_error(params, T, n) for n in sizes)
    ext, unc, order = richardson(vals)
    return OracleRun(sizes, vals, ext, unc, float(T), order)


def steady_state_estimate(
    params: ModelParams, T_list: Sequence[float], grid_sizes: Sequence[int] = (256, 512, 1024)
) -> SteadyStateEstimate:
    """Oracle estimate of ``lim P_T`` from increasing horizons.

    Returns the extrapolated value at the last horizon and the relative gap
    to the previous horizon as a convergence diagnostic.
    """
    horizons = [float(t) for t in T_list]
    if any(b <= a for a, b in zip(horizons[:-1], horizons[1:])):
        raise DomainError("horizons must be increasing")
    runs = tuple(oracle_run(params, t, grid_sizes) for t in horizons)
    value = runs[-1].extrapolated
    gap = abs(value - runs[-2].extrapolated) / abs(value) if len(runs) > 1 else float("nan")
    return SteadyStateEstimate(value, gap, runs)


def small_noise_grid(eps: float, T: float = 1.0, factor: float = 32.0, cap: int = 4096) -> int:
    """Finest grid for a small-noise run: ``n ~ factor * T / sqrt(eps)``, capped.

    Rounded up to a multiple of 4 so that ``n/4`` and ``n/2`` are integers.
    """
    n = int(math.ceil(factor * T / math.sqrt(eps) / 4.0)) * 4
    return int(min(max(n, 64), cap))


def small_noise_fit(
    params: ModelParams,
    T: float,
    eps_grid: Sequence[float],
    n: int | None = None,
) -> SmallNoiseFit:
    """Fit ``log P_T`` against ``log eps`` using extrapolated oracle values.

    For every ``eps`` the oracle runs on ``n/4, n/2, n`` with ``n`` from
    :func:`small_noise_grid` unless given explicitly.
    """
    eps_vals = [float(e) for e in eps_grid]
    if len(eps_vals) < 2:
        raise DomainError("need at least two noise levels")
    if max(eps_vals) / min(eps_vals) < 100.0 * (1 - 1e-12):
        raise DomainError("eps_grid must span at least two decades")
    values = []
    for e in eps_vals:
        p = params.replace(eps=e)
        nn = n if n is not None else small_noise_grid(e, T)
        run = oracle_run(p, T, (nn // 4, nn // 2, nn))
        values.append(run.extrapolated)
    slope, icpt = np.polyfit(np.log(eps_vals), np.log(values), 1)
    return SmallNoiseFit(float(slope), float(math.exp(icpt)), tuple(eps_vals), tuple(values))


def small_noise_slope(params: ModelParams, T: float, eps_grid: Sequence[float], n: int | None = None) -> float:
    """Least-squares slope of ``log P_T`` against ``log eps``."""
    return small_noise_fit(params, T, eps_grid, n).slope
