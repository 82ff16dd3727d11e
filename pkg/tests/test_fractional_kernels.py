import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate
from scipy.special import gamma

from fracfilter import DomainError, ModelParams, QuadratureError
from fracfilter.fractional_kernels import fbm_cov, fgn_autocov, fou_cov, fou_stationary_variance

hurst = st.floats(0.05, 0.95)
times = st.floats(0.0, 10.0)


def fou_cov_pathwise(s, t, h, beta):
    """Covariance of X_t = W_t + beta int_0^t e^{beta(t-r)} W_r dr, integrated numerically."""

    def r(u, v):
        return 0.5 * (u ** (2 * h) + v ** (2 * h) - abs(u - v) ** (2 * h))

    opts = dict(epsabs=1e-12, epsrel=1e-12)
    a = r(s, t)
    b = beta * integrate.quad(lambda v: math.exp(beta * (t - v)) * r(s, v), 0, t, points=[min(s, t)], **opts)[0]
    c = beta * integrate.quad(lambda u: math.exp(beta * (s - u)) * r(u, t), 0, s, points=[min(s, t)], **opts)[0]

    def inner(u):
        kink = [u] if 0 < u < t else None
        return integrate.quad(lambda v: math.exp(beta * (t - v)) * r(u, v), 0, t, points=kink, **opts)[0]

    d = beta**2 * integrate.quad(lambda u: math.exp(beta * (s - u)) * inner(u), 0, s, **opts)[0]
    return a + b + c + d


def test_fbm_brownian_case():
    assert fbm_cov(2.0, 3.0, 0.5) == pytest.approx(2.0)
    assert fbm_cov(3.0, 3.0, 0.5) == pytest.approx(3.0)


def test_fbm_vectorized_broadcast():
    s = np.array([1.0, 2.0])[:, None]
    t = np.array([0.5, 1.0, 3.0])[None, :]
    out = fbm_cov(s, t, 0.3)
    assert out.shape == (2, 3)
    assert out[1, 2] == pytest.approx(fbm_cov(2.0, 3.0, 0.3))


def test_fbm_rejects_bad_hurst():
    with pytest.raises(DomainError):
        fbm_cov(1.0, 1.0, 1.0)


@given(times, times, hurst)
def test_fbm_symmetric(s, t, h):
    assert fbm_cov(s, t, h) == fbm_cov(t, s, h)


@given(hurst, st.floats(0.1, 5.0))
def test_fbm_self_similar(h, c):
    assert fbm_cov(c * 1.3, c * 0.4, h) == pytest.approx(c ** (2 * h) * fbm_cov(1.3, 0.4, h), rel=1e-12)


@given(hurst)
def test_fbm_gram_psd(h):
    t = np.linspace(0.1, 4.0, 40)
    ev = np.linalg.eigvalsh(fbm_cov(t[:, None], t[None, :], h))
    assert ev[0] > -1e-10 * ev[-1]


@given(hurst, st.integers(0, 30))
def test_fgn_matches_increments(h, m):
    expected = fbm_cov(m + 1.0, 1.0, h) - fbm_cov(m, 1.0, h)
    assert fgn_autocov(m, h) == pytest.approx(expected, abs=1e-12)


def test_fgn_sign_of_correlation():
    assert fgn_autocov(0, 0.3) == pytest.approx(1.0)
    assert fgn_autocov(3, 0.3) < 0 < fgn_autocov(3, 0.7)
    assert fgn_autocov(3, 0.5) == pytest.approx(0.0, abs=1e-15)


def test_ou_closed_form():
    p = ModelParams(0.5, 0.5, -0.8, 1.0, 1.0)
    s, t = 1.5, 2.5
    expected = (math.exp(-0.8 * (t - s)) - math.exp(-0.8 * (t + s))) / 1.6
    assert fou_cov(s, t, p) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("h,beta", [(0.3, -0.7), (0.7, -0.7), (0.25, 0.4), (0.8, 0.3)])
@pytest.mark.parametrize("s,t", [(1.0, 1.0), (0.6, 1.7)])
def test_fou_matches_pathwise_oracle(h, beta, s, t):
    p = ModelParams(h, 0.5, beta, 1.0, 1.0)
    assert fou_cov(s, t, p) == pytest.approx(fou_cov_pathwise(s, t, h, beta), rel=1e-8)


@pytest.mark.parametrize("h", [0.2, 0.5, 0.7])
def test_fou_stationary_limit(h):
    p = ModelParams(h, 0.5, -1.3, 1.0, 1.0)
    assert fou_cov(60.0, 60.0, p) == pytest.approx(fou_stationary_variance(h, -1.3), rel=1e-9)
    assert fou_stationary_variance(h, -1.3) == pytest.approx(gamma(2 * h + 1) / (2 * 1.3 ** (2 * h)))


def test_fou_stationary_requires_stable_drift():
    with pytest.raises(DomainError):
        fou_stationary_variance(0.6, 0.2)


def test_fou_at_zero_and_beta_zero():
    p = ModelParams(0.3, 0.5, 0.0, 1.0, 1.0)
    assert fou_cov(0.0, 2.0, p) == 0.0
    assert fou_cov(1.2, 2.0, p) == pytest.approx(fbm_cov(1.2, 2.0, 0.3), rel=1e-10)


@given(st.floats(0.1, 3.0), st.floats(0.1, 3.0), hurst, st.floats(-2.0, 1.0))
def test_fou_symmetric(s, t, h, beta):
    p = ModelParams(h, 0.5, beta, 1.0, 1.0)
    assert fou_cov(s, t, p) == pytest.approx(fou_cov(t, s, p), rel=1e-10, abs=1e-14)


@given(hurst, st.floats(-2.0, 0.5))
def test_fou_gram_psd(h, beta):
    p = ModelParams(h, 0.5, beta, 1.0, 1.0)
    t = np.linspace(0.2, 3.0, 8)
    k = np.array([[fou_cov(a, b, p) for b in t] for a in t])
    ev = np.linalg.eigvalsh(k)
    assert ev[0] > -1e-9 * ev[-1]


def test_fou_tolerance_failure_reported():
    p = ModelParams(0.3, 0.5, -1.0, 1.0, 1.0)
    with pytest.raises((QuadratureError, DomainError)):
        fou_cov(1.0, 2.0, p, rtol=0.0)
