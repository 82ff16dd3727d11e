import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy.optimize import fsolve
from scipy.special import gamma

from fracfilter import DomainError, ModelParams
from fracfilter.structural import (
    find_zero,
    kappa_alpha,
    kappa_h,
    kappa_or_one,
    lambda_fn,
    lambda_hurst_form,
    lambda_tilde_plus,
    n_alpha,
    n_alpha_boundary,
    theta_branch,
)

hurst = st.floats(0.05, 0.95)
models = st.builds(
    ModelParams,
    h1=hurst,
    h2=hurst,
    beta=st.floats(-3.0, 3.0),
    mu=st.floats(0.2, 3.0),
    eps=st.floats(0.2, 3.0),
)


def unwrapped_theta(t, params):
    """Argument of Lambda^+ tracked by np.unwrap on a dense grid, anchored at infinity."""
    grid = np.logspace(-12, 12, 200001)
    raw = np.unwrap(np.angle(lambda_fn(grid, params, side=1)))
    theta_inf = 0.5 * (1.0 - params.alpha2) * math.pi
    raw += 2 * math.pi * round((theta_inf - raw[-1]) / (2 * math.pi))
    return np.interp(np.log(t), np.log(grid), raw)


def test_kappa_h_values():
    assert kappa_h(0.5) == pytest.approx(1.0)
    assert kappa_h(0.25) == pytest.approx(gamma(1.5) * math.sin(math.pi / 4))


@given(hurst)
def test_kappa_identity(h):
    assume(abs(h - 0.5) > 1e-6)
    assert kappa_alpha(2 - 2 * h) == pytest.approx(kappa_h(h), rel=1e-12)


def test_kappa_alpha_near_one_is_continuous():
    assert kappa_alpha(1 - 1e-6) == pytest.approx(1.0, rel=1e-5)
    assert kappa_alpha(1 + 1e-6) == pytest.approx(1.0, rel=1e-5)
    assert kappa_or_one(1.0) == 1.0
    with pytest.raises(DomainError):
        kappa_alpha(1.0)
    with pytest.raises(DomainError):
        kappa_alpha(2.0)


def test_n_alpha_boundary_is_limit_of_interior():
    a = 0.6
    for t in (0.7, -1.3):
        above = n_alpha(t + 1e-12j, a)
        below = n_alpha(t - 1e-12j, a)
        assert n_alpha_boundary(t, a, 1) == pytest.approx(above, rel=1e-9)
        assert n_alpha_boundary(t, a, -1) == pytest.approx(below, rel=1e-9)


def test_n_alpha_rejects_real_axis():
    with pytest.raises(DomainError):
        n_alpha(1.0 + 0j, 0.5)
    with pytest.raises(DomainError):
        n_alpha_boundary(0.0, 0.5)


def test_n_plus_closed_form():
    a, t = 0.4, 2.0
    expected = kappa_alpha(a) * t ** (a - 1) * np.exp(1j * (1 - a) * math.pi / 2)
    assert n_alpha_boundary(t, a, 1) == pytest.approx(expected, rel=1e-14)


@given(models, st.floats(-5, 5), st.floats(0.01, 5))
def test_lambda_forms_agree(p, x, y):
    z = complex(x, y)
    assert lambda_fn(z, p) == pytest.approx(lambda_hurst_form(z, p), rel=1e-11, abs=1e-12)


@given(models, st.floats(-5, 5), st.floats(0.01, 5))
def test_lambda_conjugate_symmetry(p, x, y):
    z = complex(x, y)
    assert lambda_fn(z.conjugate(), p) == pytest.approx(np.conj(lambda_fn(z, p)), rel=1e-12, abs=1e-12)


@given(models, st.floats(0.01, 50))
def test_lambda_even_on_imaginary_direction(p, t):
    # Lambda(-conj z) = conj Lambda(z): the mirror image in the imaginary axis.
    z = complex(t, 0.3)
    assert lambda_fn(-z.conjugate(), p) == pytest.approx(np.conj(lambda_fn(z, p)), rel=1e-12, abs=1e-12)


@given(models, st.floats(0.01, 50))
def test_lambda_tilde_is_normalized_boundary_value(p, t):
    lam = lambda_fn(t, p, side=1)
    n2 = n_alpha_boundary(t, p.alpha2, 1) if abs(p.alpha2 - 1) > 1e-11 else 1.0
    assert lambda_tilde_plus(t, p) == pytest.approx(lam / (t * t * n2), rel=1e-11, abs=1e-12)


def test_no_zero_when_h1_below_h2():
    assert find_zero(ModelParams(0.3, 0.7, 1.0, 1.0, 1.0)).kind == "none"


def test_equal_hurst_zero_is_real():
    z = find_zero(ModelParams(0.6, 0.6, 3.0, 4.0, 1.0))
    assert z.kind == "real_pair"
    assert z.z0 == pytest.approx(5.0)


def test_explicit_zero_beta0():
    # kappa_{1/2}**(2/5) exp(i pi/10) for h1 = 3/4, h2 = 1/2.
    z = find_zero(ModelParams(0.75, 0.5, 0.0, 1.0, 1.0)).z0
    assert abs(z) == pytest.approx(0.97555, abs=5e-6)
    assert np.angle(z) == pytest.approx(0.31416, abs=5e-6)
    assert z == pytest.approx(kappa_alpha(0.5) ** 0.4 * np.exp(1j * math.pi / 10), rel=1e-13)


@pytest.mark.parametrize(
    "prm",
    [(0.75, 0.5, 1.0, 1.0, 1.0), (0.5, 0.3, -0.5, 1.0, 1.0), (0.9, 0.2, 2.0, 2.0, 0.5), (0.6, 0.55, 0.1, 1.0, 1.0)],
)
def test_zero_matches_fsolve(prm):
    p = ModelParams(*prm)
    z0 = find_zero(p)
    assert z0.kind == "complex_quadruple"
    assert z0.z0.real > 0 and z0.z0.imag > 0
    assert z0.residual < 1e-12

    def eqs(v):
        w = lambda_hurst_form(complex(v[0], v[1]), p)
        return [w.real, w.imag]

    found = set()
    for r in (0.3, 1.0, 3.0):
        for ang in (0.2, 0.7, 1.2):
            start = [r * math.cos(ang), r * math.sin(ang)]
            sol, info, ok, _ = fsolve(eqs, start, full_output=True, xtol=1e-14)
            if ok == 1 and sol[1] > 1e-6 and sol[0] > 1e-6:
                found.add((round(sol[0], 7), round(sol[1], 7)))
    assert found == {(round(z0.z0.real, 7), round(z0.z0.imag, 7))}


@given(hurst, hurst, st.floats(-3, 3), st.floats(0.2, 3.0))
def test_zero_residual_small(h1, h2, beta, mu):
    assume(h1 > h2 + 0.02)
    z = find_zero(ModelParams(h1, h2, beta, mu, 1.0))
    assert z.residual < 1e-10


def test_theta_undefined_for_equal_hurst():
    with pytest.raises(DomainError):
        theta_branch(ModelParams(0.6, 0.6, 1.0, 1.0, 1.0))


@pytest.mark.parametrize(
    "prm",
    [(0.3, 0.7, 0.5, 1.0, 1.0), (0.75, 0.5, 1.0, 1.0, 1.0), (0.5, 0.3, 0.4, 2.0, 1.0), (0.5, 0.8, 0.0, 1.0, 1.0),
     (0.8, 0.2, 0.0, 1.0, 1.0)],
)
def test_theta_matches_unwrap_oracle(prm):
    p = ModelParams(*prm)
    t = np.logspace(-8, 8, 200)
    assert np.max(np.abs(theta_branch(p)(t) - unwrapped_theta(t, p))) < 1e-6


@pytest.mark.parametrize(
    "prm",
    [(0.5, 0.75, 1.0, 1.0, 1.0), (0.75, 0.5, 1.0, 1.0, 1.0), (0.3, 0.5, 1.0, 1.0, 1.0), (0.75, 0.5, 0.0, 1.0, 1.0),
     (0.2, 0.7, 0.0, 1.0, 1.0)],
)
def test_theta_boundary_limits(prm):
    br = theta_branch(ModelParams(*prm))
    assert br(1e-40) == pytest.approx(br.theta_zero_plus, abs=1e-6)
    assert br(1e40) == pytest.approx(br.theta_infinity, abs=1e-6)
    assert -math.pi <= br.theta_infinity <= math.pi


def test_theta_limit_values():
    br = theta_branch(ModelParams(0.5, 0.75, 1.0, 1.0, 1.0))
    assert br.theta_infinity == pytest.approx(math.pi / 4)
    assert br.theta_zero_plus == pytest.approx(5 * math.pi / 4)
    br = theta_branch(ModelParams(0.75, 0.5, 1.0, 1.0, 1.0))
    assert br.theta_infinity == pytest.approx(0.0)
    assert br.theta_zero_plus == pytest.approx(-3 * math.pi / 4)


def test_theta_at_beta_is_pi():
    assert theta_branch(ModelParams(0.5, 0.75, 1.0, 1.0, 1.0))(1.0) == pytest.approx(math.pi, abs=1e-12)


@given(hurst, hurst, st.floats(-2, 2), st.floats(0.3, 2.0))
def test_theta_tail_law(h1, h2, beta, mu):
    assume(abs(h1 - h2) > 0.05)
    br = theta_branch(ModelParams(h1, h2, beta, mu, 1.0))
    p = br.decay_exponent
    assert p == pytest.approx(2 + 2 * h1 - 2 * h2)
    t1, t2 = 1e12, 1e13
    a, b = abs(br.tilde(t1)), abs(br.tilde(t2))
    assume(a > 1e-280 and b > 1e-280)
    assert math.log(a / b) / math.log(t2 / t1) == pytest.approx(p, rel=1e-3)


@given(models, st.floats(0.001, 100))
def test_theta_consistent_with_lambda_phase(p, t):
    assume(abs(p.h1 - p.h2) > 1e-3)
    lam = lambda_fn(t, p, side=1)
    assume(abs(lam) > 0)
    assert abs(np.exp(1j * theta_branch(p)(t)) - lam / abs(lam)) < 1e-10
