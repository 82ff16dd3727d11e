"""Self-verification suites behind ``fracfilter verify``.

Each check measures a deviation and compares it with an allowed bound. The
suites are quick (seconds) and exercise every module through identities
that hold independently of the implementation details.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np
from scipy.special import gamma

from . import closed_form as cf
from . import fractional_kernels as fk
from . import gauss_oracle as go
from . import structural as st
from .params import ModelParams

__all__ = ["Check", "SUITES", "run_suite"]


@dataclass(frozen=True)
class Check:
    """Outcome of one named invariant check."""

    name: str
    measured: float
    allowed: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.measured) and self.measured <= self.allowed)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name}: measured={self.measured:.3e} allowed={self.allowed:.3e}"


def _rel(a, b):
    return abs(a - b) / abs(b)


def kernels_suite(scale: float = 1.0) -> List[Check]:
    rng = np.random.default_rng(7)
    out = []
    s, t = rng.uniform(0, 5, 20), rng.uniform(0, 5, 20)
    sym = max(abs(fk.fbm_cov(a, b, 0.3) - fk.fbm_cov(b, a, 0.3)) for a, b in zip(s, t))
    out.append(Check("fbm symmetry", sym, 1e-12 * scale))
    grid = np.linspace(0.05, 3.0, 64)
    for h in (0.2, 0.8):
        ev = np.linalg.eigvalsh(fk.fbm_cov(grid[:, None], grid[None, :], h))
        out.append(Check(f"fbm gram psd h={h}", max(0.0, -ev[0] / ev[-1]), 1e-9 * scale))
    p = ModelParams(0.5, 0.5, -1.0, 1.0, 1.0)
    out.append(Check("ou variance", _rel(fk.fou_cov(2.0, 2.0, p), -0.5 * math.expm1(-4.0)), 1e-9 * scale))
    p = ModelParams(0.7, 0.5, -1.0, 1.0, 1.0)
    out.append(Check("fou stationary limit", _rel(fk.fou_cov(50.0, 50.0, p), gamma(2.4) / 2.0), 1e-4 * scale))
    p = ModelParams(0.3, 0.5, 0.4, 1.0, 1.0)
    out.append(Check("fou symmetry", abs(fk.fou_cov(1.3, 0.4, p) - fk.fou_cov(0.4, 1.3, p)), 1e-12 * scale))
    return out


def structural_suite(scale: float = 1.0) -> List[Check]:
    out = []
    worst = max(
        _rel(st.kappa_alpha(2.0 - 2.0 * h), st.kappa_h(h)) for h in (0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9)
    )
    out.append(Check("kappa identity", worst, 1e-12 * scale))

    rng = np.random.default_rng(11)
    z = rng.normal(size=40) + 1j * rng.normal(size=40)
    p = ModelParams(0.3, 0.8, 0.7, 1.3, 0.6)
    a, b = st.lambda_fn(z, p), st.lambda_hurst_form(z, p)
    out.append(Check("lambda form equivalence", float(np.max(np.abs(a - b) / np.abs(b))), 1e-13 * scale))

    worst = 0.0
    for prm in ((0.75, 0.5, 0.0, 1.0, 1.0), (0.5, 0.3, 0.5, 1.0, 1.0), (0.9, 0.2, -2.0, 2.0, 0.5)):
        worst = max(worst, st.find_zero(ModelParams(*prm)).residual)
    out.append(Check("zero residual", worst, 1e-10 * scale))

    explicit = st.kappa_alpha(0.5) ** 0.4 * complex(math.cos(math.pi / 10), math.sin(math.pi / 10))
    z0 = st.find_zero(ModelParams(0.75, 0.5, 0.0, 1.0, 1.0)).z0
    out.append(Check("zero explicit beta=0", abs(z0 - explicit) / abs(explicit), 1e-12 * scale))

    worst = 0.0
    for prm in ((0.5, 0.75, 1.0, 1.0, 1.0), (0.75, 0.5, 1.0, 1.0, 1.0), (0.3, 0.5, 1.0, 1.0, 1.0)):
        br = st.theta_branch(ModelParams(*prm))
        worst = max(worst, abs(br(1e-40) - br.theta_zero_plus), abs(br(1e40) - br.theta_infinity))
    out.append(Check("theta limits", worst, 1e-6 * scale))

    br = st.theta_branch(ModelParams(0.5, 0.75, 1.0, 1.0, 1.0))
    out.append(Check("theta at beta", abs(br(1.0) - math.pi), 1e-12 * scale))

    prm = ModelParams(0.3, 0.7, 0.5, 1.0, 1.0)
    t = np.logspace(-6, 6, 1000)
    lam = st.lambda_fn(t, prm, side=1)
    phase = np.abs(np.exp(1j * st.theta_branch(prm)(t)) - lam / np.abs(lam))
    out.append(Check("theta consistency", float(phase.max()), 1e-10 * scale))
    return out


def closedform_suite(scale: float = 1.0) -> List[Check]:
    out = []
    out.append(Check("classical 3-4-5", abs(cf.kalman_bucy_steady(-3.0, 4.0, 1.0) - 0.125), 0.0 + 1e-15 * scale))
    out.append(
        Check(
            "thm1 at H=1/2",
            _rel(cf.p_infinity_equal_hurst(ModelParams(0.5, 0.5, 0.3, 1.2, 0.8)).p_infinity,
                 cf.kalman_bucy_steady(0.3, 1.2, 0.8)),
            1e-12 * scale,
        )
    )
    worst = 0.0
    for h1 in (0.3, 0.75):
        p = ModelParams(h1, 0.5, -0.5, 1.0, 1.0)
        worst = max(worst, _rel(cf.p_infinity_white_obs(p).p_infinity, cf.spectral_steady_state(p).p_infinity))
    out.append(Check("thm2 vs spectral", worst, 1e-6 * scale))
    worst = 0.0
    for h1 in (0.25, 0.75):
        v, _, _ = cf.white_obs_bracket(ModelParams(h1, 0.5, 0.0, 1.0, 1.0))
        worst = max(worst, _rel(v, cf.white_obs_bracket_beta0(h1, 1.0)))
    out.append(Check("thm2 beta=0 closed form", worst, 1e-6 * scale))
    worst = 0.0
    for h2 in (0.3, 0.7):
        p = ModelParams(0.5, h2, 0.5, 1.0, 1.0)
        xp, xm = cf.x_values(p)
        worst = max(worst, _rel(xp * xm, cf.x_product_identity(p)))
    out.append(Check("X identity", worst, 1e-5 * scale))
    # The limit holds as stated for alpha2 in (0, 1), i.e. h2 > 1/2.
    p = ModelParams(0.5, 0.7, 1e-4, 1.0, 1.0)
    a = p.alpha2
    r, _ = cf.x_ratio(p)
    target = 2.0 / math.sin(math.pi / (1.0 + a)) * st.kappa_alpha(a) ** (1.0 / (1.0 + a))
    out.append(Check("limbeta limit", _rel(math.log(r) / 1e-4, target), 5e-3 * scale))
    p = ModelParams(0.5, 0.7, 0.2, 1.0, 1.0)
    out.append(
        Check("thm3 vs general",
              _rel(cf.p_infinity_general(p).p_infinity, cf.p_infinity_white_state(p).p_infinity), 1e-4 * scale)
    )
    out.append(
        Check("general imaginary residue",
              cf.p_infinity_general(ModelParams(0.3, 0.7, -0.5, 1.0, 1.0)).diagnostics["imag_residue"], 1e-7 * scale)
    )
    return out


def oracle_suite(scale: float = 1.0) -> List[Check]:
    out = []
    p = ModelParams(0.5, 0.5, -1.0, 1.0, 1.0)
    run = go.oracle_run(p, 5.0, (64, 128, 256))
    out.append(Check("oracle vs riccati", _rel(run.extrapolated, cf.riccati_error(5.0, -1.0, 1.0, 1.0)), 5e-3 * scale))
    p = ModelParams(0.7, 0.5, -1.0, 1.0, 1e8)
    out.append(Check("oracle eps to infinity", _rel(go.filtering_error(p, 5.0, 128), fk.fou_cov(5.0, 5.0, p)), 1e-3 * scale))
    p = ModelParams(0.3, 0.5, -0.7, 1.0, 1.0)
    k = go.state_covariance(p, 2.0, 16)
    out.append(Check("oracle state covariance", _rel(k[-1, 5], fk.fou_cov(2.0, 0.75, p)), 1e-8 * scale))
    p = ModelParams(0.7, 0.7, -1.0, 1.0, 1.0)
    est = go.steady_state_estimate(p, (10.0, 20.0), (128, 256, 512))
    out.append(Check("oracle vs thm1", _rel(est.value, cf.p_infinity_equal_hurst(p).p_infinity), 2e-2 * scale))
    return out


SUITES: Dict[str, Callable[[float], List[Check]]] = {
    "kernels": kernels_suite,
    "structural": structural_suite,
    "closedform": closedform_suite,
    "oracle": oracle_suite,
}


def run_suite(name: str, scale: float = 1.0) -> List[Check]:
    """Run one suite (or ``"all"``) and return its checks."""
    if name == "all":
        checks = []
        for fn in SUITES.values():
            checks.extend(fn(scale))
        return checks
    return SUITES[name](scale)
