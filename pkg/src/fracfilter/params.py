"""Model parameters for the linear filtering problem with fractional noises.

The state and observation processes are

    dX_t = beta * X_t dt + dW_t,          X_0 = 0,
    dY_t = mu * X_t dt + sqrt(eps) dV_t,  Y_0 = 0,

where W and V are independent fractional Brownian motions with Hurst
exponents ``h1`` and ``h2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

#: Tolerance used when testing whether a Hurst exponent equals 1/2 or
#: whether two Hurst exponents coincide.
HURST_ATOL = 1e-12


def is_half(h: float) -> bool:
    """Return True when ``h`` equals 1/2 up to :data:`HURST_ATOL`."""
    return abs(h - 0.5) <= HURST_ATOL


@dataclass(frozen=True)
class ModelParams:
    """The five model constants ``(h1, h2, beta, mu, eps)``.

    Derived quantities (``mu_eps``, ``alpha1``, ``alpha2``) are exposed as
    properties so they can never drift out of sync with the stored fields.
    """

    h1: float
    h2: float
    beta: float
    mu: float
    eps: float

    def __post_init__(self):
        for name in ("h1", "h2"):
            h = getattr(self, name)
            if not (0.0 < h < 1.0) or not math.isfinite(h):
                raise DomainError(f"{name} must lie in (0, 1), got {h!r}")
        if not math.isfinite(self.beta):
            raise DomainError(f"beta must be finite, got {self.beta!r}")
        if self.mu == 0 or not math.isfinite(self.mu):
            raise DomainError(f"mu must be finite and nonzero, got {self.mu!r}")
        if not (self.eps > 0) or not math.isfinite(self.eps):
            raise DomainError(f"eps must be positive and finite, got {self.eps!r}")

    @property
    def mu_eps(self) -> float:
        """Signal-to-noise gain mu / sqrt(eps)."""
        return self.mu / math.sqrt(self.eps)

    @property
    def mu_eps2(self) -> float:
        """Squared gain mu**2 / eps."""
        return self.mu * self.mu / self.eps

    @property
    def alpha1(self) -> float:
        return 2.0 - 2.0 * self.h1

    @property
    def alpha2(self) -> float:
        return 2.0 - 2.0 * self.h2

    @property
    def equal_hurst(self) -> bool:
        return abs(self.h1 - self.h2) <= HURST_ATOL

    def replace(self, **changes) -> "ModelParams":
        """Return a copy with some fields changed."""
        fields = dict(h1=self.h1, h2=self.h2, beta=self.beta, mu=self.mu, eps=self.eps)
        fields.update(changes)
        return ModelParams(**fields)
