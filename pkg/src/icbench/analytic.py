"""Closed-form bias corrections: AIC, Sugiura's finite correction and C_N.

Bias-scale values estimate E[l(theta_hat) - N E_Y log f(Y | theta_hat)] (about
k for a k-parameter model).  Criterion-scale values are twice that, the
additive term in ``-2 l + penalty``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .distributions import Family

__all__ = [
    "Scenario",
    "SCENARIOS",
    "aic_penalty",
    "aic",
    "sugiura_correction",
    "sugiura_bias",
    "cn",
    "cn_criterion",
    "default_order",
    "gauss_truth_laplace_coefficients",
    "MAX_ORDER",
]

MAX_ORDER = 3
_SQRT2 = math.sqrt(2.0)
_PI = math.pi


@dataclass(frozen=True, order=True)
class Scenario:
    truth: Family
    model: Family

    def __post_init__(self):
        object.__setattr__(self, "truth", Family(self.truth))
        object.__setattr__(self, "model", Family(self.model))

    def __str__(self):
        return f"{self.truth.value}/{self.model.value}"


SCENARIOS = (
    Scenario(Family.GAUSS, Family.GAUSS),
    Scenario(Family.LAPLACE, Family.GAUSS),
    Scenario(Family.LAPLACE, Family.LAPLACE),
    Scenario(Family.GAUSS, Family.LAPLACE),
)


def aic_penalty(k: int) -> float:
    """AIC bias correction on the bias scale: the parameter count."""
    if k < 1:
        raise ValueError("k must be positive")
    return float(k)


def aic(max_loglik: float, k: int) -> float:
    return -2.0 * max_loglik + 2.0 * aic_penalty(k)


def sugiura_correction(n: int, k: int) -> float:
    """Finite-sample AIC penalty ``2nk / (n - k - 2)`` (criterion scale)."""
    if n <= k + 2:
        raise ValueError(f"finite correction undefined for n={n} <= k+2={k + 2}")
    return 2.0 * n * k / (n - k - 2)


def sugiura_bias(n: int, k: int) -> float:
    return 0.5 * sugiura_correction(n, k)


def gauss_truth_laplace_coefficients():
    """Coefficients a1, a2, a3 of the Laplace-model/Gaussian-data bias series.

    Per observation the bias is ``a1/n + a2/n^2 + a3/n^3``.
    """
    r, p = _SQRT2, _PI
    a1 = (2 * r + 1) * p / 4 - 1
    a2 = (4 * r + 31) * p ** 2 / 32 - (2 * r + 13) * p / 4 + 3
    a3 = ((46 * r + 217) * p ** 3 / 128 - (44 * r + 339) * p ** 2 / 32
          + (6 * r + 87) * p / 4 - 15)
    return a1, a2, a3


# Default truncation per misspecified scenario.
_TABULATED_ORDER = {
    Scenario(Family.LAPLACE, Family.GAUSS): 1,
    Scenario(Family.GAUSS, Family.LAPLACE): 3,
}


def default_order(scenario: Scenario) -> int:
    return _TABULATED_ORDER.get(scenario, MAX_ORDER)


def cn(scenario: Scenario, n: int, order: int | None = None) -> float:
    """Direct (series) evaluation of the bias for one truth/model pair.

    ``order`` is the highest power of 1/n kept in the truncated series; it
    only affects the two misspecified scenarios.  ``None`` selects the
    default: first order for Laplace data under the Gaussian model, third
    order for Gaussian data under the Laplace model.
    """
    scenario = Scenario(*scenario) if not isinstance(scenario, Scenario) else scenario
    if order is None:
        order = default_order(scenario)
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in 1..{MAX_ORDER}")
    truth, model = scenario.truth, scenario.model
    if model is Family.GAUSS and truth is Family.GAUSS:
        if n <= 3:
            raise ValueError("exact Gaussian bias needs n > 3")
        return 2.0 * n / (n - 3)
    if n < 1:
        raise ValueError("n must be positive")
    if model is Family.GAUSS:
        value = 3.5 + 13.5 / n
        if order >= 2:
            value += 33.5 / n ** 2
        return value
    if truth is Family.LAPLACE:
        return 2.0 - _SQRT2 / (3.0 * math.sqrt(_PI * n)) + 45.0 / (8.0 * n)
    coeffs = gauss_truth_laplace_coefficients()
    return sum(a / n ** j for j, a in enumerate(coeffs[:order]))


def cn_criterion(scenario: Scenario, n: int, order: int | None = None) -> float:
    return 2.0 * cn(scenario, n, order)
