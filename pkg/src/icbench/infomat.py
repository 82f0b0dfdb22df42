"""Fisher information, expected Hessian and the TIC trace term.

The Gaussian model is parameterized by ``(xi, tau^2)``, i.e. derivatives are
taken with respect to the variance.  The Laplace model is ``(xi, tau)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import Family, TruthSpec
from .models import DegenerateSampleError, fit_arrays, pseudo_true

__all__ = [
    "SingularHessianError",
    "InfoMatrices",
    "info_gauss_model",
    "info_laplace_model",
    "info_matrices",
    "tic_trace",
    "empirical_tic_gauss",
    "empirical_tic_gauss_arrays",
    "score",
]


class SingularHessianError(ArithmeticError):
    """J is singular, so tr(I J^-1) does not exist."""


@dataclass(frozen=True)
class InfoMatrices:
    I: np.ndarray
    J: np.ndarray
    singular_J: bool


def info_gauss_model(tau2: float, mu3: float = 0.0, mu4: float | None = None) -> InfoMatrices:
    """I and J for the Gaussian model at the pseudo-true variance ``tau2``.

    ``mu3`` and ``mu4`` are the third and fourth central moments of the
    data distribution.
    """
    if not tau2 > 0:
        raise ValueError("tau2 must be positive")
    if mu4 is None:
        mu4 = 3.0 * tau2 ** 2
    if mu4 < tau2 ** 2 * (1 - 1e-12):
        raise ValueError("mu4 must be at least tau2**2")
    off = mu3 / (2.0 * tau2 ** 3)
    I = np.array([[1.0 / tau2, off], [off, mu4 / (4.0 * tau2 ** 4) - 1.0 / (4.0 * tau2 ** 2)]])
    J = np.diag([1.0 / tau2, 1.0 / (2.0 * tau2 ** 2)])
    return InfoMatrices(I, J, False)


def info_laplace_model(tau: float, delta1: float, mu2: float) -> InfoMatrices:
    """I and J for the Laplace model at scale ``tau``.

    ``delta1 = E|X - xi|`` and ``mu2 = E(X - xi)^2`` under the data
    distribution.  The location-location entry of J is identically zero.
    """
    if not tau > 0:
        raise ValueError("tau must be positive")
    I = np.diag([1.0 / tau ** 2, 1.0 / tau ** 2 - 2.0 * delta1 / tau ** 3 + mu2 / tau ** 4])
    J = np.array([[0.0, 0.0], [0.0, -1.0 / tau ** 2 + 2.0 * delta1 / tau ** 3]])
    return InfoMatrices(I, J, True)


def info_matrices(model_family, truth: TruthSpec) -> InfoMatrices:
    """I and J at the pseudo-true parameters of ``model_family`` under ``truth``."""
    theta0 = pseudo_true(model_family, truth)
    if theta0.family is Family.GAUSS:
        return info_gauss_model(theta0.scale, truth.central_moment(3), truth.central_moment(4))
    return info_laplace_model(theta0.scale, truth.mean_abs_deviation(), truth.central_moment(2))


def tic_trace(info: InfoMatrices) -> float:
    """tr(I J^-1)."""
    if info.singular_J:
        raise SingularHessianError("expected Hessian of the Laplace model is singular")
    return float(np.trace(info.I @ np.linalg.inv(info.J)))


def empirical_tic_gauss_arrays(x):
    """Plug-in ``(1 + m4 / m2^2) / 2`` along the last axis (1/N moments)."""
    x = np.asarray(x, dtype=float)
    loc, var = fit_arrays(Family.GAUSS, x)
    m4 = ((x - loc[..., None]) ** 4).mean(axis=-1)
    return 0.5 * (1.0 + m4 / var ** 2)


def empirical_tic_gauss(sample) -> float:
    """TIC trace for the Gaussian model with moments estimated from ``sample``."""
    x = np.asarray(sample, dtype=float).ravel()
    if x.size < 2:
        raise ValueError("need at least 2 observations")
    if np.all(x == x[0]):
        raise DegenerateSampleError("all observations are identical")
    return float(empirical_tic_gauss_arrays(x))


def score(model_family, loc, scale, x):
    """Per-observation score vectors, shape ``x.shape + (2,)``."""
    x = np.asarray(x, dtype=float)
    d = x - loc
    if Family(model_family) is Family.GAUSS:
        return np.stack([d / scale, -0.5 / scale + d * d / (2.0 * scale ** 2)], axis=-1)
    return np.stack([np.sign(d) / scale, -1.0 / scale + np.abs(d) / scale ** 2], axis=-1)
