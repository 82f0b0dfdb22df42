"""Maximum likelihood fitting and (expected) log-likelihoods.

Model parameters are ``(loc, scale)`` with ``scale`` the variance for the
Gaussian model and the scale for the Laplace model.  The array helpers
(``fit_arrays``, ``loglik_arrays``, ``expected_loglik``) work along the last
axis so whole batches of replications are fitted at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import (
    LOG_2PI,
    Family,
    TruthSpec,
    abs_moment_gauss,
    abs_moment_laplace,
    logpdf,
)

__all__ = [
    "InsufficientDataError",
    "DegenerateSampleError",
    "FittedModel",
    "PseudoTrueParams",
    "fit",
    "fit_arrays",
    "max_loglik",
    "loglik",
    "loglik_arrays",
    "expected_loglik",
    "pseudo_true",
]


class InsufficientDataError(ValueError):
    pass


class DegenerateSampleError(ValueError):
    """All observations are identical, so the scale MLE is zero."""


@dataclass(frozen=True)
class FittedModel:
    family: Family
    loc: float
    scale: float
    n: int

    @property
    def params(self):
        return self.family, self.loc, self.scale


@dataclass(frozen=True)
class PseudoTrueParams:
    family: Family
    loc: float
    scale: float

    @property
    def params(self):
        return self.family, self.loc, self.scale


def fit_arrays(family, x):
    """MLE ``(loc, scale)`` along the last axis of ``x``.

    Gaussian: mean and 1/N variance.  Laplace: median (midpoint of the
    central pair for even N) and mean absolute deviation about it.
    Degenerate rows yield a zero scale; callers decide how to handle them.
    """
    x = np.asarray(x, dtype=float)
    if Family(family) is Family.GAUSS:
        loc = x.mean(axis=-1)
        scale = ((x - loc[..., None]) ** 2).mean(axis=-1)
    else:
        loc = np.median(x, axis=-1)
        scale = np.abs(x - loc[..., None]).mean(axis=-1)
    return loc, scale


def fit(family, sample) -> FittedModel:
    """Fit the Gaussian or Laplace model to a 1-D sample by maximum likelihood."""
    family = Family(family)
    x = np.asarray(sample, dtype=float).ravel()
    if x.size < 2:
        raise InsufficientDataError(f"need at least 2 observations, got {x.size}")
    if np.all(x == x[0]):
        raise DegenerateSampleError("all observations are identical")
    loc, scale = fit_arrays(family, x)
    return FittedModel(family, float(loc), float(scale), int(x.size))


def max_loglik(model: FittedModel) -> float:
    """Closed-form maximized log-likelihood of a fitted model."""
    n = model.n
    if model.family is Family.GAUSS:
        return -0.5 * n * (LOG_2PI + math.log(model.scale)) - 0.5 * n
    return -n * math.log(2.0 * model.scale) - n


def loglik_arrays(family, loc, scale, x):
    """Sum of log densities over the last axis of ``x``.

    ``loc`` and ``scale`` broadcast against ``x.shape[:-1]``.
    """
    x = np.asarray(x, dtype=float)
    loc = np.asarray(loc, dtype=float)[..., None]
    scale = np.asarray(scale, dtype=float)[..., None]
    return logpdf(family, x, loc, scale).sum(axis=-1)


def loglik(model, sample) -> float:
    """Log-likelihood of ``sample`` under a model's parameters.

    ``model`` is a FittedModel, a PseudoTrueParams, or a ``(family, loc,
    scale)`` tuple; the sample need not be the one the model was fitted on.
    """
    family, loc, scale = _params(model)
    x = np.asarray(sample, dtype=float).ravel()
    if x.size < 1:
        raise InsufficientDataError("empty sample")
    if not scale > 0:
        raise ValueError("model scale must be positive")
    return float(loglik_arrays(family, loc, scale, x))


def _params(model):
    if isinstance(model, (FittedModel, PseudoTrueParams)):
        return model.params
    family, loc, scale = model
    return Family(family), loc, scale


def expected_loglik(model, truth: TruthSpec):
    """Per-observation expected log density E_truth[log f(Y | loc, scale)].

    ``model`` is a FittedModel, PseudoTrueParams or ``(family, loc, scale)``
    tuple; ``loc`` and ``scale`` may be arrays.
    """
    family, loc, scale = _params(model)
    loc = np.asarray(loc, dtype=float)
    scale = np.asarray(scale, dtype=float)
    if np.any(scale <= 0):
        raise ValueError("model scale must be positive")
    mu, s = truth.loc, truth.scale
    if family is Family.GAUSS:
        spread = s if truth.family is Family.GAUSS else 2.0 * s * s
        out = -0.5 * np.log(2.0 * np.pi * scale) - (spread + (mu - loc) ** 2) / (2.0 * scale)
    else:
        if truth.family is Family.GAUSS:
            mad = abs_moment_gauss(loc, mu, s)
        else:
            mad = abs_moment_laplace(loc, mu, s)
        out = -np.log(2.0 * scale) - mad / scale
    return out if out.ndim else float(out)


def pseudo_true(family, truth: TruthSpec) -> PseudoTrueParams:
    """Parameters maximizing the expected log-likelihood under ``truth``."""
    family = Family(family)
    if family is Family.GAUSS:
        return PseudoTrueParams(family, truth.loc, truth.variance)
    return PseudoTrueParams(family, truth.loc, truth.mean_abs_deviation())
