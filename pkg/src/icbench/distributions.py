"""Gaussian and Laplace families: densities, samplers and truth-side moments.

Scale conventions follow the two families' natural parameters: a Gaussian is
parameterized by its *variance*, a Laplace by its *scale* ``sigma`` (whose
variance is ``2 sigma**2``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import special

from .rng import StreamKey, normal_streams, uniform_streams

__all__ = [
    "Family",
    "TruthSpec",
    "gaussian_logpdf",
    "laplace_logpdf",
    "logpdf",
    "sample",
    "sample_streams",
    "erf",
    "erfc",
    "abs_moment_gauss",
    "abs_moment_laplace",
]

LOG_2PI = math.log(2.0 * math.pi)


class Family(str, Enum):
    GAUSS = "gauss"
    LAPLACE = "laplace"

    def __str__(self):
        return self.value

    @property
    def label(self) -> str:
        return "Gauss" if self is Family.GAUSS else "Laplace"


@dataclass(frozen=True)
class TruthSpec:
    """Data-generating distribution.

    ``scale`` is the variance for a Gaussian truth and the scale ``sigma``
    for a Laplace truth.
    """

    family: Family
    loc: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not self.scale > 0:
            raise ValueError(f"truth scale must be positive, got {self.scale}")

    @property
    def variance(self) -> float:
        if self.family is Family.GAUSS:
            return self.scale
        return 2.0 * self.scale ** 2

    @property
    def sd(self) -> float:
        return math.sqrt(self.variance)

    def central_moment(self, k: int) -> float:
        """E[(X - loc)**k] for k = 1..4."""
        if k % 2:
            return 0.0
        if self.family is Family.GAUSS:
            return {2: self.scale, 4: 3.0 * self.scale ** 2}[k]
        return {2: 2.0 * self.scale ** 2, 4: 24.0 * self.scale ** 4}[k]

    def mean_abs_deviation(self) -> float:
        """E|X - loc|."""
        if self.family is Family.GAUSS:
            return math.sqrt(2.0 * self.scale / math.pi)
        return self.scale


def _check_positive(name, v):
    if np.any(np.asarray(v) <= 0):
        raise ValueError(f"{name} must be positive")


def gaussian_logpdf(x, loc, var):
    """Log density of N(loc, var) at ``x``."""
    _check_positive("variance", var)
    x = np.asarray(x, dtype=float)
    return -0.5 * np.log(2.0 * np.pi * var) - (x - loc) ** 2 / (2.0 * var)


def laplace_logpdf(x, loc, scale):
    """Log density of Laplace(loc, scale) at ``x``."""
    _check_positive("scale", scale)
    x = np.asarray(x, dtype=float)
    return -np.log(2.0 * scale) - np.abs(x - loc) / scale


def logpdf(family, x, loc, scale):
    if Family(family) is Family.GAUSS:
        return gaussian_logpdf(x, loc, scale)
    return laplace_logpdf(x, loc, scale)


def _transform(truth: TruthSpec, u_or_z):
    if truth.family is Family.GAUSS:
        return truth.loc + math.sqrt(truth.scale) * u_or_z
    h = u_or_z - 0.5
    return truth.loc - truth.scale * np.sign(h) * np.log1p(-2.0 * np.abs(h))


def sample_streams(truth: TruthSpec, n: int, seeds, stream_ids) -> np.ndarray:
    """One sample of size ``n`` per stream, shape ``(len(stream_ids), n)``."""
    if n < 1:
        raise ValueError("sample size must be at least 1")
    if truth.family is Family.GAUSS:
        return _transform(truth, normal_streams(seeds, stream_ids, n))
    return _transform(truth, uniform_streams(seeds, stream_ids, n))


def sample(truth: TruthSpec, n: int, key: StreamKey) -> np.ndarray:
    """Draw ``n`` iid observations from ``truth`` using stream ``key``.

    Gaussian draws come from the polar method; Laplace draws use the inverse
    CDF ``x = mu - sigma * sign(u - 1/2) * log(1 - 2|u - 1/2|)``.
    """
    return sample_streams(truth, n, key.seed, key.stream_id)[0]


def erf(x):
    return special.erf(x)


def erfc(x):
    return special.erfc(x)


def abs_moment_gauss(xi, mu, var):
    """E|X - xi| for X ~ N(mu, var)."""
    _check_positive("variance", var)
    d = np.asarray(xi, dtype=float) - mu
    return d * special.erf(d / np.sqrt(2.0 * var)) + np.sqrt(2.0 * var / np.pi) * np.exp(-d * d / (2.0 * var))


def abs_moment_laplace(xi, mu, scale):
    """E|X - xi| for X ~ Laplace(mu, scale)."""
    _check_positive("scale", scale)
    d = np.abs(np.asarray(xi, dtype=float) - mu)
    return d + scale * np.exp(-d / scale)
