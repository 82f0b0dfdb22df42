"""Bootstrap (EIC) estimates of the log-likelihood bias.

For resample ``X*`` of the data ``X`` with MLEs ``theta*`` and ``theta``::

    d1 = l_{X*}(theta*) - l_{X*}(theta)
    d2 = l_{X*}(theta)  - l_X(theta)
    d3 = l_X(theta)     - l_X(theta*)

``d1 + d2 + d3 = l_{X*}(theta*) - l_X(theta*)`` is the naive bootstrap
summand.  ``d2`` has mean zero under resampling but variance growing with N,
so the reduced estimator averages ``d1 + d3`` only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import Family
from .models import DegenerateSampleError, InsufficientDataError, fit_arrays, loglik_arrays
from .rng import StreamKey, substream_seed, uniform_streams

__all__ = [
    "BootstrapConfig",
    "BootstrapResult",
    "BootstrapBatch",
    "bootstrap_bias",
    "bootstrap_batch",
    "resample_indices",
    "MAX_REDRAWS",
]

MAX_REDRAWS = 100
_CHUNK_ELEMENTS = 1 << 21


@dataclass(frozen=True)
class BootstrapConfig:
    nb: int = 100
    base_key: StreamKey = StreamKey(0, 0)

    def __post_init__(self):
        if self.nb < 1:
            raise ValueError("nb must be at least 1")


@dataclass(frozen=True)
class BootstrapResult:
    c_star: float
    c_star_reduced: float
    per_resample_terms: np.ndarray  # shape (nb, 3): d1, d2, d3


@dataclass(frozen=True)
class BootstrapBatch:
    """Per-sample bootstrap summaries for a batch of samples."""

    c_star: np.ndarray
    c_star_reduced: np.ndarray
    var_full: np.ndarray
    var_reduced: np.ndarray
    redraws: int


def resample_indices(seeds, stream_ids, n: int, offset: int = 0):
    """Uniform indices in ``[0, n)`` for each stream, shape ``(k, n)``."""
    u = uniform_streams(seeds, stream_ids, n, offset)
    return np.minimum((u * n).astype(np.int64), n - 1)


def _draw_resamples(x, seeds, nb):
    """Resample every row of ``x`` ``nb`` times; shape ``(R, nb, N)``.

    Resample ``i`` of row ``r`` reads stream ``(seeds[r], i)``.  A degenerate
    resample (all values equal) is redrawn from the next block of ``N``
    draws of the same stream.
    """
    r, n = x.shape
    row_seeds = np.repeat(seeds, nb)
    ids = np.tile(np.arange(nb, dtype=np.uint64), r)
    idx = resample_indices(row_seeds, ids, n)
    xs = np.take_along_axis(np.repeat(x, nb, axis=0), idx, axis=1)
    bad = np.flatnonzero(xs.max(axis=1) == xs.min(axis=1))
    redraws = 0
    attempt = 0
    while bad.size:
        attempt += 1
        if attempt > MAX_REDRAWS:
            raise DegenerateSampleError(f"{bad.size} resamples stayed degenerate after {MAX_REDRAWS} redraws")
        redraws += bad.size
        idx = resample_indices(row_seeds[bad], ids[bad], n, offset=attempt * n)
        xs[bad] = np.take_along_axis(x[bad // nb], idx, axis=1)
        still = xs[bad].max(axis=1) == xs[bad].min(axis=1)
        bad = bad[still]
    return xs.reshape(r, nb, n), redraws


def _terms(family, x, xs):
    """d1, d2, d3 arrays of shape ``(R, nb)``."""
    loc, scale = fit_arrays(family, x)
    loc_s, scale_s = fit_arrays(family, xs)
    l_xs_s = loglik_arrays(family, loc_s, scale_s, xs)
    l_xs_h = loglik_arrays(family, loc[:, None], scale[:, None], xs)
    l_x_h = loglik_arrays(family, loc, scale, x)[:, None]
    l_x_s = loglik_arrays(family, loc_s, scale_s, x[:, None, :])
    return l_xs_s - l_xs_h, l_xs_h - l_x_h, l_x_h - l_x_s


def bootstrap_batch(samples, model_family, base_seeds, nb: int) -> BootstrapBatch:
    """Bootstrap every row of ``samples`` with ``nb`` resamples.

    ``base_seeds[r]`` is the sub-stream seed of row ``r`` (see
    :meth:`StreamKey.child`).  Rows must be non-degenerate.
    """
    family = Family(model_family)
    x = np.asarray(samples, dtype=float)
    if x.ndim != 2 or x.shape[1] < 2:
        raise InsufficientDataError("samples must be a 2-D array with at least 2 columns")
    if np.any(x.max(axis=1) == x.min(axis=1)):
        raise DegenerateSampleError("degenerate sample")
    base_seeds = np.asarray(base_seeds, dtype=np.uint64)
    r, n = x.shape
    step = max(1, _CHUNK_ELEMENTS // (nb * n))
    out = {k: np.empty(r) for k in ("full", "red", "vfull", "vred")}
    redraws = 0
    for lo in range(0, r, step):
        hi = min(r, lo + step)
        xs, k = _draw_resamples(x[lo:hi], base_seeds[lo:hi], nb)
        redraws += k
        d1, d2, d3 = _terms(family, x[lo:hi], xs)
        full = d1 + d2 + d3
        red = d1 + d3
        out["full"][lo:hi] = full.mean(axis=1)
        out["red"][lo:hi] = red.mean(axis=1)
        ddof = 1 if nb > 1 else 0
        out["vfull"][lo:hi] = full.var(axis=1, ddof=ddof)
        out["vred"][lo:hi] = red.var(axis=1, ddof=ddof)
    return BootstrapBatch(out["full"], out["red"], out["vfull"], out["vred"], redraws)


def bootstrap_bias(sample, model_family, cfg: BootstrapConfig) -> BootstrapResult:
    """Naive and variance-reduced bootstrap bias estimates for one sample.

    Resample ``i`` is drawn with replacement using stream ``cfg.base_key.child(i)``.
    """
    family = Family(model_family)
    x = np.asarray(sample, dtype=float).ravel()
    if x.size < 2:
        raise InsufficientDataError("need at least 2 observations")
    if np.all(x == x[0]):
        raise DegenerateSampleError("all observations are identical")
    seed = substream_seed(cfg.base_key.seed, cfg.base_key.stream_id)
    xs, _ = _draw_resamples(x[None, :], np.array([seed], dtype=np.uint64), cfg.nb)
    d1, d2, d3 = (d[0] for d in _terms(family, x[None, :], xs))
    terms = np.column_stack([d1, d2, d3])
    return BootstrapResult(float(terms.sum(axis=1).mean()), float((d1 + d3).mean()), terms)
