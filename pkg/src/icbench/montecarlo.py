"""Monte Carlo evaluation of the bias and its C1/C2/C3 decomposition.

Replication ``r`` draws its sample from stream ``(seed, r)``.  With the
pseudo-true parameters ``theta0`` and the MLE ``theta``::

    c1 = l_X(theta) - l_X(theta0)                   (in-sample gain)
    c2 = l_X(theta0) - N E log f(Y|theta0)
    c3 = N (E log f(Y|theta0) - E log f(Y|theta))   (out-of-sample loss)

so ``c1 + c2 + c3 = l_X(theta) - N E log f(Y|theta)``.  ``c2`` has mean zero
and variance proportional to N; ``mean(c1 + c3)`` is the reported "true"
bias.

Replications are processed in fixed-size chunks, possibly on several
threads, and the chunk accumulators are merged in chunk order, so results do
not depend on the thread count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analytic import Scenario, aic_penalty, cn, sugiura_bias
from .distributions import Family, TruthSpec, sample_streams
from .infomat import SingularHessianError, empirical_tic_gauss_arrays, info_matrices, tic_trace
from .models import DegenerateSampleError, expected_loglik, fit_arrays, loglik_arrays, pseudo_true
from .report import BiasReport, Method
from .resampling import bootstrap_batch
from .rng import substream_seed

__all__ = [
    "RunningMoments",
    "ExperimentSpec",
    "DecompositionSummary",
    "BootstrapSummary",
    "desk_reps",
    "desk_boot_reps",
    "replication_terms",
    "run_true_bias",
    "run_bootstrap",
    "run_methods_table",
    "ALL_METHODS",
]

CHUNK = 4096
BOOT_CHUNK = 256
MAX_REDRAWS = 100
K_PARAMS = 2
_BOOT_TAG = 0xB007_B007_B007_B007
ALL_METHODS = tuple(Method)


class RunningMoments:
    """Streaming count/mean/variance with Chan's pairwise merge."""

    __slots__ = ("count", "mean", "m2")

    def __init__(self, count=0, mean=0.0, m2=0.0):
        self.count = count
        self.mean = mean
        self.m2 = m2

    @classmethod
    def of(cls, values):
        v = np.asarray(values, dtype=float).ravel()
        if v.size == 0:
            return cls()
        m = float(v.mean())
        return cls(int(v.size), m, float(((v - m) ** 2).sum()))

    def merge(self, other: "RunningMoments") -> "RunningMoments":
        if other.count == 0:
            return self
        if self.count == 0:
            self.count, self.mean, self.m2 = other.count, other.mean, other.m2
            return self
        n = self.count + other.count
        delta = other.mean - self.mean
        self.mean += delta * other.count / n
        self.m2 += other.m2 + delta * delta * self.count * other.count / n
        self.count = n
        return self

    def update(self, values) -> "RunningMoments":
        return self.merge(RunningMoments.of(values))

    @property
    def variance(self) -> float:
        return self.m2 / (self.count - 1) if self.count > 1 else 0.0

    @property
    def stderr(self) -> float:
        return math.sqrt(self.variance / self.count) if self.count else float("nan")

    def __repr__(self):
        return f"RunningMoments(count={self.count}, mean={self.mean:.6g}, variance={self.variance:.6g})"


def desk_reps(n: int) -> int:
    """Default replications: 1e5 for N <= 100, 1e4 for N <= 400, else 1e3."""
    if n <= 100:
        return 100_000
    if n <= 400:
        return 10_000
    return 1_000


def desk_boot_reps(n: int) -> int:
    """Default outer replications for the bootstrap column."""
    if n <= 100:
        return 10_000
    if n <= 400:
        return 1_000
    return 200


@dataclass(frozen=True)
class ExperimentSpec:
    scenario: Scenario
    n: int
    reps: int | None = None
    seed: int = 42
    methods: tuple = ALL_METHODS
    nb: int = 100
    boot_reps: int | None = None
    order: int | None = None
    threads: int = 1
    truth_loc: float = 0.0
    truth_scale: float = 1.0

    def __post_init__(self):
        if not isinstance(self.scenario, Scenario):
            object.__setattr__(self, "scenario", Scenario(*self.scenario))
        object.__setattr__(self, "methods", tuple(Method(m) for m in self.methods))
        if self.reps is None:
            object.__setattr__(self, "reps", desk_reps(self.n))
        if self.boot_reps is None:
            object.__setattr__(self, "boot_reps", min(self.reps, desk_boot_reps(self.n)))
        if self.reps < 1 or self.boot_reps < 1:
            raise ValueError("replication counts must be positive")
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.nb < 1:
            raise ValueError("nb must be at least 1")

    @property
    def truth(self) -> TruthSpec:
        return TruthSpec(self.scenario.truth, self.truth_loc, self.truth_scale)

    @property
    def workers(self) -> int:
        return self.threads if self.threads > 0 else (os.cpu_count() or 1)


_TERMS = ("c1", "c2", "c3", "c", "c13")


@dataclass
class DecompositionSummary:
    scenario: Scenario
    n: int
    reps: int
    seed: int
    moments: dict = field(default_factory=lambda: {k: RunningMoments() for k in _TERMS})
    tic_hat: RunningMoments = field(default_factory=RunningMoments)
    redraws: int = 0

    def mean(self, term: str) -> float:
        return self.moments[term].mean

    def var(self, term: str) -> float:
        return self.moments[term].variance

    @property
    def true_bias(self) -> float:
        return self.moments["c13"].mean

    @property
    def stderr(self) -> float:
        return self.moments["c13"].stderr


@dataclass
class BootstrapSummary:
    scenario: Scenario
    n: int
    reps: int
    nb: int
    seed: int
    c_star: RunningMoments
    c_star_reduced: RunningMoments
    within_var_full: RunningMoments
    within_var_reduced: RunningMoments
    redraws: int = 0


def _draw_samples(spec: ExperimentSpec, start: int, stop: int):
    """Samples for replications ``start..stop-1``, redrawing degenerate ones.

    Attempt ``a >= 1`` for replication ``r`` reads stream
    ``(substream_seed(seed, r), a)``.
    """
    truth = spec.truth
    reps = np.arange(start, stop, dtype=np.uint64)
    x = sample_streams(truth, spec.n, spec.seed, reps)
    bad = np.flatnonzero(x.max(axis=1) == x.min(axis=1))
    redraws = 0
    attempt = 0
    while bad.size:
        attempt += 1
        if attempt > MAX_REDRAWS:
            raise DegenerateSampleError("replication sample stayed degenerate")
        redraws += bad.size
        seeds = np.array([substream_seed(spec.seed, start + int(b)) for b in bad], dtype=np.uint64)
        x[bad] = sample_streams(truth, spec.n, seeds, np.full(bad.size, attempt, dtype=np.uint64))
        bad = bad[x[bad].max(axis=1) == x[bad].min(axis=1)]
    return x, redraws


def replication_terms(spec: ExperimentSpec, start: int = 0, stop: int | None = None) -> dict:
    """Per-replication c1, c2, c3 (and the plug-in TIC for the Gaussian model)."""
    stop = spec.reps if stop is None else stop
    truth, n, family = spec.truth, spec.n, spec.scenario.model
    x, redraws = _draw_samples(spec, start, stop)
    loc, scale = fit_arrays(family, x)
    theta0 = pseudo_true(family, truth)
    e0 = expected_loglik(theta0, truth)
    e_hat = expected_loglik((family, loc, scale), truth)
    l0 = loglik_arrays(family, theta0.loc, theta0.scale, x)
    l_hat = loglik_arrays(family, loc, scale, x)
    out = {
        "c1": l_hat - l0,
        "c2": l0 - n * e0,
        "c3": n * (e0 - e_hat),
        "direct": l_hat - n * e_hat,
        "redraws": redraws,
    }
    if family is Family.GAUSS:
        out["tic_hat"] = empirical_tic_gauss_arrays(x)
    return out


def _chunk_moments(spec, start, stop):
    t = replication_terms(spec, start, stop)
    m = {
        "c1": RunningMoments.of(t["c1"]),
        "c2": RunningMoments.of(t["c2"]),
        "c3": RunningMoments.of(t["c3"]),
        "c": RunningMoments.of(t["c1"] + t["c2"] + t["c3"]),
        "c13": RunningMoments.of(t["c1"] + t["c3"]),
    }
    tic = RunningMoments.of(t["tic_hat"]) if "tic_hat" in t else RunningMoments()
    return m, tic, t["redraws"]


def _map_chunks(fn, total, chunk, workers):
    bounds = [(lo, min(total, lo + chunk)) for lo in range(0, total, chunk)]
    if workers <= 1 or len(bounds) == 1:
        return [fn(lo, hi) for lo, hi in bounds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda b: fn(*b), bounds))


def run_true_bias(spec: ExperimentSpec) -> DecompositionSummary:
    """Monte Carlo bias with its C1/C2/C3 decomposition over ``spec.reps`` samples."""
    summary = DecompositionSummary(spec.scenario, spec.n, spec.reps, spec.seed)
    for m, tic, redraws in _map_chunks(lambda a, b: _chunk_moments(spec, a, b), spec.reps, CHUNK, spec.workers):
        for k in _TERMS:
            summary.moments[k].merge(m[k])
        summary.tic_hat.merge(tic)
        summary.redraws += redraws
    return summary


def boot_seed(seed: int) -> int:
    """Seed of the bootstrap base keys: replication ``r`` uses ``(boot_seed, r)``."""
    return substream_seed(seed, _BOOT_TAG)


def _boot_chunk(spec, start, stop):
    x, _ = _draw_samples(spec, start, stop)
    bs = boot_seed(spec.seed)
    seeds = np.array([substream_seed(bs, r) for r in range(start, stop)], dtype=np.uint64)
    b = bootstrap_batch(x, spec.scenario.model, seeds, spec.nb)
    return (RunningMoments.of(b.c_star), RunningMoments.of(b.c_star_reduced),
            RunningMoments.of(b.var_full), RunningMoments.of(b.var_reduced), b.redraws)


def run_bootstrap(spec: ExperimentSpec) -> BootstrapSummary:
    """Bootstrap estimates averaged over the first ``spec.boot_reps`` replication samples.

    The bootstrap of replication ``r`` uses base key ``(boot_seed(seed), r)``;
    resample ``i`` reads that key's child stream ``i``.
    """
    acc = [RunningMoments() for _ in range(4)]
    redraws = 0
    for *parts, k in _map_chunks(lambda a, b: _boot_chunk(spec, a, b), spec.boot_reps, BOOT_CHUNK, spec.workers):
        for a, p in zip(acc, parts):
            a.merge(p)
        redraws += k
    return BootstrapSummary(spec.scenario, spec.n, spec.boot_reps, spec.nb, spec.seed, *acc, redraws=redraws)


def run_methods_table(spec: ExperimentSpec) -> list[BiasReport]:
    """One BiasReport per requested method for a single scenario and size."""
    sc, n = spec.scenario, spec.n
    common = dict(scenario=sc, n=n, seed=spec.seed)
    methods = spec.methods
    reports = []
    summary = None
    if Method.TRUE in methods or (Method.TIC_HAT in methods and sc.model is Family.GAUSS):
        summary = run_true_bias(spec)
    for m in methods:
        if m is Method.TRUE:
            reports.append(BiasReport(method=m, estimate=summary.true_bias, stderr=summary.stderr,
                                      reps=spec.reps, **common))
        elif m is Method.AIC:
            reports.append(BiasReport(method=m, estimate=aic_penalty(K_PARAMS), reps=spec.reps, **common))
        elif m is Method.SUGIURA:
            reports.append(BiasReport(method=m, estimate=sugiura_bias(n, K_PARAMS), reps=spec.reps, **common))
        elif m is Method.TIC:
            try:
                value = tic_trace(info_matrices(sc.model, spec.truth))
                reports.append(BiasReport(method=m, estimate=value, reps=spec.reps, **common))
            except SingularHessianError:
                reports.append(BiasReport(method=m, estimate=None, reps=spec.reps, unavailable=True, **common))
        elif m is Method.TIC_HAT:
            if sc.model is Family.GAUSS:
                reports.append(BiasReport(method=m, estimate=summary.tic_hat.mean, stderr=summary.tic_hat.stderr,
                                          reps=spec.reps, **common))
            else:
                reports.append(BiasReport(method=m, estimate=None, reps=spec.reps, unavailable=True, **common))
        elif m is Method.CN:
            reports.append(BiasReport(method=m, estimate=cn(sc, n, spec.order), reps=spec.reps, **common))
        elif m is Method.BN:
            b = run_bootstrap(spec)
            reports.append(BiasReport(method=m, estimate=b.c_star_reduced.mean, stderr=b.c_star_reduced.stderr,
                                      reps=spec.boot_reps, nb=spec.nb, **common))
    return reports
