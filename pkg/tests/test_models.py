import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import expected_loglik_oracle
from icbench.distributions import Family, TruthSpec, sample
from icbench.models import (
    DegenerateSampleError,
    InsufficientDataError,
    expected_loglik,
    fit,
    fit_arrays,
    loglik,
    max_loglik,
    pseudo_true,
)
from icbench.rng import StreamKey

COMBOS = list(itertools.product(Family, Family))


def test_gauss_fit_example():
    m = fit("gauss", [1.0, 2.0, 3.0])
    assert m.loc == pytest.approx(2.0)
    assert m.scale == pytest.approx(2.0 / 3.0)
    assert m.n == 3


def test_laplace_fit_examples():
    m = fit("laplace", [1.0, 2.0, 6.0])
    assert (m.loc, m.scale) == (pytest.approx(2.0), pytest.approx(5.0 / 3.0))
    m = fit("laplace", [1.0, 2.0, 3.0, 10.0])
    assert (m.loc, m.scale) == (pytest.approx(2.5), pytest.approx(2.5))


def test_laplace_even_n_matches_grid_search():
    x = np.array([1.0, 2.0, 3.0, 10.0])
    grid = np.linspace(0, 12, 1201)
    mad = np.abs(x[None, :] - grid[:, None]).mean(axis=1)
    m = fit("laplace", x)
    assert m.scale == pytest.approx(mad.min(), abs=1e-12)


def test_fit_errors():
    with pytest.raises(InsufficientDataError):
        fit("gauss", [1.0])
    with pytest.raises(DegenerateSampleError):
        fit("laplace", [2.0, 2.0, 2.0])


@pytest.mark.parametrize("family", list(Family))
def test_max_loglik_matches_direct_sum(family):
    x = sample(TruthSpec(Family.LAPLACE, 1.0, 2.0), 37, StreamKey(3, 1))
    m = fit(family, x)
    assert max_loglik(m) == pytest.approx(loglik(m, x), rel=1e-12)


finite = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
spread = lambda v: max(v) - min(v) > 1e-3


@settings(max_examples=60, deadline=None)
@given(st.lists(finite, min_size=2, max_size=30).filter(spread),
       st.sampled_from(list(Family)), st.floats(-1, 1), st.floats(0.5, 2.0))
def test_fit_is_a_maximum(x, family, dloc, fscale):
    # Any perturbation of the MLE must not increase the log-likelihood.
    m = fit(family, x)
    best = loglik(m, x)
    other = loglik((family, m.loc + dloc, m.scale * fscale), x)
    assert other <= best + 1e-9 * max(1.0, abs(best))


@settings(max_examples=40, deadline=None)
@given(st.lists(finite, min_size=2, max_size=30).filter(spread),
       st.floats(-10, 10), st.floats(0.1, 10))
def test_fit_equivariance(x, shift, mult):
    x = np.asarray(x)
    for family in Family:
        a = fit(family, x)
        b = fit(family, x * mult + shift)
        assert b.loc == pytest.approx(a.loc * mult + shift, abs=1e-8 * (1 + abs(shift) + mult * 50))
        power = 2 if family is Family.GAUSS else 1
        assert b.scale == pytest.approx(a.scale * mult ** power, rel=1e-8)


def test_fit_arrays_matches_rowwise_fit():
    x = np.random.default_rng(0).normal(size=(5, 8))
    for family in Family:
        loc, scale = fit_arrays(family, x)
        for i in range(5):
            m = fit(family, x[i])
            assert (loc[i], scale[i]) == (pytest.approx(m.loc), pytest.approx(m.scale))


@pytest.mark.parametrize("combo", range(4))
def test_expected_loglik_against_quadrature(combo):
    truth_family, model_family = COMBOS[combo]
    rng = np.random.default_rng(100 + combo)
    for _ in range(20):
        truth = TruthSpec(truth_family, rng.uniform(-2, 2), rng.uniform(0.3, 3))
        loc, scale = rng.uniform(-3, 3), rng.uniform(0.2, 4)
        got = expected_loglik((model_family, loc, scale), truth)
        want = expected_loglik_oracle(model_family, loc, scale, truth)
        assert got == pytest.approx(want, abs=1e-8)


def test_expected_loglik_vectorized():
    truth = TruthSpec(Family.GAUSS)
    locs = np.array([0.0, 0.5, -1.0])
    scales = np.array([1.0, 2.0, 0.5])
    vec = expected_loglik((Family.LAPLACE, locs, scales), truth)
    for i in range(3):
        assert vec[i] == pytest.approx(expected_loglik((Family.LAPLACE, locs[i], scales[i]), truth))


@pytest.mark.parametrize("truth_family,model_family", COMBOS)
def test_pseudo_true_is_grid_argmax(truth_family, model_family):
    truth = TruthSpec(truth_family, 0.4, 1.3)
    p = pseudo_true(model_family, truth)
    locs = p.loc + np.linspace(-0.2, 0.2, 41) * p.scale
    scales = p.scale * np.linspace(0.8, 1.2, 41)
    L, S = np.meshgrid(locs, scales)
    surface = expected_loglik((model_family, L, S), truth)
    i, j = np.unravel_index(np.argmax(surface), surface.shape)
    assert (i, j) == (20, 20)


def test_pseudo_true_values():
    assert pseudo_true("gauss", TruthSpec("laplace")).scale == pytest.approx(2.0)
    assert pseudo_true("laplace", TruthSpec("gauss")).scale == pytest.approx(math.sqrt(2 / math.pi))


@pytest.mark.parametrize("truth_family,model_family", COMBOS)
def test_fit_converges_to_pseudo_true(truth_family, model_family):
    truth = TruthSpec(truth_family, 1.0, 2.0)
    x = sample(truth, 200_000, StreamKey(8, 0))
    m = fit(model_family, x)
    p = pseudo_true(model_family, truth)
    assert m.loc == pytest.approx(p.loc, abs=0.02)
    assert m.scale == pytest.approx(p.scale, rel=0.02)
