import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import digamma

from icbench import montecarlo
from icbench.analytic import Scenario
from icbench.distributions import Family, sample_streams
from icbench.montecarlo import (
    ExperimentSpec,
    RunningMoments,
    desk_boot_reps,
    desk_reps,
    replication_terms,
    run_bootstrap,
    run_methods_table,
    run_true_bias,
)
from icbench.report import Method
from icbench.rng import substream_seed

SCENARIOS = [Scenario(t, m) for t in Family for m in Family]


@pytest.mark.parametrize("sc", SCENARIOS, ids=str)
def test_decomposition_telescopes(sc):
    t = replication_terms(ExperimentSpec(sc, 25, reps=2000, seed=3))
    total = t["c1"] + t["c2"] + t["c3"]
    np.testing.assert_allclose(total, t["direct"], rtol=1e-10, atol=1e-9)
    # c1 is a maximized gain over theta0; c3 is an expected-loss gap from theta0.
    assert t["c1"].min() >= -1e-9
    assert t["c3"].min() >= -1e-9


@pytest.mark.parametrize("sc", SCENARIOS, ids=str)
def test_c2_has_mean_zero(sc):
    s = run_true_bias(ExperimentSpec(sc, 25, reps=20_000, seed=11, threads=2))
    assert abs(s.mean("c2")) < 3 * s.moments["c2"].stderr


def test_gauss_c1_matches_digamma_oracle():
    n = 25
    want = -0.5 * n * (digamma((n - 1) / 2) + math.log(2 / n))
    s = run_true_bias(ExperimentSpec(Scenario("gauss", "gauss"), n, reps=40_000, seed=5, threads=2))
    assert abs(s.mean("c1") - want) < 3 * s.moments["c1"].stderr
    assert abs(s.true_bias - 2 * n / (n - 3)) < 3 * s.stderr


def test_thread_count_does_not_change_results():
    sc = Scenario("laplace", "gauss")
    a = run_true_bias(ExperimentSpec(sc, 30, reps=10_000, seed=8, threads=1))
    b = run_true_bias(ExperimentSpec(sc, 30, reps=10_000, seed=8, threads=4))
    for k in ("c1", "c2", "c3", "c", "c13"):
        assert (a.mean(k), a.var(k)) == (b.mean(k), b.var(k))
    assert a.tic_hat.mean == b.tic_hat.mean
    ba = run_bootstrap(ExperimentSpec(sc, 30, reps=600, nb=20, seed=8, threads=1))
    bb = run_bootstrap(ExperimentSpec(sc, 30, reps=600, nb=20, seed=8, threads=3))
    assert ba.c_star_reduced.mean == bb.c_star_reduced.mean
    assert ba.c_star.m2 == bb.c_star.m2


def test_seed_changes_results():
    sc = Scenario("gauss", "gauss")
    a = run_true_bias(ExperimentSpec(sc, 10, reps=500, seed=1))
    b = run_true_bias(ExperimentSpec(sc, 10, reps=500, seed=2))
    assert a.true_bias != b.true_bias


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=0, max_size=40), st.integers(0, 40))
def test_running_moments_merge_matches_numpy(values, cut):
    v = np.array(values, dtype=float)
    cut = min(cut, v.size)
    m = RunningMoments.of(v[:cut]).merge(RunningMoments.of(v[cut:]))
    assert m.count == v.size
    if v.size:
        assert m.mean == pytest.approx(v.mean(), abs=1e-9)
    if v.size > 1:
        assert m.variance == pytest.approx(v.var(ddof=1), rel=1e-9, abs=1e-9)


def test_degenerate_replication_is_redrawn(monkeypatch):
    calls = []

    def fake(truth, n, seeds, stream_ids):
        out = sample_streams(truth, n, seeds, stream_ids)
        if not calls:
            out[0] = 1.0
        calls.append((np.array(seeds).copy(), np.array(stream_ids).copy()))
        return out

    monkeypatch.setattr(montecarlo, "sample_streams", fake)
    spec = ExperimentSpec(Scenario("gauss", "gauss"), 10, reps=5, seed=99)
    t = replication_terms(spec)
    assert t["redraws"] == 1
    seeds, ids = calls[1]
    assert seeds.tolist() == [substream_seed(99, 0)] and ids.tolist() == [1]
    assert np.all(np.isfinite(t["c1"]))


def test_desk_policies():
    assert desk_reps(25) == desk_reps(100) == 100_000
    assert desk_reps(400) == 10_000 and desk_reps(1600) == 1_000
    assert desk_boot_reps(25) == 10_000 and desk_boot_reps(1600) == 200
    spec = ExperimentSpec(Scenario("gauss", "gauss"), 25, reps=50)
    assert spec.boot_reps == 50
    with pytest.raises(ValueError):
        ExperimentSpec(Scenario("gauss", "gauss"), 1)
    with pytest.raises(ValueError):
        ExperimentSpec(Scenario("gauss", "gauss"), 25, nb=0)


def test_methods_table_rows():
    spec = ExperimentSpec(Scenario("gauss", "laplace"), 25, reps=300, boot_reps=40, nb=10, seed=4)
    rows = {r.method: r for r in run_methods_table(spec)}
    assert list(rows) == list(Method)
    assert rows[Method.TIC].unavailable and rows[Method.TIC].estimate is None
    assert rows[Method.TIC_HAT].unavailable
    assert rows[Method.AIC].estimate == 2.0
    assert rows[Method.BN].nb == 10 and rows[Method.BN].reps == 40
    assert rows[Method.TRUE].reps == 300 and rows[Method.TRUE].stderr > 0

    spec = ExperimentSpec(Scenario("laplace", "gauss"), 25, reps=300, methods=(Method.TIC, Method.TIC_HAT), seed=4)
    rows = {r.method: r for r in run_methods_table(spec)}
    assert rows[Method.TIC].estimate == pytest.approx(3.5)
    assert rows[Method.TIC_HAT].estimate > 1.0
