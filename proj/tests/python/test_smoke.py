"""End-to-end smoke tests for the python bindings."""

import math

import pytest

import homemeg as hm


def test_params_and_presets():
    p = hm.Params(4, 0.1, 0.2, 0.5, 0.05)
    assert p.n == 4 and p.alpha == 0.5
    assert "mit-cell" in hm.preset_names()
    mit = hm.preset("mit-cell")
    assert mit.p == pytest.approx(7.5e-5)
    with pytest.raises(ValueError):
        hm.Params(4, -0.5, 0.2, 0.5, 0.05)
    with pytest.raises(ValueError):
        hm.preset("nope")


def test_stationary_and_lambda():
    mit = hm.preset("mit-cell")
    pi = hm.stationary(mit)
    assert sum(pi.as_list()) == pytest.approx(1.0, abs=1e-14)
    assert pi.hc == pytest.approx(0.004, rel=1e-12)
    lam = hm.lambda_value(mit)
    assert lam == pytest.approx(1000.0, rel=1e-9)
    assert 4.0 / lam == pytest.approx(pi.hc, abs=1e-12)


def test_ic_pmf_geometric():
    p = hm.Params(0, 0.3, 0.4, 0.2, 0.2)
    dist = hm.ic_pmf(p, 20)
    for k in range(1, 21):
        assert dist.pmf[k] == pytest.approx(0.2 * 0.8 ** (k - 1), rel=1e-12)
    probs = hm.contact_cond_probs(p)
    assert probs.p_h_given_contact + probs.p_nh_given_contact == pytest.approx(1.0)


def test_flooding_runs_and_estimates():
    p = hm.Params(8, 0.1, 0.1, 0.5, 0.05)
    run = hm.run_flooding(p, source=0, seed=7)
    assert run.completed
    assert run.informed_sizes[0] == 1
    assert run.informed_sizes[-1] == 8
    stats = hm.flooding_time_estimate(p, sources=[0], trials_per_source=20, seed=7)
    assert stats.overall.completed == 20
    assert stats.overall.min <= stats.overall.median <= stats.overall.max
    single = hm.Params(1, 0.1, 0.1, 0.5, 0.05)
    assert hm.run_flooding(single, source=0, seed=1).completion_time == 0


def test_coupled_flooding_sandwich():
    p = hm.Params(12, 0.1, 0.1, 0.5, 0.05)
    for seed in range(5):
        run = hm.coupled_flooding(p, source=0, seed=seed)
        assert run.sandwich_ok
        horizon_plus = run.meg.horizon + 1
        tq = run.er_q.completion_time if run.er_q.completed else horizon_plus
        th = run.meg.completion_time if run.meg.completed else horizon_plus
        tp = run.er_p.completion_time if run.er_p.completed else horizon_plus
        assert tq <= th <= tp
    bad = hm.Params(4, 0.8, 0.8, 0.5, 0.1)
    with pytest.raises(ValueError):
        hm.coupled_flooding(bad, source=0, seed=0)


def test_bounds_and_schedule():
    report = hm.bound_report(hm.preset("mit-cell", 1000))
    assert report.lambda_ == pytest.approx(1000.0, rel=1e-9)
    assert report.thm2_applicable
    sched = hm.phase_schedule(hm.corollary_params(4096, 0.5))
    assert [ph.length for ph in sched.phases] == [136, 21, 21, 21, 21]
    assert sched.total_steps == 220
    with pytest.raises(ValueError):
        hm.phase_schedule(hm.corollary_params(64, 0.5))


def test_exact_distribution():
    p = hm.Params(2, 0.25, 0.65, 0.37, 0.37)
    dist = hm.exact_flooding_distribution(p, source=0, horizon=100)
    assert dist.pmf[1] == pytest.approx(0.37, rel=1e-12)
    assert dist.mean_given_complete == pytest.approx(1 / 0.37, rel=1e-6)
    with pytest.raises(ValueError):
        hm.exact_flooding_distribution(hm.Params(6, 0.3, 0.3, 0.8, 0.1), 0, 10)


def test_fit_round_trip():
    truth = hm.Params(0, 0.3, 0.4, 0.25, 0.25)
    dist = hm.ic_pmf(truth, 40)
    trace = hm.CcdfTrace(
        t_seconds=[86.4 * k for k in (1, 2, 3, 5, 8, 13, 21, 34)],
        ccdf=[dist.ccdf[k] for k in (1, 2, 3, 5, 8, 13, 21, 34)],
    )
    cfg = hm.SearchConfig()
    cfg.grid_points = 4
    cfg.refine_starts = 2
    cfg.max_iterations = 200
    res = hm.fit(trace, cfg)
    assert res.objective < 1e-3
    assert 0.0 < res.params.alpha < 1.0
    assert res.p_h == pytest.approx(res.params.p / (res.params.p + res.params.q))


def test_verify_checks():
    p = hm.Params(16, 0.1, 0.1, 0.5, 0.05)
    result = hm.verify_coupling(p, source=0, trials=10, seed=3)
    assert result.passed
    assert result.check == "coupling"
    oracle = hm.verify_oracle(hm.Params(3, 0.5, 0.5, 0.9, 0.1), trials=20000,
                              seed=3, tv_tol=0.02)
    assert oracle.passed


def test_evolution_and_snapshots():
    p = hm.Params(4, 0.2, 0.3, 0.6, 0.1)
    states = hm.evolve_states(p, ["ND"] * 6, t=0, seed=5)
    assert len(states) == 6
    assert all(s in ("HC", "HD", "NC", "ND") for s in states)
