import math

import numpy as np
import pytest

from d2drelay import analytic
from d2drelay.channel import SystemConfig, draw_channels
from d2drelay.montecarlo import (
    Z99,
    ci_halfwidth,
    estimate_outage,
    philox_key,
    point_seed,
    sweep,
    wilson_halfwidth,
    within_standard_errors,
)
from d2drelay.protocol import Case, run_trial


def test_engine_equals_sequential_trial_loop():
    cfg = SystemConfig(n_pairs=3, alpha=0.45)
    trials = 3000
    rng = np.random.Generator(np.random.Philox(key=philox_key(11)))
    hist = [0] * 4
    d2d = 0
    for _ in range(trials):
        res = run_trial(draw_channels(cfg, rng), cfg)
        hist[res.outcome.operating_case - 1] += 1
        d2d += res.d2d_outage
    est = estimate_outage(cfg, trials, 11)
    assert est.case_histogram == tuple(hist)
    assert est.p_od_hat == d2d / trials


def test_worker_count_does_not_change_result(monkeypatch):
    import d2drelay.montecarlo as mc

    monkeypatch.setattr(mc, "BLOCK_UNIFORMS", 4 * 3 * 1000)  # many small blocks
    cfg = SystemConfig(n_pairs=3)
    one = estimate_outage(cfg, 25_001, 5, workers=1)
    eight = estimate_outage(cfg, 25_001, 5, workers=8)
    assert one == eight
    monkeypatch.setattr(mc, "BLOCK_UNIFORMS", 1 << 18)
    assert estimate_outage(cfg, 25_001, 5, workers=3) == one


def test_seed_changes_result():
    cfg = SystemConfig()
    assert estimate_outage(cfg, 10_000, 1) != estimate_outage(cfg, 10_000, 2)


def test_forced_no_decoder():
    est = estimate_outage(SystemConfig(r_ct=1e3), 1, 0)
    assert est.p_oc_hat == 1.0
    assert est.case_histogram == (1, 0, 0, 0)


def test_histogram_and_indicator_bookkeeping():
    est = estimate_outage(SystemConfig(n_pairs=2, alpha=0.45), 50_000, 9)
    assert sum(est.case_histogram) == est.trials
    assert est.p_oc_hat == (est.case_histogram[0] + est.case_histogram[3]) / est.trials
    assert 0.0 <= est.p_od_hat <= 1.0
    assert est.ci_halfwidth_oc == pytest.approx(Z99 * math.sqrt(est.p_oc_hat * (1 - est.p_oc_hat) / est.trials))


def test_no_relay_cases_past_the_bound():
    est = estimate_outage(SystemConfig(alpha=0.6, n_pairs=4), 100_000, 3)
    assert est.case_histogram[1] == est.case_histogram[2] == 0
    assert est.p_oc_hat == 1.0


def test_ci_formula_and_scaling():
    assert ci_halfwidth(0.3, 10_000) == pytest.approx(2.576 * math.sqrt(0.21 / 10_000))
    assert ci_halfwidth(0.3, 20_000) == pytest.approx(ci_halfwidth(0.3, 10_000) / math.sqrt(2), rel=1e-12)


def test_wilson_used_for_small_counts():
    # 5 events in 10^4 trials
    assert ci_halfwidth(5e-4, 10_000) == wilson_halfwidth(5e-4, 10_000)
    assert ci_halfwidth(0.0, 100) > 0.0
    assert ci_halfwidth(1.0, 100) == wilson_halfwidth(1.0, 100)
    assert ci_halfwidth(0.5, 100) == pytest.approx(Z99 * 0.05)


def test_within_standard_errors():
    assert within_standard_errors(0.5, 0.5, 100)
    assert within_standard_errors(0.5 + 0.149, 0.5, 100)
    assert not within_standard_errors(0.5 + 0.151, 0.5, 100)
    assert within_standard_errors(1.0, 1.0, 10)
    assert not within_standard_errors(0.1, 0.0, 10)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        estimate_outage(SystemConfig(), 0, 1)
    with pytest.raises(ValueError):
        estimate_outage(SystemConfig(), 10, 1, workers=0)


def test_single_point_sweep_matches_direct_estimate():
    cfg = SystemConfig(rho=0.5)
    curve = sweep(cfg, "rho", [0.75], 20_000, 17)
    direct = estimate_outage(cfg.replace(rho=0.75), 20_000, point_seed(17, 0))
    assert curve.points[0].estimate == direct
    assert curve.points[0].p_oc_corrected == analytic.cellular_outage(cfg.replace(rho=0.75))


def test_sweep_alpha_analytic_saturates():
    values = [round(0.1 * k, 1) for k in range(1, 10)]
    curve = sweep(SystemConfig(rho=0.75, r_ct=1.0, n_pairs=4), "alpha", values, 2000, 1)
    for pt in curve.points:
        if pt.value >= 0.5:
            assert pt.p_oc_literal == pt.p_oc_corrected == 1.0
        else:
            assert pt.p_oc_corrected < 1.0


def test_sweep_marks_failed_points_and_continues():
    curve = sweep(SystemConfig(), "alpha", [0.3, 1.5, 0.4], 1000, 2)
    assert [pt.failed for pt in curve.points] == [False, True, False]
    assert curve.failed
    assert "alpha" in curve.points[1].error
    assert math.isnan(curve.points[1].p_oc_corrected)
    # later points keep their own seeds
    assert curve.points[2].seed == point_seed(2, 2)


def test_sweep_n_pairs_axis():
    curve = sweep(SystemConfig(), "n_pairs", [1, 2.0, 2.5], 1000, 2)
    assert curve.values[:2] == [1, 2]
    assert curve.points[2].failed


def test_sweep_rejects_bad_axis():
    with pytest.raises(ValueError):
        sweep(SystemConfig(), "gamma", [0.1], 10, 1)
    with pytest.raises(ValueError):
        sweep(SystemConfig(), "alpha", [], 10, 1)


@pytest.mark.slow
def test_run_trial_mean_matches_closed_form_single_pair(mc):
    est = mc(10**6, 101, n_pairs=1, alpha=0.3)
    ref = analytic.cellular_outage(SystemConfig(n_pairs=1, alpha=0.3))
    assert within_standard_errors(est.p_oc_hat, ref, est.trials)


@pytest.mark.slow
def test_decode_failure_probability_matches(mc):
    cfg = SystemConfig(n_pairs=3, alpha=0.3)
    est = mc(10**6, 102, n_pairs=3, alpha=0.3)
    p = analytic.cellular_outage_terms(cfg).p
    assert within_standard_errors(est.pair_decode_failure_hat, p, est.trials * cfg.n_pairs)


@pytest.mark.slow
def test_du2_success_probability_matches(mc):
    cfg = SystemConfig()
    est = mc(10**6, 103)
    phi = analytic.d2d_outage_terms(cfg).phi
    assert within_standard_errors(est.pair_du2_success_hat, phi, est.trials * cfg.n_pairs)


def test_case_enum_values():
    assert [c.value for c in Case] == [1, 2, 3, 4]
