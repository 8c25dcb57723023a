"""Seeding, rate estimation and threshold extraction."""

import math

import pytest

from opocluster.errors import NoCrossing
from opocluster.montecarlo import RatePoint, TrialConfig, _pair_crossing, \
    effective_sigma2, estimate_rate, mix_seed, run_trial, splitmix64, \
    threshold_scan, wilson_interval
from opocluster.noise import NoiseParams, sigma2_fin, sigma2_total
from opocluster.rhg import build_lattice


def test_splitmix64_is_a_bijection_sample():
    outs = {splitmix64(i) for i in range(10_000)}
    assert len(outs) == 10_000
    assert all(0 <= x < 2 ** 64 for x in outs)


def test_mix_seed_decorrelates_indices():
    master = 12345
    seeds = [mix_seed(master, i) for i in range(1000)]
    assert len(set(seeds)) == 1000
    assert mix_seed(master, 7) == mix_seed(master, 7)
    assert mix_seed(master, 7) != mix_seed(master + 1, 7)


def test_effective_sigma2_combines_both_channels():
    p = NoiseParams(8.0, 0.9)
    assert effective_sigma2(p) == pytest.approx(
        2 * sigma2_fin(p) + (1 - 0.9) / (2 * 0.9))
    assert effective_sigma2(p) == pytest.approx(
        sigma2_fin(p) + sigma2_total(p))


def test_wilson_interval_matches_closed_form():
    lo, hi = wilson_interval(10, 100)
    # standard Wilson score interval at 95%
    z = 1.959963984540054
    p, n = 0.1, 100
    denom = 1 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    assert lo == pytest.approx(center - half)
    assert hi == pytest.approx(center + half)
    lo, hi = wilson_interval(0, 50)
    assert lo == 0.0 and 0.0 < hi < 0.1
    lo, hi = wilson_interval(50, 50)
    assert hi == 1.0 and 0.9 < lo < 1.0


def test_run_trial_is_deterministic():
    lat = build_lattice(3)
    noise = NoiseParams(7.0, 1.0)
    a = [run_trial(lat, noise, s) for s in range(50)]
    b = [run_trial(lat, noise, s) for s in range(50)]
    assert a == b
    assert set(a) <= {0, 1}


def test_estimate_rate_reproducible_and_worker_invariant():
    cfg = TrialConfig(3, NoiseParams(7.0, 1.0), 600, master_seed=11)
    p1 = estimate_rate(cfg, workers=1)
    p2 = estimate_rate(cfg, workers=1)
    p4 = estimate_rate(cfg, workers=4)
    assert p1 == p2 == p4
    assert p1.trials == 600
    assert p1.ci_low <= p1.p_logical <= p1.ci_high


def test_trial_config_validation():
    with pytest.raises(ValueError):
        TrialConfig(3, NoiseParams(7.0, 1.0), 0, 1)


def _pt(db, d, trials, failures):
    p = failures / trials
    lo, hi = wilson_interval(failures, trials)
    return RatePoint(db, d, trials, failures, p, lo, hi)


def test_pair_crossing_interpolates_synthetic_curves():
    grid = [1.0, 2.0, 3.0]
    small = [_pt(g, 3, 1000, f) for g, f in zip(grid, (300, 200, 100))]
    large = [_pt(g, 5, 1000, f) for g, f in zip(grid, (400, 200, 50))]
    db, err = _pair_crossing(grid, small, large)
    # equal rates at 2.0 exactly
    assert db == pytest.approx(2.0, abs=0.2)
    assert err > 0


def test_pair_crossing_none_when_ordered():
    grid = [1.0, 2.0, 3.0]
    small = [_pt(g, 3, 1000, f) for g, f in zip(grid, (300, 200, 100))]
    large = [_pt(g, 5, 1000, f) for g, f in zip(grid, (200, 100, 30))]
    assert _pair_crossing(grid, small, large) is None


def test_threshold_scan_input_validation():
    with pytest.raises(ValueError):
        threshold_scan(1.0, [3], [1.0, 2.0, 3.0], 10, 0)
    with pytest.raises(ValueError):
        threshold_scan(1.0, [3, 5], [1.0, 2.0], 10, 0)


def test_threshold_scan_no_crossing_far_above_threshold():
    # at 14-15 dB every trial succeeds; the flat curves never cross
    with pytest.raises(NoCrossing) as e:
        threshold_scan(1.0, [3, 5], [14.0, 14.5, 15.0], 200, 3)
    assert len(e.value.rate_points) == 6


def test_threshold_scan_finds_known_crossing():
    res = threshold_scan(1.0, [3, 5], [6.5, 7.25, 8.0, 8.75], 2500, 21)
    assert 6.5 < res.threshold_db < 8.75
    assert res.eta == 1.0
    assert len(res.crossings) == 1
    assert len(res.rate_points) == 8
    # coarse agreement with the known location
    assert res.threshold_db == pytest.approx(7.9, abs=1.0)
