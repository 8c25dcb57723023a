"""Monte Carlo logical-error-rate estimation and threshold location.

Each trial draws an independent displacement per lattice qubit, bins it as
a GKP measurement, decodes the resulting flip pattern with
analog-weighted MWPM, and records the logical membrane parity.  Trials
are seeded with a counter-based scheme so results are reproducible and
independent of worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Optional, Sequence

import numpy as np

from . import noise as noise_mod
from .decoder import correction_from_matching, defect_pair_weights, \
    gkp_decode_array, llr_weight, marginal_flip_probability, mwpm
from .errors import NoCrossing
from .noise import NoiseParams
from .rhg import RhgInstance, build_lattice, logical_parity, syndrome_from_flips

_WILSON_Z = 1.959963984540054  # two-sided 95%

_GOLDEN = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One SplitMix64 output step; the documented 64-bit mixing function."""
    x = (x + _GOLDEN) & _MASK
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK
    x ^= x >> 31
    return x


def mix_seed(master_seed: int, index: int) -> int:
    """Per-trial (or per-point) seed: splitmix64 of master_seed + index steps."""
    return splitmix64((master_seed + index * _GOLDEN) & _MASK)


def effective_sigma2(noise: NoiseParams) -> float:
    """Displacement variance seen by each measured quadrature.

    Finite-squeezing noise enters twice (once from the cluster mode, once
    from the GKP ancilla it is stitched to), loss once:
    2*sigma2_fin + sigma2_loss.
    """
    return noise_mod.sigma2_fin(noise) + noise_mod.sigma2_total(noise)


@dataclass(frozen=True)
class TrialConfig:
    d: int
    noise: NoiseParams
    trials: int
    master_seed: int

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")


@dataclass(frozen=True)
class RatePoint:
    squeezing_db: float
    d: int
    trials: int
    failures: int
    p_logical: float
    ci_low: float
    ci_high: float


@dataclass(frozen=True)
class ThresholdResult:
    eta: float
    threshold_db: float
    crossings: tuple  # of (d_small, d_large, crossing_db)
    uncertainty_db: float
    rate_points: tuple  # of RatePoint, grouped by distance


def wilson_interval(failures: int, trials: int) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    z2 = _WILSON_Z * _WILSON_Z
    p = failures / trials
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2 * trials)) / denom
    half = _WILSON_Z * math.sqrt(
        p * (1 - p) / trials + z2 / (4 * trials * trials)) / denom
    lo = 0.0 if failures == 0 else max(0.0, center - half)
    hi = 1.0 if failures == trials else min(1.0, center + half)
    return lo, hi


def run_trial(lat: RhgInstance, noise: NoiseParams, trial_seed: int) -> int:
    """One noise-sample/decode cycle; returns the logical failure bit.

    Matching weights are the log-likelihood ratio of the marginal flip
    probability at the trial's effective variance, identical for every
    qubit.
    """
    rng = np.random.default_rng(trial_seed)
    s2 = effective_sigma2(noise)
    measured = rng.normal(0.0, math.sqrt(s2), lat.n_qubits)
    bits, _, _ = gkp_decode_array(measured, s2)
    flips = bits.astype(bool)
    defects = syndrome_from_flips(lat, flips)
    if len(defects):
        weight = float(llr_weight(marginal_flip_probability(s2)))
        weights = np.full(lat.n_qubits, weight)
        problem = defect_pair_weights(lat, weights, defects)
        matching = mwpm(problem)
        flips = flips ^ correction_from_matching(lat, problem, matching)
    return logical_parity(lat, flips)


_LATTICES: dict[int, RhgInstance] = {}


def _lattice(d: int) -> RhgInstance:
    if d not in _LATTICES:
        _LATTICES[d] = build_lattice(d)
    return _LATTICES[d]


def _chunk_failures(args) -> int:
    d, squeezing_db, eta, master_seed, start, stop = args
    lat = _lattice(d)
    noise = NoiseParams(squeezing_db, eta)
    return sum(
        run_trial(lat, noise, mix_seed(master_seed, i))
        for i in range(start, stop))


_CHUNK = 250  # trials per task; fixed so results never depend on workers


def estimate_rate(cfg: TrialConfig, workers: int = 1) -> RatePoint:
    """Failure rate with 95% Wilson interval; reproducible for any workers."""
    noise = cfg.noise
    tasks = [
        (cfg.d, noise.squeezing_db, noise.eta, cfg.master_seed,
         start, min(start + _CHUNK, cfg.trials))
        for start in range(0, cfg.trials, _CHUNK)
    ]
    if workers <= 1:
        failures = sum(_chunk_failures(t) for t in tasks)
    else:
        with get_context("fork").Pool(workers) as pool:
            failures = sum(pool.map(_chunk_failures, tasks))
    p = failures / cfg.trials
    lo, hi = wilson_interval(failures, cfg.trials)
    return RatePoint(noise.squeezing_db, cfg.d, cfg.trials, failures, p, lo, hi)


def _logit(p: float) -> float:
    return math.log(p / (1.0 - p))


def _pair_crossing(db_grid, pts_small, pts_large):
    """Interpolated crossing of two rate curves in (dB, logit rate)."""
    diffs = []
    widths = []
    for a, b in zip(pts_small, pts_large):
        floor = 1.0 / (2.0 * a.trials)
        pa = min(max(a.p_logical, floor), 1.0 - floor)
        pb = min(max(b.p_logical, floor), 1.0 - floor)
        diffs.append(_logit(pa) - _logit(pb))
        w = 0.0
        for pt in (a, b):
            lo = min(max(pt.ci_low, floor), 1.0 - floor)
            hi = min(max(pt.ci_high, floor), 1.0 - floor)
            w += ((_logit(hi) - _logit(lo)) / 2.0) ** 2
        widths.append(math.sqrt(w))
    for i in range(len(db_grid) - 1):
        if diffs[i] <= 0.0 < diffs[i + 1]:
            slope = (diffs[i + 1] - diffs[i]) / (db_grid[i + 1] - db_grid[i])
            db = db_grid[i] - diffs[i] / slope
            err = (widths[i] + widths[i + 1]) / 2.0 / abs(slope)
            return db, err
    return None


def threshold_scan(eta: float, distances: Sequence[int],
                   db_grid: Sequence[float], trials_per_point: int,
                   master_seed: int, workers: int = 1,
                   progress=None) -> ThresholdResult:
    """Locate the squeezing threshold from rate-curve crossings.

    Estimates a RatePoint for every (distance, squeezing) pair, then for
    each adjacent distance pair interpolates the crossing of the two
    curves in (dB, logit rate).  The threshold is the mean crossing; the
    quoted uncertainty combines the crossing spread with the interpolated
    confidence widths.
    """
    distances = sorted(distances)
    db_grid = [float(s) for s in db_grid]
    if len(distances) < 2:
        raise ValueError("threshold scan needs at least two distances")
    if len(db_grid) < 3:
        raise ValueError("threshold scan needs at least three grid points")

    curves: dict[int, list[RatePoint]] = {}
    counter = 0
    points = []
    for d in distances:
        curve = []
        for db in db_grid:
            cfg = TrialConfig(d, NoiseParams(db, eta), trials_per_point,
                              mix_seed(master_seed, counter))
            counter += 1
            pt = estimate_rate(cfg, workers=workers)
            curve.append(pt)
            points.append(pt)
            if progress is not None:
                progress(pt)
        curves[d] = curve

    crossings = []
    errors = []
    for d1, d2 in zip(distances, distances[1:]):
        found = _pair_crossing(db_grid, curves[d1], curves[d2])
        if found is None:
            raise NoCrossing(
                f"curves for d={d1} and d={d2} do not cross inside the "
                f"grid [{db_grid[0]}, {db_grid[-1]}] dB at eta={eta}",
                rate_points=points)
        db, err = found
        crossings.append((d1, d2, db))
        errors.append(err)

    values = [c[2] for c in crossings]
    spread = (max(values) - min(values)) / 2.0
    uncertainty = spread + sum(errors) / len(errors)
    return ThresholdResult(
        eta=eta, threshold_db=sum(values) / len(values),
        crossings=tuple(crossings), uncertainty_db=uncertainty,
        rate_points=tuple(points))
