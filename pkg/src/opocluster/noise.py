"""Displacement-noise variances from squeezing and loss.

Finite squeezing contributes a per-quadrature variance e^{-2r}/2 with
r = dB * ln(10)/20; accumulated loss before homodyne detection contributes
(1 - eta)/(2 eta).  Both act as zero-mean Gaussian displacement channels,
so variances add.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidSqueezing, InvalidVariance


@dataclass(frozen=True)
class NoiseParams:
    squeezing_db: float
    eta: float  # total transmission in (0, 1]

    def __post_init__(self):
        if self.squeezing_db < 0:
            raise InvalidSqueezing(
                f"squeezing must be >= 0 dB, got {self.squeezing_db}")
        if not 0 < self.eta <= 1:
            raise ValueError(f"eta must lie in (0, 1], got {self.eta}")


def r_from_db(s: float) -> float:
    """Squeezing parameter r for a squeezing level s in dB."""
    if s < 0:
        raise InvalidSqueezing(f"squeezing must be >= 0 dB, got {s}")
    return s * math.log(10) / 20.0


def sigma2_fin(p: NoiseParams) -> float:
    """Finite-squeezing displacement variance e^{-2r}/2."""
    return math.exp(-2.0 * r_from_db(p.squeezing_db)) / 2.0


def sigma2_loss(p: NoiseParams) -> float:
    """Loss displacement variance (1 - eta)/(2 eta)."""
    return (1.0 - p.eta) / (2.0 * p.eta)


def sigma2_total(p: NoiseParams) -> float:
    """Combined finite-squeezing plus loss variance."""
    return sigma2_fin(p) + sigma2_loss(p)


def sample_displacement(sigma2: float, rng) -> float:
    """One quadrature sample of the isotropic displacement channel.

    ``rng`` is a numpy Generator; a zero variance returns exactly 0.
    """
    if sigma2 < 0:
        raise InvalidVariance(f"variance must be >= 0, got {sigma2}")
    if sigma2 == 0:
        return 0.0
    return float(rng.normal(0.0, math.sqrt(sigma2)))
