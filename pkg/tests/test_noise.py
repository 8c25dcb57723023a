"""Noise-variance formulas."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from opocluster.errors import InvalidSqueezing, InvalidVariance
from opocluster.noise import NoiseParams, r_from_db, sample_displacement, \
    sigma2_fin, sigma2_loss, sigma2_total


def test_r_from_db():
    assert r_from_db(0.0) == 0.0
    assert r_from_db(20.0 / math.log(10)) == pytest.approx(1.0)
    with pytest.raises(InvalidSqueezing):
        r_from_db(-1.0)


def test_vacuum_variance_exact():
    p = NoiseParams(0.0, 1.0)
    assert sigma2_fin(p) == 0.5
    assert sigma2_loss(p) == 0.0
    assert sigma2_total(p) == 0.5


def test_reference_point():
    p = NoiseParams(9.4, 0.9)
    assert sigma2_total(p) == pytest.approx(0.1130, abs=1e-4)


def test_loss_variance_formula():
    assert sigma2_loss(NoiseParams(0.0, 0.5)) == pytest.approx(0.5)
    assert sigma2_loss(NoiseParams(0.0, 0.9)) == pytest.approx(1 / 18)


@given(st.floats(0.0, 30.0), st.floats(0.0, 30.0))
def test_sigma2_fin_monotone_in_db(a, b):
    lo, hi = sorted((a, b))
    assert sigma2_fin(NoiseParams(hi, 1.0)) <= sigma2_fin(NoiseParams(lo, 1.0))


@given(st.floats(0.01, 1.0), st.floats(0.01, 1.0))
def test_sigma2_loss_monotone_in_eta(a, b):
    lo, hi = sorted((a, b))
    assert sigma2_loss(NoiseParams(0, hi)) <= sigma2_loss(NoiseParams(0, lo))


def test_params_validation():
    with pytest.raises(InvalidSqueezing):
        NoiseParams(-0.1, 1.0)
    for eta in (0.0, -0.5, 1.5):
        with pytest.raises(ValueError):
            NoiseParams(0.0, eta)


def test_sample_displacement():
    rng = np.random.default_rng(0)
    assert sample_displacement(0.0, rng) == 0.0
    with pytest.raises(InvalidVariance):
        sample_displacement(-1e-9, rng)
    draws = [sample_displacement(0.25, rng) for _ in range(4000)]
    assert np.std(draws) == pytest.approx(0.5, rel=0.1)
