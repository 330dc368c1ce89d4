"""Euler products and polytope volumes for the leading-order constants."""

from __future__ import annotations

import math

import numpy as np
import pytest
from mpmath import mp

from zetamoments.constants import (
    beta_closed_a1,
    euler_A0,
    gamma_closed_a1b1,
    polytope_mc,
    predicted_moments,
)
from zetamoments.errors import PreconditionError


def test_A0_k1_is_six_over_pi_squared():
    out = euler_A0(1, 1, 500_000)
    assert abs(out.value - 6.0 / math.pi**2) < out.tail_bound


def test_A0_tail_bound_decreases_and_brackets():
    small = euler_A0(1, 2, 2_000)
    big = euler_A0(1, 2, 200_000)
    assert big.tail_bound < small.tail_bound
    assert abs(small.value - big.value) < small.tail_bound


def test_A0_high_precision_path_agrees():
    fast = euler_A0(2, 3, 20_000)
    slow = euler_A0(2, 3, 20_000, prec=40)
    assert abs(fast.value - float(slow.value)) < 1e-12


def test_beta_closed_forms():
    # beta(1, 1, B) = Gamma(2B+1)GAMMA(2)/Gamma(2B+2) = 1/(2B+1)
    for big_b in (1, 2, 3):
        assert math.isclose(beta_closed_a1(1, big_b), 1.0 / (2 * big_b + 1))
    with mp.workdps(30):
        got = beta_closed_a1(2, 1)
        ref = mp.gamma(3) / mp.gamma(3 + mp.mpf(1) / 4)
        assert abs(got - float(ref)) < 1e-14


def test_gamma_closed_form():
    for big_b in (1, 2, 4):
        assert math.isclose(
            gamma_closed_a1b1(big_b), 1.0 / ((big_b + 1) * (2 * big_b + 2))
        )


def test_polytope_mc_matches_beta_closed():
    for b in (1, 2):
        est = polytope_mc(1, b, 1, "beta", samples=200_000, seed=11)
        assert abs(est.mean - beta_closed_a1(b, 1)) < 3.0 * est.std_error


def test_polytope_mc_matches_gamma_closed():
    est = polytope_mc(1, 1, 1, "gamma", samples=200_000, seed=11)
    assert abs(est.mean - 0.125) < 3.0 * est.std_error


def test_polytope_mc_error_scaling():
    lo = polytope_mc(1, 2, 1, "beta", samples=50_000, seed=3)
    hi = polytope_mc(1, 2, 1, "beta", samples=200_000, seed=3)
    ratio = lo.std_error / hi.std_error
    assert 0.7 * 2.0 < ratio < 1.3 * 2.0


def test_polytope_mc_deterministic_given_seed():
    a = polytope_mc(2, 1, 1, "beta", samples=30_000, seed=9)
    b = polytope_mc(2, 1, 1, "beta", samples=30_000, seed=9)
    assert a.mean == b.mean and a.std_error == b.std_error


def test_polytope_mc_rejects_tiny_sample_counts():
    with pytest.raises(PreconditionError):
        polytope_mc(1, 1, 1, "beta", samples=100, seed=1)


def test_predicted_moments_positive_and_scaling():
    out = predicted_moments(1, 1, 1, x=1.0e6, T=1.0e12)
    assert set(out) >= {"S1_leading", "S2_leading", "J_lower"}
    assert all(v > 0 for v in out.values())
