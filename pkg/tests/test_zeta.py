"""High-precision and vectorized zeta evaluators against mpmath references."""

from __future__ import annotations

import numpy as np
import pytest
from mpmath import mp

from zetamoments.zeta import (
    ComplexHP,
    chi_eval,
    hardy_Z,
    hardy_Z_with_deriv,
    theta,
    zeta_eval,
    zeta_f64,
    zeta_prime_eval,
)


def test_zeta_eval_matches_mpmath():
    with mp.workdps(40):
        for s in (mp.mpc(2, 0), mp.mpc(0.5, 14.1), mp.mpc(1.01, 100.0), mp.mpc(3, -7)):
            got = zeta_eval(s, prec=35).to_mpc()
            ref = mp.zeta(s)
            assert abs(got - ref) < mp.mpf(10) ** (-30)


def test_zeta_prime_matches_mpmath():
    with mp.workdps(40):
        for s in (mp.mpc(2, 3), mp.mpc(0.5, 25.0), mp.mpc(1.5, -40.0)):
            got = zeta_prime_eval(s, prec=32).to_mpc()
            ref = mp.zeta(s, derivative=1)
            assert abs(got - ref) < mp.mpf(10) ** (-27)


def test_complex_hp_preserves_precision_across_ambient_changes():
    """Conversions must not be clipped by whatever mp.dps happens to be."""
    v = zeta_eval(mp.mpc(0.5, 30.0), prec=45)
    mp.dps = 8
    try:
        hi = v.to_mpc()
        with mp.workdps(50):
            ref = mp.zeta(mp.mpc(0.5, 30.0))
            assert abs(hi - ref) < mp.mpf(10) ** (-40)
    finally:
        mp.dps = 15


def test_functional_equation_chi():
    """zeta(s) = chi(s) zeta(1-s) off the critical line."""
    with mp.workdps(35):
        s = mp.mpc(0.3, 18.0)
        lhs = zeta_eval(s, prec=30).to_mpc()
        rhs = chi_eval(s, prec=30).to_mpc() * zeta_eval(1 - s, prec=30).to_mpc()
        assert abs(lhs - rhs) < mp.mpf(10) ** (-25)


def test_hardy_z_is_real_and_signed_like_zeta():
    with mp.workdps(30):
        z14 = hardy_Z(14.0, prec=25)
        z15 = hardy_Z(15.0, prec=25)
        # first zero sits in (14, 15)
        assert z14 * z15 < 0
        zv, zd, _, _ = hardy_Z_with_deriv(14.5, prec=25)
        h = mp.mpf(1) / 10**6
        fd = (hardy_Z(mp.mpf("14.5") + h, prec=25) - hardy_Z(mp.mpf("14.5") - h, prec=25)) / (2 * h)
        assert abs(zd - fd) < 1e-5


def test_theta_matches_siegel_theta():
    with mp.workdps(30):
        for t in (10.0, 50.0, 300.0):
            assert abs(theta(t, prec=25) - mp.siegeltheta(t)) < mp.mpf(10) ** (-20)


def test_zeta_f64_vectorized_accuracy():
    rng = np.random.default_rng(3)
    sigma = rng.uniform(0.5, 2.5, 40)
    tvals = rng.uniform(-120.0, 120.0, 40)
    s = sigma + 1j * tvals
    got = zeta_f64(s)
    with mp.workdps(25):
        for sv, gv in zip(s, got):
            ref = complex(mp.zeta(mp.mpc(sv.real, sv.imag)))
            assert abs(gv - ref) <= 1e-11 * max(1.0, abs(ref))


def test_zeta_f64_scalar_and_shape():
    out = zeta_f64(np.array([2.0 + 0j]))
    assert out.shape == (1,)
    assert abs(out[0] - complex(mp.zeta(2))) < 1e-12


def test_zeta_eval_rejects_pole():
    with pytest.raises(Exception):
        zeta_eval(mp.mpc(1.0, 0.0), prec=30)
