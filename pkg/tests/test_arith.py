"""Multiplicative-table layer: convolutions, tau weights, Moebius pieces."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetamoments.arith import (
    CoefficientTable,
    FactoredInteger,
    dirichlet_convolve,
    divisors,
    euler_phi,
    f_alpha_gamma,
    heath_brown_mu,
    mobius_of,
    mobius_table,
    restricted_power_coeffs,
    tau_alpha_table,
    tau_k_of,
)
from zetamoments.errors import PreconditionError


def _brute_mobius(n: int) -> int:
    if n == 1:
        return 1
    out, m = 1, n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    if m > 1:
        out = -out
    return out


def test_factored_integer_roundtrip():
    for n in (1, 2, 12, 360, 9973, 2**6 * 3**4 * 11):
        fi = FactoredInteger.from_int(n)
        prod = 1
        for p, e in fi.factors:
            prod *= p**e
        assert prod == n


def test_mobius_table_matches_brute_force():
    table = mobius_table(2000)
    for n in range(1, 2001):
        assert int(table[n]) == _brute_mobius(n)


def test_divisor_and_phi_helpers():
    fi = FactoredInteger.from_int(360)
    ds = divisors(fi)
    assert sorted(ds) == sorted(d for d in range(1, 361) if 360 % d == 0)
    assert euler_phi(fi) == sum(1 for k in range(1, 361) if math.gcd(k, 360) == 1)
    assert mobius_of(FactoredInteger.from_int(30)) == -1
    assert mobius_of(FactoredInteger.from_int(12)) == 0


def test_tau_k_counts_ordered_factorizations():
    # tau_2 is the divisor function; tau_3(p^2) = 6
    assert tau_k_of(FactoredInteger.from_int(12), 2) == 6
    assert tau_k_of(FactoredInteger.from_int(4), 3) == 6
    assert tau_k_of(FactoredInteger.from_int(1), 5) == 1


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=-3, max_value=3),
)
def test_tau_alpha_group_law(num_a, num_b):
    """tau_alpha * tau_beta = tau_(alpha+beta) under Dirichlet convolution."""
    alpha, beta = num_a / 2.0, num_b / 2.0
    n = 300
    fa = tau_alpha_table(alpha, n)
    fb = tau_alpha_table(beta, n)
    fab = tau_alpha_table(alpha + beta, n)
    conv = dirichlet_convolve(fa, fb, n)
    assert np.allclose(conv.values, fab.values, rtol=1e-12, atol=1e-12)


def test_tau_alpha_special_values():
    # tau_1 = unit coefficient of zeta: identically 1
    t1 = tau_alpha_table(1.0, 50)
    assert np.allclose(t1.values[1:], 1.0)
    # tau_(-1) = Moebius
    tm = tau_alpha_table(-1.0, 200)
    mu = mobius_table(200)
    assert np.allclose(tm.values[1:], mu[1:].astype(float))


def test_restricted_power_matches_iterated_convolution():
    rng = np.random.default_rng(5)
    vals = np.zeros(33)
    vals[1:] = rng.standard_normal(32)
    base = CoefficientTable(vals, label="t")
    ref2 = dirichlet_convolve(base, base, 900)
    sq = restricted_power_coeffs(base, 2, 400)
    assert np.allclose(sq.values, ref2.values[:401])
    cube = restricted_power_coeffs(base, 3, 900)
    ref3 = dirichlet_convolve(ref2, base, 900)
    assert np.allclose(cube.values, ref3.values)


def test_heath_brown_identity_is_exact_small():
    z = 500.0
    mu = mobius_table(500)
    for j in (1, 2, 3):
        for n in range(1, 501):
            assert heath_brown_mu(n, j, z) == int(mu[n])


def test_heath_brown_rejects_out_of_range():
    with pytest.raises(PreconditionError):
        heath_brown_mu(100, 2, 50.0)
    with pytest.raises(PreconditionError):
        heath_brown_mu(0, 2, 50.0)


def test_f_alpha_gamma_matches_triple_convolution():
    """f = mu * n^-alpha * n^-gamma coefficientwise on 1..60."""
    alpha, gamma = 0.03, -0.02
    mu = mobius_table(60)
    for n in range(1, 61):
        brute = 0.0
        for d1 in range(1, n + 1):
            if n % d1:
                continue
            for d2 in range(1, n // d1 + 1):
                if (n // d1) % d2:
                    continue
                d3 = n // (d1 * d2)
                brute += mu[d1] * d2 ** (-alpha) * d3 ** (-gamma)
        val = f_alpha_gamma(FactoredInteger.from_int(n), alpha, gamma)
        assert abs(complex(val) - brute) < 1e-10


def test_coefficient_table_validation():
    with pytest.raises(PreconditionError):
        CoefficientTable(np.array([0.0]), label="too-short")
    table = CoefficientTable(np.array([0.0, 1.0, -0.5]), label="t")
    assert table.length == 2 and table[2] == -0.5
    with pytest.raises(PreconditionError):
        table[3]
    with pytest.raises(ValueError):
        table.values[1] = 9.0  # tables are frozen after construction
