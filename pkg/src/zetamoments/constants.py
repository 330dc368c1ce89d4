"""Asymptotic constants: the Euler product A0, polytope integrals, and
the predicted leading terms they compose into.

The polytope integrals have no closed form for a >= 2; they are estimated
by rejection-sampled Monte Carlo over a counter-based generator so that
every estimate is bit-reproducible from (seed, samples) on a given
backend and shards merge deterministically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import mpmath as mp
import numpy as np

from . import kernels
from .errors import IntegrityError, PreconditionError
from .mollifier import MollifierParams

_MC_CHUNK = 200_000


class A0Result(NamedTuple):
    value: float
    tail_bound: float


@dataclass(frozen=True)
class PolytopeEstimate:
    """Monte Carlo estimate of a polytope integral; reproducible from seed."""

    mean: float
    std_error: float
    samples: int
    seed: int

    def __post_init__(self):
        if not self.std_error > 0.0:
            raise IntegrityError("polytope estimate has zero standard error")


def euler_A0(a: int, b: int, prime_cutoff: int, prec: int | None = None) -> A0Result:
    """Truncated Euler product prod_p (1-1/p)^(k^2) sum_m tau_{-k}(p^m)^2 p^-m.

    k = a/b.  The inner series is cut when its terms drop below
    10^-(prec+5); the returned tail bound exp(C(k)/P) - 1 is relative and
    comes from the factor's 1 + O(k^2(k+1)^2/4 p^-2) expansion, so the
    product over p > P changes the value by at most that factor.

    Args:
      a: numerator of k (a = 0 gives the empty product, exactly 1).
      b: denominator of k, b >= 1.
      prime_cutoff: include primes up to this bound; must be >= 100.
      prec: working digits; None means float64 with a 16-digit cut.

    Returns:
      A0Result(value, tail_bound).
    """
    if prime_cutoff < 100:
        raise PreconditionError("prime cutoff must be at least 100")
    if b < 1 or a < 0:
        raise PreconditionError("need a >= 0, b >= 1")
    k = a / b
    ksq = k * k
    ck = 2.0 * (ksq * (k + 1.0) ** 2 / 4.0 + 1.0)
    tail = math.expm1(ck / prime_cutoff)
    if a == 0:
        return A0Result(1.0, tail)
    digits = 16 if prec is None else prec
    eps = 10.0 ** (-(digits + 5))
    spf = kernels.spf_sieve_raw(prime_cutoff)
    primes = kernels.primes_from_spf(spf)
    if prec is None:
        q = 1.0 / primes.astype(np.float64)
        series = np.ones_like(q)
        powq = q.copy()
        w = 1.0
        m = 1
        while True:
            w = w * (-k + m - 1) / m
            term_max = w * w * powq[0]
            series += (w * w) * powq
            if term_max < eps or m > 400:
                break
            powq *= q
            m += 1
        logs = ksq * np.log1p(-q) + np.log(series)
        return A0Result(float(math.exp(np.sum(logs))), tail)
    with mp.workdps(prec + 10):
        kq = mp.mpf(a) / b
        total = mp.mpf(1)
        for p in primes:
            pinv = mp.mpf(1) / int(p)
            series = mp.mpf(1)
            w = mp.mpf(1)
            powq = pinv
            m = 1
            while True:
                w = w * (-kq + m - 1) / m
                term = w * w * powq
                series += term
                if abs(term) < eps:
                    break
                powq *= pinv
                m += 1
            total *= (1 - pinv) ** (kq * kq) * series
        return A0Result(float(total), tail)


def polytope_mc(
    a: int,
    b: int,
    B: int,
    which: str,
    samples: int,
    seed: int,
) -> PolytopeEstimate:
    """Monte Carlo value of the polytope integral beta(a,b) or gamma(a,b).

    The integral runs over a x a matrices with row and column sums at most
    one, integrand prod_rows (1-row)^B prod_cols (1-col)^B prod x_ij^(1/b^2-1),
    normalized by Gamma(1/b^2)^(a^2).  Substituting x_ij = u_ij^(b^2)
    removes the algebraic singularity exactly, leaving a bounded weight
    sampled uniformly on the cube with rejection outside the polytope.
    The gamma variant raises the last column's factor to B+1 and divides
    by B+1.

    Args:
      which: "beta" or "gamma".
      samples: total draws, at least 10^4.
      seed: stream key of the counter-based generator.

    Returns:
      PolytopeEstimate with the estimate and its standard error.
    """
    if which not in ("beta", "gamma"):
        raise PreconditionError("which must be 'beta' or 'gamma'")
    if samples < 10_000:
        raise PreconditionError("need at least 10^4 samples")
    if a < 1 or b < 1 or B < 1:
        raise PreconditionError("need a, b, B >= 1")
    bsq = b * b
    col_exp = np.full(a, float(B))
    divisor = 1.0
    if which == "gamma":
        col_exp[a - 1] = float(B + 1)
        divisor = float(B + 1)
    pref = float(bsq) ** (a * a) / math.gamma(1.0 / bsq) ** (a * a) / divisor
    wsum = 0.0
    wsq = 0.0
    inside = 0
    start = 0
    while start < samples:
        count = min(_MC_CHUNK, samples - start)
        s, s2, ins = kernels.polytope_mc_chunk(
            np.uint64(seed), start, count, a, float(bsq), float(B), col_exp
        )
        wsum += s
        wsq += s2
        inside += ins
        start += count
    if inside == 0:
        raise IntegrityError("no samples accepted inside the polytope")
    mean_raw = wsum / samples
    var_raw = max(wsq / samples - mean_raw * mean_raw, 0.0) / samples
    mean = pref * mean_raw
    std_error = pref * math.sqrt(var_raw)
    return PolytopeEstimate(mean=mean, std_error=std_error, samples=samples, seed=seed)


def beta_closed_a1(b: int, B: int) -> float:
    """Closed form of beta(1, b): Gamma(2B+1)/Gamma(2B+1+1/b^2)."""
    return math.gamma(2 * B + 1) / math.gamma(2 * B + 1 + 1.0 / (b * b))


def gamma_closed_a1b1(B: int) -> float:
    """Closed form of gamma(1, 1): 1/((B+1)(2B+2))."""
    return 1.0 / ((B + 1) * (2 * B + 2))


def predicted_moments(
    params: MollifierParams,
    A0: float,
    beta: float,
    gamma_c: float,
    T: float | None = None,
) -> dict[str, float]:
    """Leading-order predictions composed from the computed constants.

    S11_pred and S12_pred are the per-unit-length coefficients of the two
    arithmetic sums; S1_pred combines them into the full first-moment
    prediction A0 (beta/2) T log T (log x)^(a^2/b^2)
    + (a/b) A0 gamma_c T (log x)^(a^2/b^2 + 1).
    """
    if T is None:
        T = params.T
    a, b = params.a, params.b
    x = T ** (params.theta / (a + b))
    logx = math.log(x)
    expo = (a * a) / (b * b)
    s11 = A0 * beta * logx**expo
    s12 = -(a / b) * A0 * gamma_c * logx ** (expo + 1.0)
    s1 = (
        A0 * (beta / 2.0) * T * math.log(T) * logx**expo
        + (a / b) * A0 * gamma_c * T * logx ** (expo + 1.0)
    )
    return {"S11_pred": s11, "S12_pred": s12, "S1_pred": s1}
