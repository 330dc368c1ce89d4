"""Discrete sums over zeros and the arithmetic sums they are compared to.

``direct_zero_sums`` accumulates over a certified zero cache; on the
critical line with real coefficient tables all summands reduce to
absolute values, so the sums are manifestly real.  ``arithmetic_sums``
evaluates the quadratic forms S11 and S12 of the mollifier coefficients,
switching to a block-sieved streaming path when a = b = 1 and the support
is too large for dense tables.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels, zeros as zeros_mod
from .arith import CoefficientTable
from .errors import PreconditionError, VerificationError
from .mollifier import MollifierParams, build_tables
from .zeros import ZeroCache

_DENSE_BUDGET = 20_000_000
_STREAM_BLOCK = 10_000_000
# soft asymptotic floor for J_{-1}(T): half of (3/(2 pi^3)) T
_SOFT_J1_COEF = 3.0 / (2.0 * math.pi**3)


def _psi_sq_over_n(n: np.ndarray, logx: float, two_b: int) -> np.ndarray:
    t = (logx - np.log(n)) / logx
    return np.where(t > 0.0, t, 0.0) ** two_b / n


def _streaming_s11(params: MollifierParams) -> float:
    """S11 for a = b = 1 without tables: sum over squarefree n <= x of
    psi(n)^2/n, block-sieved."""
    x_int = int(params.x)
    logx = math.log(params.x)
    spf = kernels.spf_sieve_raw(int(math.isqrt(x_int)) + 1)
    primes = kernels.primes_from_spf(spf)
    total = 0.0
    lo = 1
    while lo <= x_int:
        hi = min(lo + _STREAM_BLOCK, x_int + 1)
        flags = kernels.squarefree_block(lo, hi, primes)
        n = (lo + np.nonzero(flags)[0]).astype(np.float64)
        total += float(np.sum(_psi_sq_over_n(n, logx, 2 * params.B)))
        lo = hi
    return total


def arithmetic_sums(
    params: MollifierParams,
    prec: int | None = None,
    dense_budget: int = _DENSE_BUDGET,
) -> dict:
    """The mollifier's quadratic sums S11 = sum r(n)^2/n and
    S12 = sum_{l m = n} Lambda(l) r(m) r(n) / n over n <= x^a.

    Dense tables are used when x^a fits the budget; otherwise, for
    a = b = 1, S11 streams over squarefree blocks (exact, no truncation)
    and S12 is computed on a truncated table with the truncation flagged.

    Returns:
      dict with S11_exact, S12_exact, and truncation metadata
      (s12_truncated_at is None when S12 covers the full support).
    """
    x_int = int(params.x)
    full = x_int**params.a
    out: dict = {"support": full, "s12_truncated_at": None}
    if full <= dense_budget:
        tables = build_tables(params, prec=prec, include_q=False)
        r = tables["R"].values if prec is None else tables["R"].values.astype(float)
        n = np.arange(len(r), dtype=np.float64)
        n[0] = 1.0
        out["S11_exact"] = float(np.sum(r * r / n))
        out["S12_exact"] = _s12_dense(r, x_int)
        return out
    if params.a != 1 or params.b != 1:
        raise PreconditionError(
            "support exceeds the dense budget and no streaming path exists "
            "for a/b != 1"
        )
    out["S11_exact"] = _streaming_s11(params)
    # a = b = 1: r(n) = mu(n) psi(n); S12 on a truncated range, flagged
    from .arith import mobius_table
    from .mollifier import psi_values

    cut = min(x_int, dense_budget)
    r = mobius_table(cut).astype(np.float64) * psi_values(params, cut)
    out["S12_exact"] = _s12_dense(r, cut)
    out["s12_truncated_at"] = None if cut == x_int else cut
    return out


def _s12_dense(r: np.ndarray, nmax: int) -> float:
    """sum over prime powers l = p^j and m with l m <= nmax of
    log(p) r(m) r(l m)/(l m); r is the dense coefficient array."""
    nmax = min(nmax, len(r) - 1)
    if nmax < 2:
        return 0.0
    spf = kernels.spf_sieve_raw(nmax)
    primes = kernels.primes_from_spf(spf)
    total = 0.0
    for p in primes:
        logp = math.log(p)
        ell = int(p)
        while ell <= nmax:
            m_hi = nmax // ell
            m = np.arange(1, m_hi + 1, dtype=np.int64)
            total += logp * float(
                np.sum(r[m] * r[ell * m] / (ell * m.astype(np.float64)))
            )
            ell *= int(p)
    return total


def S1_via_ng(S11: float, S12: float, T: float) -> float:
    """Two-term main value N(T) S11 - (T/pi) S12 of the first moment.

    N(T) is the exact zero count; the formula's o(T) remainder is not
    modeled, so comparisons against the direct zero sum are diagnostics.
    """
    n_t = zeros_mod.count_exact(T)
    return n_t * S11 - (T / math.pi) * S12


def _eval_table_at_zeros(table: CoefficientTable, gammas: np.ndarray) -> np.ndarray:
    """|table evaluated at 1/2 + i gamma|^2 for each gamma, float64."""
    vals = table.values[1:].astype(np.float64)
    nz = np.nonzero(vals)[0]
    if len(nz) == 0:
        return np.zeros(len(gammas))
    n = (nz + 1).astype(np.float64)
    amp = vals[nz] / np.sqrt(n)
    logn = np.log(n)
    out = np.empty(len(gammas))
    chunk = 128
    for i in range(0, len(gammas), chunk):
        g = gammas[i: i + chunk]
        phases = np.exp(-1j * np.outer(g, logn))
        s = phases @ amp.astype(np.complex128)
        out[i: i + chunk] = (s * s.conjugate()).real
    return out


def direct_zero_sums(
    cache: ZeroCache,
    tables: dict[str, CoefficientTable],
    k_list: list[float],
    T: float,
) -> dict:
    """S1, S2 and the negative moments J(k) summed over zeros up to T.

    On the critical line with real tables, P(1-rho) is the conjugate of
    P(rho) and likewise for zeta', so S1 = sum |R(rho)|^2,
    S2 = sum |zeta'(rho)|^2 |Q(rho)|^2, J(k) = sum |zeta'(rho)|^(-2k),
    accumulated in fixed zero-index order.

    Args:
      cache: certified zero cache covering T.
      tables: dict with R (= P^a) and Q (= P^(a+b)) coefficient tables.
      k_list: exponents for J; arbitrary reals allowed.
      T: upper ordinate.

    Returns:
      dict with S1_direct, S2_direct, J_direct (map k -> value), n_zeros.
    """
    if not cache.certified:
        raise PreconditionError("zero cache is not certified")
    if T > cache.t_max * (1 + 1e-12):
        raise PreconditionError("zero cache does not cover T")
    gammas = cache.gammas_f64()
    keep = gammas <= T
    gammas = gammas[keep]
    zp = np.array(
        [complex(rec.zeta_prime) for rec, k in zip(cache.records, keep) if k]
    )
    zp_sq = (zp * zp.conjugate()).real
    s1_terms = _eval_table_at_zeros(tables["R"], gammas)
    s2_terms = zp_sq * _eval_table_at_zeros(tables["Q"], gammas)
    j_map = {}
    for k in k_list:
        j_map[k] = float(np.sum(zp_sq ** (-float(k))))
    return {
        "S1_direct": float(np.sum(s1_terms)),
        "S2_direct": float(np.sum(s2_terms)),
        "J_direct": j_map,
        "n_zeros": int(len(gammas)),
    }


def holder_bound(S1: float, S2: float, k: float) -> float:
    """The lower bound S1^(k+1)/S2^k for the negative moment J(k)."""
    if not (S1 > 0.0 and S2 > 0.0):
        raise PreconditionError("holder bound needs positive S1, S2")
    return S1 ** (k + 1.0) / S2**k


def holder_verify(
    cache: ZeroCache,
    tables: dict[str, CoefficientTable],
    k,
    T: float | None = None,
) -> dict:
    """Check the three-sum inequality behind the lower bound on zero data.

    With k = a/b, verifies sum |R|^2 <= (sum |zeta'|^2 |Q|^2)^(a/(a+b))
    * (sum |zeta'|^(-2k))^(b/(a+b)) term for term on the cache, raising
    if the slack is more negative than -1e-12 relative.  The tables must
    have been built for the same a, b.

    Returns:
      dict with lhs, rhs, slack (rhs - lhs), J_direct, holder_lower.
    """
    fr = Fraction(k).limit_denominator(1000) if not isinstance(k, Fraction) else k
    a, b = fr.numerator, fr.denominator
    if a < 1 or b < 1:
        raise PreconditionError("k must be a positive rational")
    if T is None:
        T = cache.t_max
    sums = direct_zero_sums(cache, tables, [a / b], T)
    s1, s2 = sums["S1_direct"], sums["S2_direct"]
    j_k = sums["J_direct"][a / b]
    lhs = s1
    rhs = s2 ** (a / (a + b)) * j_k ** (b / (a + b))
    slack = rhs - lhs
    if slack < -1e-12 * abs(rhs):
        raise VerificationError(
            f"Holder inequality violated on zero data: lhs={lhs!r} rhs={rhs!r}"
        )
    return {
        "lhs": lhs,
        "rhs": rhs,
        "slack": slack,
        "J_direct": j_k,
        "holder_lower": holder_bound(s1, s2, a / b),
    }


@dataclass(frozen=True)
class MomentReport:
    """Everything one comparison run produces, ready for serialization."""

    params: MollifierParams
    T: float
    S11_exact: float
    S12_exact: float
    S1_ng: float
    S1_direct: float
    S2_direct: float
    J_direct: dict[float, float]
    J_holder_lower: float
    predictions: dict[str, float]
    deviations: dict[str, float]
    cache_prec: int
    cache_t_max: float
    n_zeros: int
    soft_bound_ok: bool
    s12_truncated_at: int | None = None
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        for k, v in self.J_direct.items():
            if not v > 0.0:
                raise VerificationError(f"J({k}) must be positive, got {v!r}")

    def as_dict(self) -> dict:
        p = self.params
        return {
            "params": {
                "a": p.a,
                "b": p.b,
                "theta": p.theta,
                "T": p.T,
                "B": p.B,
            },
            "T": self.T,
            "S11_exact": self.S11_exact,
            "S12_exact": self.S12_exact,
            "S1_ng": self.S1_ng,
            "S1_direct": self.S1_direct,
            "S2_direct": self.S2_direct,
            "J_direct": {str(k): v for k, v in sorted(self.J_direct.items())},
            "J_holder_lower": self.J_holder_lower,
            "predictions": self.predictions,
            "deviations": self.deviations,
            "cache": {
                "prec": self.cache_prec,
                "t_max": self.cache_t_max,
                "n_zeros": self.n_zeros,
            },
            "soft_bound_ok": self.soft_bound_ok,
            "s12_truncated_at": self.s12_truncated_at,
        }

    def csv_rows(self) -> list[dict]:
        rows = []
        for k, v in sorted(self.J_direct.items()):
            rows.append(
                {
                    "k": k,
                    "J_direct": v,
                    "J_holder_lower": self.J_holder_lower
                    if abs(k - self.params.k) < 1e-12
                    else "",
                    "S1_direct": self.S1_direct,
                    "S2_direct": self.S2_direct,
                    "T": self.T,
                }
            )
        return rows


def moment_report(
    params: MollifierParams,
    cache: ZeroCache,
    k_list: list[float] | None = None,
    constants: dict | None = None,
) -> MomentReport:
    """Assemble the full comparison: arithmetic sums, zero sums, bound.

    Args:
      params: mollifier shape; k = a/b drives the Holder bound.
      cache: certified zero cache covering params.T.
      k_list: extra exponents for J beyond a/b (defaults to [a/b, 1]).
      constants: optional dict with A0, beta, gamma_c for predictions.
    """
    k_self = params.k
    if k_list is None:
        k_list = sorted({k_self, 1.0})
    elif k_self not in k_list:
        k_list = sorted(set(k_list) | {k_self})
    T = min(params.T, cache.t_max)
    tables = build_tables(params)
    arith = arithmetic_sums(params)
    sums = direct_zero_sums(cache, tables, k_list, T)
    s1_ng = S1_via_ng(arith["S11_exact"], arith["S12_exact"], T)
    j_self = sums["J_direct"][k_self]
    bound = holder_bound(sums["S1_direct"], sums["S2_direct"], k_self)
    predictions: dict[str, float] = {}
    deviations: dict[str, float] = {}
    if constants is not None:
        from .constants import predicted_moments

        predictions = predicted_moments(
            params,
            constants["A0"],
            constants["beta"],
            constants["gamma_c"],
            T=T,
        )
        if arith["S11_exact"]:
            deviations["S11"] = arith["S11_exact"] / predictions["S11_pred"] - 1.0
        if arith["S12_exact"]:
            deviations["S12"] = arith["S12_exact"] / predictions["S12_pred"] - 1.0
    if sums["S1_direct"]:
        deviations["S1_ng_vs_direct"] = s1_ng / sums["S1_direct"] - 1.0
    j1 = sums["J_direct"].get(1.0)
    soft_ok = True
    if j1 is not None and T >= 500.0:
        soft_ok = j1 >= 0.5 * _SOFT_J1_COEF * T
    return MomentReport(
        params=params,
        T=T,
        S11_exact=arith["S11_exact"],
        S12_exact=arith["S12_exact"],
        S1_ng=s1_ng,
        S1_direct=sums["S1_direct"],
        S2_direct=sums["S2_direct"],
        J_direct=sums["J_direct"],
        J_holder_lower=bound,
        predictions=predictions,
        deviations=deviations,
        cache_prec=cache.prec,
        cache_t_max=cache.t_max,
        n_zeros=sums["n_zeros"],
        soft_bound_ok=soft_ok,
        s12_truncated_at=arith["s12_truncated_at"],
    )
