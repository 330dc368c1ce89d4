"""Shifted-moment main-term machinery: the Z function, the correction
factor G, the shifted coefficient tables, and the arithmetic identities
relating them.

Everything here is exact-identity territory: each operation has two
independently computable sides, and the verify_* functions return the
relative residual between them.  High-precision paths run under mpmath
working precision; the contour machinery lives in ``twisted``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .arith import (
    CoefficientTable,
    FactoredInteger,
    dirichlet_convolve,
    divisors,
    euler_phi,
    mobius_of,
    mobius_table,
    tau_k_of,
)
from .errors import PreconditionError
from .zeta import ComplexHP


@dataclass(frozen=True)
class ShiftTuple:
    """Three small complex shifts; the formulas are meromorphic only for
    magnitudes up to 1/2, and the pipeline keeps them O(1/log T)."""

    alpha: complex
    beta: complex
    gamma: complex

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            if abs(complex(getattr(self, name))) > 0.5:
                raise PreconditionError(f"shift {name} exceeds magnitude 1/2")

    def as_mpc(self, prec: int):
        with mp.workdps(prec):
            return (
                mp.mpmathify(self.alpha),
                mp.mpmathify(self.beta),
                mp.mpmathify(self.gamma),
            )


def _coerce_shifts(shifts) -> ShiftTuple:
    if isinstance(shifts, ShiftTuple):
        return shifts
    a, b, g = shifts
    return ShiftTuple(complex(a), complex(b), complex(g))


def local_sum_den(p: int, alpha, beta, gamma, prec: int = 30):
    """sum_m f_{alpha,gamma}(p^m) p^{-m(1+beta)} in closed form:
    (1-q)/((1-xq)(1-yq)) with x = p^-alpha, y = p^-gamma, q = p^-(1+beta)."""
    with mp.workdps(prec + 10):
        x = mp.power(p, -mp.mpmathify(alpha))
        y = mp.power(p, -mp.mpmathify(gamma))
        q = mp.power(p, -(1 + mp.mpmathify(beta)))
        for w in ((1 - x * q), (1 - y * q)):
            if abs(w) < mp.mpf(10) ** (-prec):
                raise PreconditionError("local sum diverges at these shifts")
        return (1 - q) / ((1 - x * q) * (1 - y * q))


def local_sum_num(p: int, kp: int, alpha, beta, gamma, prec: int = 30):
    """sum_m f_{alpha,gamma}(p^(m+kp)) p^{-m(1+beta)} in closed form, with a
    truncated-series fallback when p^-alpha and p^-gamma nearly coincide."""
    with mp.workdps(prec + 10):
        x = mp.power(p, -mp.mpmathify(alpha))
        y = mp.power(p, -mp.mpmathify(gamma))
        q = mp.power(p, -(1 + mp.mpmathify(beta)))
        xq, yq = 1 - x * q, 1 - y * q
        for w in (xq, yq):
            if abs(w) < mp.mpf(10) ** (-prec):
                raise PreconditionError("local sum diverges at these shifts")
        if abs(x - y) > mp.mpf(10) ** (-(prec + 10) // 2) * max(abs(x), abs(y)):
            return (y**kp * (1 - y) / yq - x**kp * (1 - x) / xq) / (x - y)
        # series fallback: geometric tail in q, f at prime powers by the
        # stable two-sum form
        eps = mp.mpf(10) ** (-(prec + 5))
        total = mp.mpf(0)
        qq = mp.mpf(1)
        m = 0
        while True:
            e = m + kp
            top = mp.fsum(x**j * y ** (e - j) for j in range(e + 1))
            low = mp.fsum(x**j * y ** (e - 1 - j) for j in range(e))
            total += (top - low) * qq
            term_scale = abs(qq) * (e + 1) * max(abs(x), abs(y), 1) ** e
            if term_scale < eps and m > 4:
                break
            if m > 120 * max(1, prec // 10) + 200:
                break
            qq *= q
            m += 1
        return total


def local_ratio(p: int, kp: int, alpha, beta, gamma, prec: int = 30):
    """The p-local factor of Z: shifted numerator over unshifted sum."""
    with mp.workdps(prec + 10):
        return local_sum_num(p, kp, alpha, beta, gamma, prec) / local_sum_den(
            p, alpha, beta, gamma, prec
        )


def Z_value(shifts, h: int, k: int, prec: int = 30) -> ComplexHP:
    """The shifted-product value h^-beta zeta(1+alpha+beta) zeta(1+beta+gamma)
    / zeta(1+beta) times the local factors at primes dividing k.

    beta = 0 is handled by its limit: zero when alpha and gamma are both
    nonzero (the 1/zeta(1) factor), zeta(1+gamma) when alpha = 0 (and
    symmetrically), and a pole error when all of alpha, beta, gamma vanish.

    Args:
      shifts: ShiftTuple or 3-sequence (alpha, beta, gamma).
      h, k: coprime positive integers; h enters as h^-beta only.
      prec: working digits of the returned value.
    """
    if h < 1 or k < 1 or math.gcd(h, k) != 1:
        raise PreconditionError("h and k must be coprime positive integers")
    st = _coerce_shifts(shifts)
    with mp.workdps(prec + 10):
        alpha, beta, gamma = st.as_mpc(prec + 10)
        if beta == 0:
            if alpha == 0 and gamma == 0:
                raise PreconditionError(
                    "Z has a pole at alpha = beta = gamma = 0"
                )
            if alpha == 0:
                zr = mp.zeta(1 + gamma)
            elif gamma == 0:
                zr = mp.zeta(1 + alpha)
            else:
                zr = mp.mpf(0)
        else:
            zr = mp.zeta(1 + alpha + beta) * mp.zeta(1 + beta + gamma) / mp.zeta(
                1 + beta
            )
        val = mp.power(h, -beta) * zr
        if val != 0:
            for p, e in FactoredInteger.from_int(k).factors:
                val *= local_ratio(p, e, alpha, beta, gamma, prec)
        return ComplexHP.make(val, prec)


def _ordered_factorizations4(d: int) -> list[tuple[int, int, int, int]]:
    """All ordered quadruples (d1, d2, d3, d4) with product d."""
    out = []
    for d4 in divisors(FactoredInteger.from_int(d)):
        r1 = d // d4
        for d3 in divisors(FactoredInteger.from_int(r1)):
            r2 = r1 // d3
            for d2 in divisors(FactoredInteger.from_int(r2)):
                out.append((r2 // d2, d2, d3, d4))
    return out


def _prime_set(*ns: int) -> list[int]:
    ps: set[int] = set()
    for n in ns:
        for p, _ in FactoredInteger.from_int(n).factors:
            ps.add(p)
    return sorted(ps)


def G_eval(s, k: int, d: int, shifts, variant: int = 1, prec: int = 30) -> ComplexHP:
    """The finite Euler-factor sum G(s, k, d) in one of its three forms.

    Each variant sums mu(d4) times shift powers of d1, d2, d3 over ordered
    factorizations d1 d2 d3 d4 = d, weighted by finite products over the
    primes of kd, k d1 d2, k d1, and k; the variants permute which shift
    goes where and agree identically.

    The per-prime elementary factors are computed once and combined via
    bitmask lookup over the primes of d, so the cost per factorization
    term is a handful of multiplies.

    Args:
      s: evaluation point with Re s > 0.
      variant: 1, 2 or 3, selecting the algebraic form.
    """
    if k < 1 or d < 1:
        raise PreconditionError("k and d must be positive")
    if variant not in (1, 2, 3):
        raise PreconditionError("variant must be 1, 2 or 3")
    st = _coerce_shifts(shifts)
    with mp.workdps(prec + 10):
        alpha, beta, gamma = st.as_mpc(prec + 10)
        sv = s.to_mpc() if isinstance(s, ComplexHP) else mp.mpmathify(s)
        if mp.re(sv) <= 0:
            raise PreconditionError("G requires Re s > 0")
        if variant == 1:
            e2, e3, e4 = sv + gamma + beta, sv + alpha + beta, sv
            p1, p2, p3 = -gamma, -alpha, beta  # exponents of d3, d2, d1
        elif variant == 2:
            e2, e3, e4 = sv + gamma + beta, sv, sv + alpha + beta
            p1, p2, p3 = -gamma, beta, -alpha
        else:
            e2, e3, e4 = sv, sv + alpha + beta, sv + gamma + beta
            p1, p2, p3 = beta, -alpha, -gamma

        ps_d = _prime_set(d)
        ps_k = set(_prime_set(k))
        front = mp.mpf(1)
        for p in sorted(ps_k | set(ps_d)):
            w = 1 - mp.power(p, -(sv + beta))
            if abs(w) < mp.mpf(10) ** (-prec):
                raise PreconditionError("G front factor vanishes at these shifts")
            front /= w
        tail = mp.mpf(1)
        base2 = mp.mpf(1)
        base3 = mp.mpf(1)
        for p in ps_k:
            tail *= 1 - mp.power(p, -e4)
            base2 *= 1 - mp.power(p, -e2)
            base3 *= 1 - mp.power(p, -e3)
        extra_ps = [p for p in ps_d if p not in ps_k]
        ex2 = [1 - mp.power(p, -e2) for p in extra_ps]
        ex3 = [1 - mp.power(p, -e3) for p in extra_ps]
        divs = divisors(FactoredInteger.from_int(d))
        mask = {u: sum(1 << i for i, p in enumerate(extra_ps) if u % p == 0) for u in divs}
        mu_of = {u: mobius_of(FactoredInteger.from_int(u)) for u in divs}
        pw1 = {u: mp.power(u, p1) for u in divs}
        pw2 = {u: mp.power(u, p2) for u in divs}
        pw3 = {u: mp.power(u, p3) for u in divs}
        prod2_cache: dict[int, mp.mpc] = {}
        prod3_cache: dict[int, mp.mpc] = {}

        def masked(bits: int, base, extras, cache):
            out = cache.get(bits)
            if out is None:
                out = base
                b, i = bits, 0
                while b:
                    if b & 1:
                        out = out * extras[i]
                    b >>= 1
                    i += 1
                cache[bits] = out
            return out

        total = mp.mpf(0)
        for d1, d2, d3, d4 in _ordered_factorizations4(d):
            mu4 = mu_of[d4]
            if mu4 == 0:
                continue
            term = (
                mu4
                * pw1[d3]
                * pw2[d2]
                * pw3[d1]
                * masked(mask[d1] | mask[d2], base2, ex2, prod2_cache)
                * masked(mask[d1], base3, ex3, prod3_cache)
            )
            total += term
        return ComplexHP.make(front * tail * total, prec)


def g_bound(sigma: float, k: int, d: int) -> float:
    """The explicit magnitude bound tau4(d) prod_{p | kd} (1 + 10 p^-sigma)."""
    out = float(tau_k_of(FactoredInteger.from_int(d), 4))
    for p in _prime_set(k, d):
        out *= 1.0 + 10.0 * p ** (-sigma)
    return out


def coeff_tables_c_b(
    shifts, N: int, a_table: CoefficientTable, prec: int | None = None
) -> dict[str, CoefficientTable]:
    """The shifted convolution tables c = mu * n^-gamma * n^-alpha * n^beta
    and b = c * a, both on 1..N."""
    st = _coerce_shifts(shifts)
    if prec is None:
        n = np.arange(N + 1, dtype=np.complex128)
        n[0] = 1.0
        mu = mobius_table(N).astype(np.complex128)
        mu[0] = 0.0

        def pow_table(expo):
            vals = np.exp(complex(expo) * np.log(n))
            vals[0] = 0.0
            return CoefficientTable(vals, label=f"n^{expo}")

        c = dirichlet_convolve(
            dirichlet_convolve(
                dirichlet_convolve(
                    CoefficientTable(mu, label="mu"), pow_table(-st.gamma), N
                ),
                pow_table(-st.alpha),
                N,
            ),
            pow_table(st.beta),
            N,
        )
    else:
        with mp.workdps(prec + 5):
            alpha, beta, gamma = st.as_mpc(prec + 5)
            mu_v = np.empty(N + 1, object)
            powg = np.empty(N + 1, object)
            powa = np.empty(N + 1, object)
            powb = np.empty(N + 1, object)
            mu_int = mobius_table(N)
            mu_v[0] = powg[0] = powa[0] = powb[0] = mp.mpf(0)
            for i in range(1, N + 1):
                mu_v[i] = mp.mpf(int(mu_int[i]))
                powg[i] = mp.power(i, -gamma)
                powa[i] = mp.power(i, -alpha)
                powb[i] = mp.power(i, beta)
            c = dirichlet_convolve(
                dirichlet_convolve(
                    dirichlet_convolve(
                        CoefficientTable(mu_v, label="mu", prec=prec),
                        CoefficientTable(powg, label="n^-g", prec=prec),
                        N,
                    ),
                    CoefficientTable(powa, label="n^-a", prec=prec),
                    N,
                ),
                CoefficientTable(powb, label="n^b", prec=prec),
                N,
            )
    c = CoefficientTable(c.values, label="c", prec=prec)
    b = dirichlet_convolve(c, a_table, N)
    return {"c": c, "b": CoefficientTable(b.values, label="b", prec=b.prec)}


def verify_euler_identity(kprime: int, shifts, prec: int = 40) -> float:
    """Relative residual of the divisor-sum identity
    sum_{k d = k'} k^beta (k/phi(k)) mu(k) G(1, k, d) = local ratio product.

    Both sides are computed by unrelated code paths: the left through the
    finite Euler-factor sums of G, the right through the closed-form local
    factors, so agreement exercises every branch of both.
    """
    if kprime < 1:
        raise PreconditionError("k' must be a positive integer")
    st = _coerce_shifts(shifts)
    with mp.workdps(prec + 10):
        alpha, beta, gamma = st.as_mpc(prec + 10)
        lhs = mp.mpf(0)
        fk = FactoredInteger.from_int(kprime)
        for k in divisors(fk):
            muk = mobius_of(FactoredInteger.from_int(k))
            if muk == 0:
                continue
            d = kprime // k
            g = G_eval(mp.mpf(1), k, d, st, variant=1, prec=prec).to_mpc()
            lhs += mp.power(k, beta) * mp.mpf(k) / euler_phi(
                FactoredInteger.from_int(k)
            ) * muk * g
        rhs = mp.mpf(1)
        for p, e in fk.factors:
            rhs *= local_ratio(p, e, alpha, beta, gamma, prec)
        if rhs == 0:
            raise PreconditionError("degenerate shifts: identity RHS vanishes")
        return float(abs(lhs - rhs) / abs(rhs))


def verify_series_factorization(
    s, k: int, d: int, shifts, N_trunc: int = 100_000, c_table=None
) -> dict:
    """Residual of the Dirichlet-series identity
    sum_{(n,k)=1} c(n d) n^{-s-beta} = zeta(s) zeta(s+gamma+beta)
    zeta(s+alpha+beta) / zeta(s+beta) * G(s, k, d), plus a Rankin-style
    tail bound for the truncated left side.

    Requires Re s >= 1.5 so the tau4 tail is summable with margin;
    contract: residual <= 10 x tail bound.  ``c_table`` optionally reuses
    the coefficient table from :func:`coeff_tables_c_b` (it depends only
    on the shifts, so sweeps over s, k, d build it once); it must cover
    1..N_trunc*d.
    """
    st = _coerce_shifts(shifts)
    sv = complex(s)
    if sv.real < 1.5:
        raise PreconditionError("factorization check needs Re s >= 1.5")
    if sv.real + complex(st.beta).real < 1.1:
        raise PreconditionError("Re(s + beta) too close to the divergence line")
    if c_table is None:
        unit = np.zeros(2, np.complex128)
        unit[1] = 1.0
        c = coeff_tables_c_b(st, N_trunc * d, CoefficientTable(unit, label="1"))["c"]
    else:
        c = c_table
        if c.length < N_trunc * d:
            raise PreconditionError(
                f"supplied c table covers 1..{c.length}, need {N_trunc * d}"
            )
    n = np.arange(1, N_trunc + 1, dtype=np.float64)
    coprime = np.gcd(np.arange(1, N_trunc + 1), k) == 1
    idx = np.arange(1, N_trunc + 1) * d
    terms = np.where(coprime, c.values[idx], 0.0) * np.exp(
        -(sv + complex(st.beta)) * np.log(n)
    )
    lhs = complex(np.sum(terms))
    with mp.workdps(30):
        alpha, beta, gamma = st.as_mpc(30)
        sv_hp = mp.mpmathify(sv)
        rhs = (
            mp.zeta(sv_hp)
            * mp.zeta(sv_hp + gamma + beta)
            * mp.zeta(sv_hp + alpha + beta)
            / mp.zeta(sv_hp + beta)
        ) * G_eval(sv_hp, k, d, st, variant=1, prec=25).to_mpc()
        rhs = complex(rhs)
    # Rankin tail: sum_{n>N} tau4(n d) n^-sigma <= tau4(d) N^-(sigma - s0)
    # zeta(s0)^4 with 1 < s0 < sigma
    sigma = sv.real + complex(st.beta).real
    s0 = 1.0 + (sigma - 1.0) / 4.0
    tau4d = float(tau_k_of(FactoredInteger.from_int(d), 4))
    tail = tau4d * N_trunc ** (-(sigma - s0)) * float(mp.zeta(s0)) ** 4
    return {
        "residual": abs(lhs - rhs),
        "tail_bound": tail,
        "lhs": lhs,
        "rhs": rhs,
    }
