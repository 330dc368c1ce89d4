"""Accelerated numeric kernels.

Every kernel comes in two functionally identical variants: ``_*_nb`` is a
scalar-loop implementation compiled with numba, ``_*_np`` is vectorized
numpy.  The public module-level names dispatch to whichever variant the
backend selected (``ZETAMOMENTS_NO_NUMBA=1`` forces numpy).  Reductions in
both variants run in a fixed order so repeated runs are deterministic.

The counter-based RNG used for Monte Carlo work is the splitmix64
finalizer applied to ``seed + (counter+1)*GAMMA``; both variants produce
the identical uint64 stream, so sharded runs merge deterministically no
matter how the sample range is split.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .backend import USE_NUMBA, njit

# ---------------------------------------------------------------------------
# Euler-Maclaurin / Stirling coefficient tables (exact rationals -> float64).
# EM_COEF[j] = B_{2j}/(2j)!  drives the zeta tail; STIRLING[j] = B_{2j}/(2j(2j-1))
# drives the log-gamma asymptotic used for the phase function.
# ---------------------------------------------------------------------------
_B2J = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
    Fraction(43867, 798), Fraction(-174611, 330), Fraction(854513, 138),
    Fraction(-236364091, 2730), Fraction(8553103, 6), Fraction(-23749461029, 870),
]
EM_COEF = np.array(
    [0.0] + [float(b / math.factorial(2 * j)) for j, b in enumerate(_B2J, start=1)]
)
STIRLING = np.array(
    [0.0] + [float(b / (2 * j * (2 * j - 1))) for j, b in enumerate(_B2J, start=1)]
)

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)

# splitmix64 constants
U64_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_U64_M1 = np.uint64(0xBF58476D1CE4E5B9)
_U64_M2 = np.uint64(0x94D049BB133111EB)


# ---------------------------------------------------------------------------
# smallest-prime-factor sieve
# ---------------------------------------------------------------------------
@njit(cache=True)
def _spf_sieve_nb(n):
    spf = np.zeros(n + 1, np.int32)
    if n >= 1:
        spf[1] = 1
    lim = int(math.sqrt(n)) + 1
    for p in range(2, lim + 1):
        if p * p > n:
            break
        if spf[p] == 0:
            for m in range(p * p, n + 1, p):
                if spf[m] == 0:
                    spf[m] = p
    for m in range(2, n + 1):
        if spf[m] == 0:
            spf[m] = m
    return spf


def _spf_sieve_np(n):
    spf = np.zeros(n + 1, np.int32)
    if n >= 1:
        spf[1] = 1
    for p in range(2, math.isqrt(n) + 1):
        if spf[p] == 0:
            block = spf[p * p:: p]
            block[block == 0] = p
    tail = spf[2:]
    unmarked = tail == 0
    tail[unmarked] = np.arange(2, n + 1, dtype=np.int32)[unmarked]
    return spf


# ---------------------------------------------------------------------------
# dense Dirichlet convolution, 1-indexed arrays (index 0 unused)
# ---------------------------------------------------------------------------
@njit(cache=True)
def _convolve_f64_nb(f, g, nmax):
    out = np.zeros(nmax + 1, np.float64)
    atop = min(len(f) - 1, nmax)
    gtop = len(g) - 1
    for a in range(1, atop + 1):
        fa = f[a]
        if fa != 0.0:
            btop = min(nmax // a, gtop)
            for b in range(1, btop + 1):
                out[a * b] += fa * g[b]
    return out


@njit(cache=True)
def _convolve_c128_nb(f, g, nmax):
    out = np.zeros(nmax + 1, np.complex128)
    atop = min(len(f) - 1, nmax)
    gtop = len(g) - 1
    for a in range(1, atop + 1):
        fa = f[a]
        if fa != 0:
            btop = min(nmax // a, gtop)
            for b in range(1, btop + 1):
                out[a * b] += fa * g[b]
    return out


@njit(cache=True)
def _convolve_i64_nb(f, g, nmax):
    out = np.zeros(nmax + 1, np.int64)
    atop = min(len(f) - 1, nmax)
    gtop = len(g) - 1
    for a in range(1, atop + 1):
        fa = f[a]
        if fa != 0:
            btop = min(nmax // a, gtop)
            for b in range(1, btop + 1):
                out[a * b] += fa * g[b]
    return out


def _convolve_np(f, g, nmax, dtype):
    out = np.zeros(nmax + 1, dtype)
    atop = min(len(f) - 1, nmax)
    gtop = len(g) - 1
    for a in range(1, atop + 1):
        fa = f[a]
        if fa != 0:
            btop = min(nmax // a, gtop)
            out[a: a * btop + 1: a] += fa * g[1: btop + 1]
    return out


def _convolve_f64_np(f, g, nmax):
    return _convolve_np(f, g, nmax, np.float64)


def _convolve_c128_np(f, g, nmax):
    return _convolve_np(f, g, nmax, np.complex128)


def _convolve_i64_np(f, g, nmax):
    return _convolve_np(f, g, nmax, np.int64)


# ---------------------------------------------------------------------------
# multiplicative table fill from prime-power weights w[e] (p-independent)
# ---------------------------------------------------------------------------
@njit(cache=True)
def _mult_fill_w_f64_nb(spf, w):
    n = len(spf) - 1
    out = np.zeros(n + 1, np.float64)
    if n >= 1:
        out[1] = 1.0
    for m in range(2, n + 1):
        p = spf[m]
        q = m // p
        e = 1
        while q % p == 0:
            q //= p
            e += 1
        out[m] = out[q] * w[e]
    return out


def _mult_fill_w_f64_np(spf, w):
    n = len(spf) - 1
    out = np.zeros(n + 1, np.float64)
    out[1:] = 1.0
    primes = primes_from_spf(spf)
    for p in primes:
        pe = int(p)
        e = 1
        while pe <= n:
            idx = np.arange(pe, n + 1, pe)
            exact = (idx // pe) % p != 0
            out[idx[exact]] *= w[e]
            pe *= int(p)
            e += 1
    return out


@njit(cache=True)
def _mult_fill_w_c128_nb(spf, w):
    n = len(spf) - 1
    out = np.zeros(n + 1, np.complex128)
    if n >= 1:
        out[1] = 1.0 + 0.0j
    for m in range(2, n + 1):
        p = spf[m]
        q = m // p
        e = 1
        while q % p == 0:
            q //= p
            e += 1
        out[m] = out[q] * w[e]
    return out


def _mult_fill_w_c128_np(spf, w):
    n = len(spf) - 1
    out = np.zeros(n + 1, np.complex128)
    out[1:] = 1.0
    primes = primes_from_spf(spf)
    for p in primes:
        pe = int(p)
        e = 1
        while pe <= n:
            idx = np.arange(pe, n + 1, pe)
            exact = (idx // pe) % p != 0
            out[idx[exact]] *= w[e]
            pe *= int(p)
            e += 1
    return out


# ---------------------------------------------------------------------------
# squarefree flags for a block [lo, hi)
# ---------------------------------------------------------------------------
@njit(cache=True)
def _squarefree_block_nb(lo, hi, primes):
    flags = np.ones(hi - lo, np.bool_)
    for i in range(len(primes)):
        p2 = primes[i] * primes[i]
        if p2 >= hi:
            break
        start = ((lo + p2 - 1) // p2) * p2
        for m in range(start, hi, p2):
            flags[m - lo] = False
    return flags


def _squarefree_block_np(lo, hi, primes):
    flags = np.ones(hi - lo, bool)
    for p in primes:
        p2 = int(p) * int(p)
        if p2 >= hi:
            break
        start = ((lo + p2 - 1) // p2) * p2
        if start < hi:
            flags[start - lo:: p2] = False
    return flags


# ---------------------------------------------------------------------------
# splitmix64 counter RNG and polytope Monte Carlo sampling
# ---------------------------------------------------------------------------
@njit(cache=True)
def _mix64_nb(z):
    z = (z ^ (z >> np.uint64(30))) * _U64_M1
    z = (z ^ (z >> np.uint64(27))) * _U64_M2
    return z ^ (z >> np.uint64(31))


def _mix64_np(z):
    z = (z ^ (z >> np.uint64(30))) * _U64_M1
    z = (z ^ (z >> np.uint64(27))) * _U64_M2
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def _uniform_stream_nb(seed, start, count):
    out = np.empty(count, np.uint64)
    for i in range(count):
        c = np.uint64(start + i) + np.uint64(1)
        out[i] = _mix64_nb(np.uint64(seed) + c * U64_GAMMA)
    return out


def _uniform_stream_np(seed, start, count):
    c = np.uint64(start) + np.arange(1, count + 1, dtype=np.uint64)
    return _mix64_np(np.uint64(seed) + c * U64_GAMMA)


@njit(cache=True)
def _polytope_mc_nb(seed, start, count, a, bsq_exp, row_exp, col_exp):
    x = np.empty((a, a), np.float64)
    wsum = 0.0
    wsq = 0.0
    inside = 0
    d = a * a
    for i in range(count):
        base = (np.uint64(start) + np.uint64(i)) * np.uint64(d)
        for r in range(a):
            for c in range(a):
                ctr = base + np.uint64(r * a + c) + np.uint64(1)
                u64 = _mix64_nb(np.uint64(seed) + ctr * U64_GAMMA)
                u = (u64 >> np.uint64(11)) * 1.1102230246251565e-16
                x[r, c] = u ** bsq_exp
        ok = True
        wrow = 1.0
        for r in range(a):
            srow = 0.0
            for c in range(a):
                srow += x[r, c]
            if srow > 1.0:
                ok = False
                break
            wrow *= (1.0 - srow) ** row_exp
        wcol = 1.0
        if ok:
            for c in range(a):
                scol = 0.0
                for r in range(a):
                    scol += x[r, c]
                if scol > 1.0:
                    ok = False
                    break
                wcol *= (1.0 - scol) ** col_exp[c]
        if ok:
            w = wrow * wcol
            wsum += w
            wsq += w * w
            inside += 1
    return wsum, wsq, inside


def _polytope_mc_np(seed, start, count, a, bsq_exp, row_exp, col_exp):
    d = a * a
    base = (np.uint64(start) + np.arange(count, dtype=np.uint64)) * np.uint64(d)
    ctr = base[:, None] + np.arange(1, d + 1, dtype=np.uint64)[None, :]
    u64 = _mix64_np(np.uint64(seed) + ctr * U64_GAMMA)
    u = (u64 >> np.uint64(11)) * 1.1102230246251565e-16
    x = (u ** bsq_exp).reshape(count, a, a)
    rows = x.sum(axis=2)
    cols = x.sum(axis=1)
    ok = (rows <= 1.0).all(axis=1) & (cols <= 1.0).all(axis=1)
    wrow = (np.where(rows <= 1.0, 1.0 - rows, 0.0) ** row_exp).prod(axis=1)
    wcol = (np.where(cols <= 1.0, 1.0 - cols, 0.0) ** col_exp[None, :]).prod(axis=1)
    w = np.where(ok, wrow * wcol, 0.0)
    return float(w.sum()), float((w * w).sum()), int(ok.sum())


# ---------------------------------------------------------------------------
# Hardy Z on a float64 grid: Euler-Maclaurin zeta(1/2+it) + Stirling phase
# ---------------------------------------------------------------------------
@njit(cache=True)
def _theta_nb(t, stir):
    z = complex(0.25, 0.5 * t)
    acc = 0.0 + 0.0j
    while z.real < 10.0:
        acc -= cmath.log(z)
        z += 1.0
    lg = (z - 0.5) * cmath.log(z) - z + _LOG_SQRT_2PI + acc
    zinv = 1.0 / z
    zp = zinv
    z2 = zinv * zinv
    for j in range(1, len(stir)):
        lg += stir[j] * zp
        zp *= z2
    return lg.imag - 0.5 * t * _LOG_PI


@njit(cache=True)
def _zeta_half_nb(t, em, m):
    n_terms = int(0.8 * t + 20.0)
    if n_terms < 30:
        n_terms = 30
    s = complex(0.5, t)
    tot = 0.0 + 0.0j
    for n in range(1, n_terms):
        tot += cmath.exp(-s * math.log(n))
    nf = float(n_terms)
    lognf = math.log(nf)
    tot += cmath.exp((1.0 - s) * lognf) / (s - 1.0)
    tot += 0.5 * cmath.exp(-s * lognf)
    rising = s
    npow = cmath.exp((-s - 1.0) * lognf)
    for j in range(1, m + 1):
        tot += em[j] * rising * npow
        rising = rising * (s + (2.0 * j - 1.0)) * (s + 2.0 * j)
        npow = npow / (nf * nf)
    return tot


@njit(cache=True)
def _hardy_grid_nb(ts, em, stir, m):
    out = np.empty(len(ts), np.float64)
    for i in range(len(ts)):
        t = ts[i]
        zeta = _zeta_half_nb(t, em, m)
        th = _theta_nb(t, stir)
        out[i] = math.cos(th) * zeta.real - math.sin(th) * zeta.imag
    return out


def _hardy_grid_np(ts, em, stir, m):
    from scipy.special import loggamma

    ts = np.asarray(ts, np.float64)
    out = np.empty(len(ts), np.float64)
    chunk = 256
    for i0 in range(0, len(ts), chunk):
        t = ts[i0: i0 + chunk]
        n_terms = max(30, int(0.8 * t.max() + 20.0))
        s = 0.5 + 1j * t
        n = np.arange(1, n_terms, dtype=np.float64)
        tot = np.exp(-s[:, None] * np.log(n)[None, :]).sum(axis=1)
        nf = float(n_terms)
        tot += np.exp((1.0 - s) * math.log(nf)) / (s - 1.0)
        tot += 0.5 * np.exp(-s * math.log(nf))
        rising = s.copy()
        npow = np.exp((-s - 1.0) * math.log(nf))
        for j in range(1, m + 1):
            tot += em[j] * rising * npow
            rising = rising * (s + (2.0 * j - 1.0)) * (s + 2.0 * j)
            npow = npow / (nf * nf)
        th = loggamma(0.25 + 0.5j * t).imag - 0.5 * t * _LOG_PI
        out[i0: i0 + chunk] = np.cos(th) * tot.real - np.sin(th) * tot.imag
    return out


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------
if USE_NUMBA:
    spf_sieve_raw = _spf_sieve_nb
    convolve_f64 = _convolve_f64_nb
    convolve_c128 = _convolve_c128_nb
    convolve_i64 = _convolve_i64_nb
    mult_fill_w_f64 = _mult_fill_w_f64_nb
    mult_fill_w_c128 = _mult_fill_w_c128_nb
    squarefree_block = _squarefree_block_nb
    uniform_stream = _uniform_stream_nb
    polytope_mc_chunk = _polytope_mc_nb
    hardy_grid = _hardy_grid_nb
else:
    spf_sieve_raw = _spf_sieve_np
    convolve_f64 = _convolve_f64_np
    convolve_c128 = _convolve_c128_np
    convolve_i64 = _convolve_i64_np
    mult_fill_w_f64 = _mult_fill_w_f64_np
    mult_fill_w_c128 = _mult_fill_w_c128_np
    squarefree_block = _squarefree_block_np
    uniform_stream = _uniform_stream_np
    polytope_mc_chunk = _polytope_mc_np
    hardy_grid = _hardy_grid_np


def primes_from_spf(spf: np.ndarray) -> np.ndarray:
    """Extract the primes <= n from a smallest-prime-factor array."""
    n = len(spf) - 1
    if n < 2:
        return np.empty(0, np.int64)
    idx = np.arange(2, n + 1, dtype=np.int64)
    return idx[spf[2:] == idx]


def hardy_z_grid(ts: np.ndarray, em_terms: int = 12) -> np.ndarray:
    """Float64 Hardy Z values on a grid of ordinates (for sign scanning)."""
    ts = np.ascontiguousarray(ts, np.float64)
    return hardy_grid(ts, EM_COEF, STIRLING, em_terms)
