"""Multiplicative-function arithmetic.

Factorization sieve, generalized divisor coefficients (the Dirichlet
series coefficients of zeta^alpha), dense Dirichlet convolution,
restricted-support power coefficients, the three-fold coefficient
f_{alpha,gamma}, and the Heath-Brown decomposition of the Moebius
function.

Tables are dense 1-indexed arrays, immutable after construction.  A table
is either in machine mode (float64/complex128, ``prec is None``) or in
high-precision mode (object array of mpmath scalars, ``prec`` = decimal
digits); the two modes never mix inside one convolution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath as mp
import numpy as np

from . import kernels
from .errors import CapacityError, PreconditionError

#: hard cap on dense table length (int32 sieve, ~4 bytes/entry)
MAX_TABLE_LEN = 200_000_000


@dataclass(frozen=True)
class FactoredInteger:
    """An integer together with its canonical prime factorization."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last_p = 1
        for p, e in self.factors:
            if e < 1:
                raise PreconditionError(f"exponent {e} < 1 in factorization of {self.n}")
            if p <= last_p:
                raise PreconditionError(f"primes not strictly increasing in factorization of {self.n}")
            last_p = p
            prod *= p**e
        if prod != self.n:
            raise PreconditionError(f"factorization product {prod} != {self.n}")

    @classmethod
    def from_int(cls, n: int) -> "FactoredInteger":
        """Factor ``n`` by trial division (fine for the moderate n used here)."""
        if n < 1:
            raise PreconditionError(f"cannot factor {n} (need n >= 1)")
        m = n
        factors = []
        p = 2
        while p * p <= m:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                factors.append((p, e))
            p += 1 if p == 2 else 2
        if m > 1:
            factors.append((m, 1))
        return cls(n, tuple(factors))


def divisors(fi: FactoredInteger) -> list[int]:
    """All divisors of ``fi.n``, ascending."""
    divs = [1]
    for p, e in fi.factors:
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return sorted(divs)


def mobius_of(fi: FactoredInteger) -> int:
    for _, e in fi.factors:
        if e > 1:
            return 0
    return -1 if len(fi.factors) % 2 else 1


def euler_phi(fi: FactoredInteger) -> int:
    out = 1
    for p, e in fi.factors:
        out *= (p - 1) * p ** (e - 1)
    return out


def tau_k_of(fi: FactoredInteger, k: int) -> int:
    """k-th divisor function (number of ordered k-factorizations), exact."""
    out = 1
    for _, e in fi.factors:
        out *= math.comb(e + k - 1, k - 1)
    return out


class FactorSieve:
    """Complete factorizations for 1..N backed by a smallest-prime-factor array.

    Entries materialize lazily: ``sieve[n]`` walks the stored smallest
    prime factors, so holding the sieve costs 4 bytes per integer
    (documented limit ``MAX_TABLE_LEN``) rather than a list of objects.
    """

    def __init__(self, n: int):
        if n < 1:
            raise PreconditionError("sieve needs N >= 1")
        if n > MAX_TABLE_LEN:
            raise CapacityError(
                f"sieve of {n} exceeds the documented budget of {MAX_TABLE_LEN}"
            )
        self._n = n
        self.spf = kernels.spf_sieve_raw(n)
        self.spf.setflags(write=False)

    def __len__(self) -> int:
        return self._n

    def __getitem__(self, n: int) -> FactoredInteger:
        if not 1 <= n <= self._n:
            raise PreconditionError(f"{n} outside sieve range 1..{self._n}")
        m = n
        factors = []
        while m > 1:
            p = int(self.spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        return FactoredInteger(n, tuple(factors))

    def primes(self) -> np.ndarray:
        return kernels.primes_from_spf(self.spf)


def factor_sieve(n: int) -> FactorSieve:
    """Factorizations of every integer in 1..n (lazy views over an SPF sieve)."""
    return FactorSieve(n)


@lru_cache(maxsize=8)
def _cached_spf(n: int) -> np.ndarray:
    sieve = FactorSieve(n)
    return sieve.spf


@dataclass(frozen=True)
class CoefficientTable:
    """Dense values of an arithmetic function on 1..length.

    ``values`` is 1-indexed (slot 0 unused).  ``prec`` is None for machine
    floats/complexes, or the decimal-digit count when the entries are
    mpmath scalars.  Tables are immutable after construction.
    """

    values: np.ndarray
    label: str = ""
    prec: int | None = field(default=None)

    def __post_init__(self):
        if len(self.values) < 2:
            raise PreconditionError("table must cover at least n = 1")
        self.values.setflags(write=False)

    @property
    def length(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int):
        if not 1 <= n <= self.length:
            raise PreconditionError(f"{n} outside table range 1..{self.length}")
        return self.values[n]

    def machine(self) -> bool:
        return self.prec is None


def _check_len(n: int) -> None:
    if n > MAX_TABLE_LEN:
        raise CapacityError(f"table length {n} exceeds budget {MAX_TABLE_LEN}")


def _tau_weights_machine(alpha, max_e: int):
    """Prime-power values of the zeta^alpha coefficients: weight at p^m
    is the coefficient of X^m in (1-X)^(-alpha), independent of p."""
    complex_mode = isinstance(alpha, complex)
    w = np.zeros(max_e + 1, np.complex128 if complex_mode else np.float64)
    w[0] = 1.0
    for m in range(1, max_e + 1):
        w[m] = w[m - 1] * (alpha + m - 1) / m
    return w, complex_mode


def tau_alpha_table(alpha, n: int, prec: int | None = None) -> CoefficientTable:
    """Coefficient table of zeta(s)^alpha on 1..n.

    Prime-power values follow the incremental recurrence
    w(m) = w(m-1)*(alpha+m-1)/m, which is stable for fractional alpha;
    composite values fill in multiplicatively.  With ``prec`` set, entries
    are mpmath scalars at that many digits.
    """
    _check_len(n)
    max_e = max(1, n.bit_length())
    spf = _cached_spf(n)
    if prec is None:
        w, complex_mode = _tau_weights_machine(alpha, max_e)
        if complex_mode:
            vals = kernels.mult_fill_w_c128(spf, w)
        else:
            vals = kernels.mult_fill_w_f64(spf, w)
        return CoefficientTable(vals, label=f"tau[{alpha}]")
    with mp.workdps(prec):
        a = mp.mpmathify(alpha)
        w = [mp.mpf(1)]
        for m in range(1, max_e + 1):
            w.append(w[-1] * (a + m - 1) / m)
        vals = np.empty(n + 1, object)
        vals[0] = mp.mpf(0)
        if n >= 1:
            vals[1] = mp.mpf(1)
        for m in range(2, n + 1):
            p = int(spf[m])
            q = m // p
            e = 1
            while q % p == 0:
                q //= p
                e += 1
            vals[m] = vals[q] * w[e]
    return CoefficientTable(vals, label=f"tau[{alpha}]", prec=prec)


def dirichlet_convolve(f: CoefficientTable, g: CoefficientTable, n: int) -> CoefficientTable:
    """Dirichlet convolution h(n) = sum_{de=n} f(d) g(e) on 1..n.

    Both tables must cover 1..n (shorter support is treated as the table's
    semantic support: entries beyond a table's length contribute nothing).
    Mixing machine and high-precision tables is rejected.
    """
    _check_len(n)
    if f.machine() != g.machine() or (not f.machine() and f.prec != g.prec):
        raise PreconditionError(
            f"mismatched precision modes: {f.prec!r} vs {g.prec!r}"
        )
    label = f"({f.label})*({g.label})"
    if f.machine():
        complex_mode = np.iscomplexobj(f.values) or np.iscomplexobj(g.values)
        if complex_mode:
            out = kernels.convolve_c128(
                np.ascontiguousarray(f.values, np.complex128),
                np.ascontiguousarray(g.values, np.complex128),
                n,
            )
        else:
            out = kernels.convolve_f64(
                np.ascontiguousarray(f.values, np.float64),
                np.ascontiguousarray(g.values, np.float64),
                n,
            )
        return CoefficientTable(out, label=label)
    with mp.workdps(f.prec):
        out = np.empty(n + 1, object)
        zero = mp.mpf(0)
        for i in range(n + 1):
            out[i] = zero
        atop = min(f.length, n)
        for a in range(1, atop + 1):
            fa = f.values[a]
            if fa:
                btop = min(n // a, g.length)
                for b in range(1, btop + 1):
                    out[a * b] = out[a * b] + fa * g.values[b]
    return CoefficientTable(out, label=label, prec=f.prec)


def restricted_power_coeffs(
    base: CoefficientTable, exponent: int, nmax: int | None = None
) -> CoefficientTable:
    """``exponent``-fold Dirichlet convolution of a table supported on n <= x.

    The support bound x is the base table's length.  The result covers
    1..x^exponent, or exactly 1..nmax when given (truncating, or padding
    with zeros past the support); each convolution step truncates at the
    requested length.
    """
    if exponent < 1:
        raise PreconditionError("exponent must be >= 1")
    full = base.length**exponent
    out_len = full if nmax is None else nmax
    _check_len(out_len)
    if exponent == 1 and base.length == out_len:
        return base
    if exponent == 1 and base.length > out_len:
        vals = base.values[: out_len + 1].copy()
        return CoefficientTable(vals, label=base.label, prec=base.prec)
    result = base
    for _ in range(exponent - 1):
        step_len = min(out_len, result.length * base.length)
        result = dirichlet_convolve(result, base, step_len)
    if result.length < out_len:
        # pad with zeros: supports shorter than requested length
        vals = np.zeros(out_len + 1, result.values.dtype)
        vals[: result.length + 1] = result.values
        if result.prec is not None:
            zero = mp.mpf(0)
            for i in range(result.length + 1, out_len + 1):
                vals[i] = zero
        return CoefficientTable(vals, label=result.label, prec=result.prec)
    return result


def _f_prime_power(p: int, m: int, alpha, gamma, prec: int | None):
    """Value at p^m of mu * n^{-alpha} * n^{-gamma} (three-fold coefficient)."""
    digits = prec if prec is not None else 16
    if prec is None:
        x = complex(p) ** (-alpha)
        y = complex(p) ** (-gamma)
        ratio = complex(p) ** (gamma - alpha)
        if abs(ratio - 1.0) < 10.0 ** (-digits / 2):
            top = sum(x**j * y ** (m - j) for j in range(m + 1))
            low = sum(x**j * y ** (m - 1 - j) for j in range(m))
            return top - low
        return (x**m * (x - 1) - y**m * (y - 1)) / (x - y)
    with mp.workdps(prec):
        x = mp.power(p, -mp.mpmathify(alpha))
        y = mp.power(p, -mp.mpmathify(gamma))
        ratio = mp.power(p, mp.mpmathify(gamma) - mp.mpmathify(alpha))
        if abs(ratio - 1) < mp.mpf(10) ** (-digits // 2):
            top = mp.fsum(x**j * y ** (m - j) for j in range(m + 1))
            low = mp.fsum(x**j * y ** (m - 1 - j) for j in range(m))
            return top - low
        return (x**m * (x - 1) - y**m * (y - 1)) / (x - y)


def f_alpha_gamma(fi: FactoredInteger, alpha, gamma, prec: int | None = None):
    """The multiplicative coefficient of zeta(s+alpha) zeta(s+gamma) / zeta(s).

    Closed form at prime powers ((x^m (x-1) - y^m (y-1)) / (x - y) with
    x = p^-alpha, y = p^-gamma); falls back to the direct three-fold
    convolution sum when x and y nearly coincide.
    """
    if prec is None:
        out = complex(1.0)
    else:
        with mp.workdps(prec):
            out = mp.mpf(1)
    for p, e in fi.factors:
        out = out * _f_prime_power(p, e, alpha, gamma, prec)
    return out


# ---------------------------------------------------------------------------
# Heath-Brown's identity for the Moebius function
# ---------------------------------------------------------------------------
def _hb_cutoff(j_total: int, z: float) -> int:
    """Largest K with K^j_total <= z, integer-safe."""
    k = max(1, int(round(z ** (1.0 / j_total))))
    while (k + 1) ** j_total <= z:
        k += 1
    while k > 1 and k**j_total > z:
        k -= 1
    return k


@lru_cache(maxsize=32)
def _hb_table(nmax: int, j_total: int, z_key: str) -> np.ndarray:
    z = float(z_key)
    k_cut = _hb_cutoff(j_total, z)
    ones = np.ones(nmax + 1, np.int64)
    ones[0] = 0
    mu_cut = np.zeros(nmax + 1, np.int64)
    mu_all = mobius_table(min(nmax, max(k_cut, 1)))
    top = min(k_cut, nmax)
    mu_cut[1: top + 1] = mu_all[1: top + 1]
    total = np.zeros(nmax + 1, np.int64)
    unit = np.zeros(nmax + 1, np.int64)
    unit[1] = 1
    ones_pow = unit  # ones convolved (j-1) times
    for j in range(1, j_total + 1):
        if j > 1:
            ones_pow = kernels.convolve_i64(ones_pow, ones, nmax)
        term = ones_pow
        for _ in range(j):
            term = kernels.convolve_i64(term, mu_cut, nmax)
        sign = 1 if (j - 1) % 2 == 0 else -1
        total += sign * math.comb(j_total, j) * term
    return total


def heath_brown_mu(n: int, j_total: int, z: float) -> int:
    """Moebius mu(n) assembled from the J-term decomposition into convolutions
    of the unit function and mu restricted below z^(1/J).  Exact for n <= z."""
    if n < 1 or j_total < 1:
        raise PreconditionError("need n >= 1 and J >= 1")
    if n > z:
        raise PreconditionError(f"n = {n} exceeds z = {z}")
    nmax = max(1024, 1 << (n - 1).bit_length())
    table = _hb_table(nmax, j_total, repr(float(z)))
    return int(table[n])


def mobius_table(n: int) -> np.ndarray:
    """mu(m) for m in 0..n as int64 (index 0 unused)."""
    _check_len(n)
    spf = _cached_spf(n)
    max_e = max(1, n.bit_length())
    w = np.zeros(max_e + 1, np.float64)
    w[0] = 1.0
    if max_e >= 1:
        w[1] = -1.0
    vals = kernels.mult_fill_w_f64(spf, w)
    return vals.astype(np.int64)
