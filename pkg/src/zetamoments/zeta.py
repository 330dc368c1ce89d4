"""Critical-strip evaluation of zeta, its derivative, and Hardy's Z.

A single Euler-Maclaurin backend (adaptive term counts, explicit tail
bound) evaluates zeta(s) and zeta'(s); the derivative is the term-by-term
differentiated sum, sharing the n^-s power table with the plain sum.  The
functional-equation factor chi(s) and the phase function theta(t) come
from complex log-Gamma.  No Riemann-Siegel asymptotics: the documented
height range is |Im s| <= 1e5.

Precision policy: 30 digits for identity verification, 20 digits for bulk
zero sums; returned scalars carry their precision tag (``ComplexHP``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .arith import _cached_spf
from .errors import CapacityError, IntegrityError, PreconditionError

PREC_IDENTITY = 30
PREC_BULK = 20
T_MAX = 1.0e5

_LOG_PI = math.log(math.pi)


@dataclass(frozen=True)
class ComplexHP:
    """A complex scalar tagged with its working precision in decimal digits.

    Arithmetic between mismatched precisions rounds to the lower of the
    two and sets ``downgraded`` on the result.
    """

    re: mp.mpf
    im: mp.mpf
    prec: int
    downgraded: bool = False

    def __post_init__(self):
        if self.prec < 15:
            raise PreconditionError(f"precision {self.prec} < 15 digits")

    @classmethod
    def make(cls, value, prec: int, downgraded: bool = False) -> "ComplexHP":
        with mp.workdps(prec):
            z = mp.mpc(value)
            return cls(mp.mpf(z.real), mp.mpf(z.imag), prec, downgraded)

    def to_mpc(self) -> mp.mpc:
        # Construct under this value's own precision: mpmath constructors
        # round to the *ambient* context, which may be far coarser.
        with mp.workdps(self.prec):
            return mp.mpc(self.re, self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        with mp.workdps(self.prec):
            return mp.hypot(self.re, self.im)

    def conjugate(self) -> "ComplexHP":
        return ComplexHP(self.re, -self.im, self.prec, self.downgraded)

    def _coerce(self, other):
        if isinstance(other, ComplexHP):
            return other
        return ComplexHP.make(other, self.prec)

    def _binop(self, other, fn) -> "ComplexHP":
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        downgraded = (
            self.downgraded or other.downgraded or self.prec != other.prec
        )
        with mp.workdps(prec):
            z = fn(self.to_mpc(), other.to_mpc())
            return ComplexHP(mp.mpf(z.real), mp.mpf(z.imag), prec, downgraded)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: a / b)

    def __neg__(self):
        return ComplexHP(-self.re, -self.im, self.prec, self.downgraded)


def _as_mpc(s) -> tuple[mp.mpc, int | None]:
    """Unpack a ComplexHP or plain scalar; return (mpc value, carried prec)."""
    if isinstance(s, ComplexHP):
        return s.to_mpc(), s.prec
    return mp.mpc(s), None


def _check_range(s: mp.mpc) -> None:
    if abs(mp.im(s)) > T_MAX:
        raise PreconditionError(
            f"|Im s| = {float(abs(mp.im(s)))} beyond documented range {T_MAX}"
        )
    if s == 1:
        raise PreconditionError("zeta pole at s = 1")


def _em_pair(s: mp.mpc, prec: int, want_prime: bool) -> tuple[mp.mpc, mp.mpc]:
    """Euler-Maclaurin zeta(s) and (optionally) zeta'(s) with shared powers.

    Power table: n^-s is evaluated transcendentally only at primes; each
    composite costs one complex multiply via its smallest prime factor.
    The correction loop runs until terms fall below the target or start
    diverging; the standard remainder bound is then checked against the
    requested precision.
    """
    t = abs(float(mp.im(s)))
    n_terms = max(30, int(0.8 * t) + 3 * prec)
    spf = _cached_spf(n_terms)
    eps = mp.mpf(10) ** (-(prec + 6))
    with mp.workdps(prec + 10):
        pw = np.empty(n_terms + 1, object)
        lg = np.empty(n_terms + 1, object) if want_prime else None
        pw[1] = mp.mpf(1)
        if want_prime:
            lg[1] = mp.mpf(0)
        zsum = mp.mpc(1)  # n = 1 term
        dsum = mp.mpc(0)
        for n in range(2, n_terms):
            p = int(spf[n])
            if p == n:
                pw[n] = mp.power(n, -s)
                if want_prime:
                    lg[n] = mp.log(n)
            else:
                m = n // p
                pw[n] = pw[p] * pw[m]
                if want_prime:
                    lg[n] = lg[p] + lg[m]
            zsum += pw[n]
            if want_prime:
                dsum -= lg[n] * pw[n]
        nf = mp.mpf(n_terms)
        lognf = mp.log(nf)
        npow_s = mp.exp(-s * lognf)  # N^-s
        zsum += nf * npow_s / (s - 1)
        zsum += npow_s / 2
        if want_prime:
            dsum += nf * npow_s * (-lognf * (s - 1) - 1) / (s - 1) ** 2
            dsum -= lognf * npow_s / 2
        rising = s  # (s)_{2j-1}
        drising = mp.mpc(1)  # its s-derivative, maintained incrementally
        npow = npow_s / nf
        prev_mag = mp.inf
        tail_ratio = None
        tiny = mp.mpf(10) ** -50
        j = 0
        while True:
            j += 1
            coef = mp.bernoulli(2 * j) / mp.factorial(2 * j)
            term = coef * rising * npow
            dterm = coef * npow * (drising - rising * lognf) if want_prime else 0
            scale = max(abs(zsum), abs(dsum) if want_prime else 0, tiny)
            mag = abs(term) + (abs(dterm) if want_prime else 0)
            if mag > prev_mag:
                # corrections started diverging before reaching the target
                tail_ratio = mag / scale
                break
            zsum += term
            if want_prime:
                dsum += dterm
            if mag < eps * scale:
                tail_ratio = mag / scale
                break
            prev_mag = mag
            step = (s + 2 * j - 1) * (s + 2 * j)
            drising = drising * step + rising * (2 * s + 4 * j - 1)
            rising *= step
            npow /= nf * nf
            if j > prec + 20:
                tail_ratio = mag / scale
                break
        if tail_ratio > mp.mpf(10) ** (-prec):
            raise CapacityError(
                f"precision {prec} unattainable at s = {complex(s)} "
                f"(tail ratio {mp.nstr(tail_ratio, 3)})"
            )
    with mp.workdps(prec):
        return mp.mpc(zsum), mp.mpc(dsum)


def zeta_and_prime(s, prec: int = PREC_IDENTITY) -> tuple[mp.mpc, mp.mpc]:
    """(zeta(s), zeta'(s)) as mpmath complexes at ``prec`` digits."""
    z, carried = _as_mpc(s)
    _check_range(z)
    eff = prec if carried is None else min(prec, carried)
    return _em_pair(z, eff, True)


def zeta_eval(s, prec: int = PREC_IDENTITY) -> ComplexHP:
    """zeta(s) by Euler-Maclaurin with adaptive terms and tail-bound check."""
    z, carried = _as_mpc(s)
    _check_range(z)
    eff = prec if carried is None else min(prec, carried)
    val, _ = _em_pair(z, eff, False)
    return ComplexHP.make(val, eff, carried is not None and carried < prec)


def zeta_prime_eval(s, prec: int = PREC_IDENTITY) -> ComplexHP:
    """zeta'(s): the term-by-term differentiated Euler-Maclaurin sum."""
    z, carried = _as_mpc(s)
    _check_range(z)
    eff = prec if carried is None else min(prec, carried)
    _, val = _em_pair(z, eff, True)
    return ComplexHP.make(val, eff, carried is not None and carried < prec)


def _gamma_pole_check(u: mp.mpc, prec: int, label: str) -> None:
    if abs(mp.im(u)) < mp.mpf(10) ** (-prec + 2):
        r = mp.re(u)
        if r <= 0 and abs(r - mp.nint(r)) < mp.mpf(10) ** (-prec + 2):
            raise PreconditionError(f"Gamma pole in chi: {label} = {complex(u)}")


def chi_eval(s, prec: int = PREC_IDENTITY) -> ComplexHP:
    """The functional-equation factor pi^(s-1/2) Gamma((1-s)/2) / Gamma(s/2).

    Evaluated through log-Gamma so large heights neither overflow nor lose
    the phase.  |chi(1/2+it)| = 1 to working precision.
    """
    z, carried = _as_mpc(s)
    eff = prec if carried is None else min(prec, carried)
    with mp.workdps(eff + 10):
        u = (1 - z) / 2
        v = z / 2
        _gamma_pole_check(u, eff, "(1-s)/2")
        _gamma_pole_check(v, eff, "s/2")
        val = mp.exp((z - mp.mpf(1) / 2) * mp.log(mp.pi) + mp.loggamma(u) - mp.loggamma(v))
    return ComplexHP.make(val, eff, carried is not None and carried < prec)


def chi_logderiv_approx(t: float) -> float:
    """Stirling-order approximation to (chi'/chi)(1/2+it): -log(t/2pi)."""
    if t < 1:
        raise PreconditionError("approximation needs t >= 1")
    return -math.log(t / (2.0 * math.pi))


def theta(t, prec: int = PREC_IDENTITY) -> mp.mpf:
    """Phase of the critical line: Im log-Gamma(1/4+it/2) - (t/2) log pi."""
    with mp.workdps(prec + 8):
        tt = mp.mpf(t)
        val = mp.im(mp.loggamma(mp.mpf(1) / 4 + 0.5j * tt)) - tt / 2 * mp.log(mp.pi)
    with mp.workdps(prec):
        return +val


def theta_prime(t, prec: int = PREC_IDENTITY) -> mp.mpf:
    """d theta/dt = Re psi(1/4+it/2)/2 - log(pi)/2."""
    with mp.workdps(prec + 8):
        tt = mp.mpf(t)
        val = mp.re(mp.digamma(mp.mpf(1) / 4 + 0.5j * tt)) / 2 - mp.log(mp.pi) / 2
    with mp.workdps(prec):
        return +val


def _rotated(t, prec: int):
    """(Z(t), rotation e^{i theta}, zeta, zeta') sharing one evaluation."""
    with mp.workdps(prec + 8):
        tt = mp.mpf(t)
        s = mp.mpc(mp.mpf(1) / 2, tt)
        zeta, zprime = _em_pair(s, prec + 5, True)
        th = mp.im(mp.loggamma(mp.mpf(1) / 4 + 0.5j * tt)) - tt / 2 * mp.log(mp.pi)
        rot = mp.exp(1j * th)
        zrot = rot * zeta
        # absolute self-check: the rotation is exactly unimodular, so any
        # imaginary part is evaluation noise and must sit far below 10^-(prec-5)
        if abs(mp.im(zrot)) > mp.mpf(10) ** (-(prec - 5)):
            raise IntegrityError(
                f"rotated zeta at t = {float(t)} has imaginary residual "
                f"{float(mp.im(zrot))} (realness self-check)"
            )
        return mp.re(zrot), rot, zeta, zprime


def hardy_Z(t, prec: int = PREC_IDENTITY) -> mp.mpf:
    """Hardy's Z(t) = e^{i theta(t)} zeta(1/2+it); real by construction.

    The imaginary residual of the rotation is checked against
    10^-(prec-5) as a self-test before it is discarded.
    """
    if t < 0:
        raise PreconditionError("hardy_Z needs t >= 0")
    z, _, _, _ = _rotated(t, prec)
    with mp.workdps(prec):
        return +z


def hardy_Z_with_deriv(t, prec: int = PREC_IDENTITY):
    """(Z(t), Z'(t), zeta(s), zeta'(s)) at s = 1/2+it, one shared evaluation.

    Z' = Re[i e^{i theta} (theta' zeta + zeta')], used by Newton polish.
    """
    if t < 0:
        raise PreconditionError("needs t >= 0")
    with mp.workdps(prec + 8):
        zval, rot, zeta, zprime = _rotated(t, prec)
        tt = mp.mpf(t)
        thp = mp.re(mp.digamma(mp.mpf(1) / 4 + 0.5j * tt)) / 2 - mp.log(mp.pi) / 2
        zp = mp.re(1j * rot * (thp * zeta + zprime))
    with mp.workdps(prec):
        return +zval, +zp, mp.mpc(zeta), mp.mpc(zprime)


# ---------------------------------------------------------------------------
# float64 vectorized evaluation (sign scans, argument tracking, quadrature)
# ---------------------------------------------------------------------------
def zeta_f64(s, n_terms: int | None = None, em_terms: int = 14) -> np.ndarray:
    """Euler-Maclaurin zeta over a complex128 array (machine precision).

    Good to ~1e-12 relative error for |Im s| up to a few thousand with the
    default adaptive term count.  Used for sign scans, argument tracking
    and contour quadrature where 1e-10 absolute suffices.
    """
    from .kernels import EM_COEF

    scalar_in = np.isscalar(s) or getattr(s, "ndim", 1) == 0
    s = np.atleast_1d(np.asarray(s, np.complex128))
    out = np.empty(s.shape, np.complex128)
    flat = s.ravel()
    oflat = out.ravel()
    chunk = max(1, int(4.0e6 / max(1, int(0.8 * np.abs(flat.imag).max() + 30))))
    for i0 in range(0, len(flat), chunk):
        sc = flat[i0: i0 + chunk]
        n_eff = n_terms or max(30, int(0.8 * np.abs(sc.imag).max() + 30))
        n = np.arange(1, n_eff, dtype=np.float64)
        tot = np.exp(-sc[:, None] * np.log(n)[None, :]).sum(axis=1)
        nf = float(n_eff)
        lognf = math.log(nf)
        tot += np.exp((1.0 - sc) * lognf) / (sc - 1.0)
        tot += 0.5 * np.exp(-sc * lognf)
        rising = sc.copy()
        npow = np.exp((-sc - 1.0) * lognf)
        for j in range(1, em_terms + 1):
            tot += EM_COEF[j] * rising * npow
            rising = rising * (sc + (2.0 * j - 1.0)) * (sc + 2.0 * j)
            npow = npow / (nf * nf)
        oflat[i0: i0 + chunk] = tot
    return out[0] if scalar_in else out
