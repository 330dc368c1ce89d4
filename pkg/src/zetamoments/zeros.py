"""Critical-line zero location with certified counts.

Zeros are found by a Gram-point-seeded sign scan of Hardy's Z in float64
(fast JIT/numpy grid kernel), bracketed and bisected to ~1e-12, then
polished by one or two mpmath Newton steps on Z.  Counts are always
certified through the argument principle: N(T) = theta(T)/pi + 1 + S(T),
with S(T) obtained by adaptively tracking arg zeta along the path
2 -> 2+iT -> 1/2+iT.  Gram points only seed the scan; no regularity
assumption about them enters the count.

Cache format v1 (bit-exact, ASCII, LF):
    #zeta-zeros v1 prec=<digits> tmax=<decimal>
    <index> <gamma with prec digits> [<re zeta'> <im zeta'>]
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath as mp
import numpy as np

from .errors import IntegrityError, PreconditionError
from .kernels import hardy_z_grid
from .zeta import PREC_BULK, ComplexHP, hardy_Z_with_deriv, theta, zeta_and_prime, zeta_f64

_TWO_PI = 2.0 * math.pi
_SIMPLE_ZERO_FLOOR = 1.0e-6
_SCAN_FLOOR = 12.0  # no zeros below gamma_1 ~ 14.13; scanning starts here


@dataclass
class ZeroRecord:
    """One nontrivial zero 1/2 + i*gamma with an optional zeta' value.

    ``zeta_prime`` fills lazily on first access (records loaded from a
    cache without derivative columns compute it then); scans store it
    eagerly since the Newton polish already evaluated it.
    """

    index: int
    gamma: mp.mpf
    prec: int
    _zeta_prime: ComplexHP | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.gamma <= 0:
            raise PreconditionError("zero ordinate must be positive")

    @property
    def zeta_prime(self) -> ComplexHP:
        if self._zeta_prime is None:
            with mp.workdps(self.prec + 8):
                s = mp.mpc(mp.mpf(1) / 2, self.gamma)
            _, zp = zeta_and_prime(s, self.prec)
            self._zeta_prime = ComplexHP.make(zp, self.prec)
        return self._zeta_prime


@dataclass(frozen=True)
class ZeroCache:
    """Ordered zeros covering (0, t_max], certified against count_exact."""

    records: tuple[ZeroRecord, ...]
    t_max: float
    prec: int
    version: int = 1
    certified: bool = False

    def __len__(self) -> int:
        return len(self.records)

    def gammas_f64(self) -> np.ndarray:
        return np.array([float(r.gamma) for r in self.records])

    def certify(self) -> "ZeroCache":
        """Re-assert completeness: record count equals the argument-principle
        count at t_max, records contiguous from the first zero."""
        n = count_exact(self.t_max)
        if n != len(self.records):
            raise IntegrityError(
                f"cache holds {len(self.records)} records but N({self.t_max}) = {n}"
            )
        for i, r in enumerate(self.records):
            if r.index != i + 1:
                raise IntegrityError(f"record {i} has ordinal {r.index}")
        return ZeroCache(self.records, self.t_max, self.prec, self.version, True)


def count_main_term(t: float) -> float:
    """(T/2pi) log(T/2pi e), the smooth part of the zero count."""
    return t / _TWO_PI * math.log(t / (_TWO_PI * math.e))


def _track_arg(svals: np.ndarray, params: np.ndarray, label: str):
    """Total continuous change of arg zeta along a parameterized segment.

    ``svals``/``params`` give the initial grid; steps whose principal
    argument jump exceeds 1 radian are halved (midpoint insertion) until
    resolved.  Returns (total change, refined zeta values at endpoints).
    """
    vals = zeta_f64(svals)
    for _ in range(48):
        ratios = vals[1:] / vals[:-1]
        jumps = np.abs(np.angle(ratios))
        bad = np.flatnonzero(jumps > 1.0)
        if len(bad) == 0:
            return float(np.angle(ratios).sum()), vals
        if len(params) > 2_000_000:
            break
        mid_p = 0.5 * (params[bad] + params[bad + 1])
        mid_s = 0.5 * (svals[bad] + svals[bad + 1])
        mid_v = zeta_f64(mid_s)
        order = np.argsort(np.concatenate([params, mid_p]))
        params = np.concatenate([params, mid_p])[order]
        svals = np.concatenate([svals, mid_s])[order]
        vals = np.concatenate([vals, mid_v])[order]
    worst = int(np.argmax(np.abs(np.angle(vals[1:] / vals[:-1]))))
    raise IntegrityError(
        f"argument tracking stalled on {label} near parameter "
        f"{params[worst]:.6g}..{params[worst + 1]:.6g}"
    )


@lru_cache(maxsize=512)
def count_exact(t: float) -> int:
    """Exact zero count N(T) by the argument principle.

    theta(T)/pi + 1 + S(T) with S(T) tracked along 2 -> 2+iT -> 1/2+iT.
    T must be >= 5 and not within ~1e-6 of a zero ordinate.
    """
    t = float(t)
    if t < 5.0:
        raise PreconditionError("count_exact needs T >= 5")
    end = zeta_f64(np.array([0.5 + 1j * t]))[0]
    if abs(end) < 1.0e-8:
        raise PreconditionError(f"T = {t} is too close to a zero ordinate")
    # vertical segment 2 -> 2+iT: arg zeta stays small, coarse grid suffices
    n1 = max(8, int(t))
    u = np.linspace(0.0, t, n1)
    a1, _ = _track_arg(2.0 + 1j * u, u, f"segment 2 -> 2+{t}i")
    # horizontal segment 2+iT -> 1/2+iT
    n2 = 64
    sig = np.linspace(2.0, 0.5, n2)
    a2, _ = _track_arg(sig + 1j * t, -sig, f"segment 2+{t}i -> 0.5+{t}i")
    s_of_t = (a1 + a2) / math.pi
    n_float = float(theta(t, 20)) / math.pi + 1.0 + s_of_t
    n_round = round(n_float)
    if abs(n_float - n_round) > 0.01:
        raise IntegrityError(
            f"argument principle at T = {t} gave non-integer count {n_float:.4f}"
        )
    return int(n_round)


# ---------------------------------------------------------------------------
# Gram points (float64 seeds for the scan grid)
# ---------------------------------------------------------------------------
def _theta_f64(t):
    from scipy.special import loggamma

    t = np.asarray(t, np.float64)
    return loggamma(0.25 + 0.5j * t).imag - 0.5 * t * math.log(math.pi)


def _theta_prime_f64(t):
    from scipy.special import psi

    t = np.asarray(t, np.float64)
    return 0.5 * psi(0.25 + 0.5j * t).real - 0.5 * math.log(math.pi)


def gram_points(t_lo: float, t_hi: float) -> np.ndarray:
    """Gram points (theta(g) = n*pi) inside [t_lo, t_hi], t_lo >= 10."""
    t_lo = max(t_lo, 10.0)
    if t_hi <= t_lo:
        return np.empty(0)
    n_lo = math.ceil(_theta_f64(t_lo) / math.pi)
    n_hi = math.floor(_theta_f64(t_hi) / math.pi)
    if n_hi < n_lo:
        return np.empty(0)
    n = np.arange(n_lo, n_hi + 1, dtype=np.float64)
    g = np.linspace(t_lo, t_hi, len(n))
    for _ in range(8):
        g = g - (_theta_f64(g) - n * math.pi) / _theta_prime_f64(g)
    return np.clip(g, t_lo, t_hi)


# ---------------------------------------------------------------------------
# scanning
# ---------------------------------------------------------------------------
def _scan_grid(t_lo: float, t_hi: float) -> np.ndarray:
    g = gram_points(t_lo, t_hi)
    pieces = [np.array([t_lo, t_hi])]
    if len(g) >= 2:
        pieces.append(g)
        pieces.append(0.5 * (g[:-1] + g[1:]))
        lead = np.arange(t_lo, g[0], 0.4)
        tail = np.arange(g[-1], t_hi, 0.4)
    else:
        lead = np.arange(t_lo, t_hi, 0.4)
        tail = np.empty(0)
    pieces.extend([lead, tail])
    return np.unique(np.concatenate(pieces))


def _widest_gap_interval(grid, z) -> tuple[float, float]:
    """Sign-change-free stretch with the most Gram-like room: the best
    candidate interval to blame for a count mismatch."""
    changes = np.flatnonzero(z[:-1] * z[1:] < 0)
    marks = np.concatenate([[0], changes, [len(grid) - 1]])
    widths = grid[marks[1:]] - grid[marks[:-1]]
    k = int(np.argmax(widths))
    return float(grid[marks[k]]), float(grid[marks[k + 1]])


def scan_zeros(t_lo: float, t_hi: float, prec: int = PREC_BULK) -> list[ZeroRecord]:
    """All zeros with t_lo < gamma <= t_hi, polished to |dgamma| < 10^-prec.

    Sign scan on a Gram-seeded grid, global step halving until the count
    matches the argument principle (bounded retries), float64 bisection,
    then mpmath Newton with an eagerly stored zeta'(rho) per record.
    """
    if not 0 <= t_lo < t_hi <= 1.0e5:
        raise PreconditionError("need 0 <= t_lo < t_hi <= 1e5")
    base = count_exact(t_lo) if t_lo >= 5.0 else 0
    expected = count_exact(t_hi) - base
    lo = max(t_lo, _SCAN_FLOOR)
    if t_hi <= lo:
        if expected:
            raise IntegrityError(
                f"argument principle expects {expected} zeros in ({t_lo}, {t_hi}] "
                "below the scan floor"
            )
        return []
    grid = _scan_grid(lo, t_hi)
    z = hardy_z_grid(grid)
    found = None
    for _ in range(7):
        idx = np.flatnonzero(z[:-1] * z[1:] < 0.0)
        if len(idx) == expected:
            found = idx
            break
        if len(idx) > expected:
            break
        mids = 0.5 * (grid[:-1] + grid[1:])
        zm = hardy_z_grid(mids)
        order = np.argsort(np.concatenate([grid, mids]))
        grid = np.concatenate([grid, mids])[order]
        z = np.concatenate([z, zm])[order]
    if found is None:
        idx = np.flatnonzero(z[:-1] * z[1:] < 0.0)
        a, b = _widest_gap_interval(grid, z)
        raise IntegrityError(
            f"sign scan found {len(idx)} zeros in ({t_lo}, {t_hi}] but the "
            f"argument principle certifies {expected}; suspect interval "
            f"({a:.6f}, {b:.6f})"
        )
    # vectorized bisection to ~1e-12
    a = grid[found].copy()
    b = grid[found + 1].copy()
    za = z[found].copy()
    for _ in range(44):
        m = 0.5 * (a + b)
        zm = hardy_z_grid(m)
        left = za * zm < 0.0
        b = np.where(left, m, b)
        a = np.where(left, a, m)
        za = np.where(left, za, zm)
    centers = 0.5 * (a + b)
    records = []
    tol = mp.mpf(10) ** (-prec - 2)
    for k, g0 in enumerate(centers):
        with mp.workdps(prec + 10):
            g = mp.mpf(float(g0))
            spacing = _TWO_PI / math.log(max(float(g0), 10.0) / _TWO_PI)
            zp_val = None
            for _ in range(5):
                zv, zderiv, _, zeta_p = hardy_Z_with_deriv(g, prec + 5)
                if abs(zderiv) == 0:
                    raise IntegrityError(f"flat Z near t = {float(g)}")
                dg = zv / zderiv
                if abs(dg) > 0.4 * spacing:
                    raise IntegrityError(
                        f"Newton polish diverged from bracket at t = {float(g0)}"
                    )
                g = g - dg
                zp_val = zeta_p
                if abs(dg) < tol:
                    break
            else:
                raise IntegrityError(f"Newton polish stalled at t = {float(g0)}")
            if abs(zp_val) <= _SIMPLE_ZERO_FLOOR:
                raise IntegrityError(
                    f"|zeta'(rho)| = {float(abs(zp_val)):.3g} at gamma = {float(g):.6f}: "
                    "numerically double zero"
                )
        with mp.workdps(prec):
            records.append(
                ZeroRecord(
                    index=base + k + 1,
                    gamma=+g,
                    prec=prec,
                    _zeta_prime=ComplexHP.make(zp_val, prec),
                )
            )
    return records


def build_cache(t_max: float, prec: int = PREC_BULK) -> ZeroCache:
    """Scan (0, t_max], certify the count, and return an immutable cache."""
    records = scan_zeros(0.0, t_max, prec)
    cache = ZeroCache(tuple(records), float(t_max), prec)
    return cache.certify()


# ---------------------------------------------------------------------------
# cache file I/O (v1 format)
# ---------------------------------------------------------------------------
_HEADER_RE = re.compile(r"^#zeta-zeros v(\d+) prec=(\d+) tmax=([0-9eE+.\-]+)$")


def _sig_digits(token: str) -> int:
    digits = token.lstrip("+-").replace(".", "")
    digits = digits.split("e")[0].split("E")[0]
    return len(digits.lstrip("0"))


def _fmt(x, prec: int) -> str:
    return mp.nstr(x, prec, strip_zeros=False)


def cache_io(path, mode: str, cache: ZeroCache | None = None) -> ZeroCache | None:
    """Read or write the v1 zero-cache file format (lossless round trip)."""
    if mode == "write":
        if cache is None:
            raise PreconditionError("write mode needs a cache")
        if not cache.certified:
            raise PreconditionError("refusing to write an uncertified cache")
        lines = [f"#zeta-zeros v1 prec={cache.prec} tmax={cache.t_max!r}"]
        with mp.workdps(cache.prec + 5):
            for r in cache.records:
                parts = [str(r.index), _fmt(r.gamma, cache.prec)]
                if r._zeta_prime is not None:
                    z = r._zeta_prime
                    parts.append(_fmt(z.re, cache.prec))
                    parts.append(_fmt(z.im, cache.prec))
                lines.append(" ".join(parts))
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
        return None
    if mode != "read":
        raise PreconditionError(f"unknown mode {mode!r}")
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    lines = text.splitlines()
    if not lines:
        raise IntegrityError("empty cache file")
    m = _HEADER_RE.match(lines[0])
    if not m:
        raise IntegrityError(f"bad cache header: {lines[0]!r}")
    if int(m.group(1)) != 1:
        raise IntegrityError(f"cache format version {m.group(1)} unsupported (want 1)")
    prec = int(m.group(2))
    t_max = float(m.group(3))
    records = []
    last_gamma = None
    with mp.workdps(prec + 5):
        for ln, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) not in (2, 4):
                raise IntegrityError(f"truncated record on line {ln}: {line!r}")
            idx = int(parts[0])
            if _sig_digits(parts[1]) < prec:
                raise IntegrityError(
                    f"line {ln}: gamma printed with fewer than {prec} digits"
                )
            gamma = mp.mpf(parts[1])
            if last_gamma is not None and gamma <= last_gamma:
                raise IntegrityError(f"line {ln}: ordinates not increasing")
            last_gamma = gamma
            zp = None
            if len(parts) == 4:
                zp = ComplexHP(mp.mpf(parts[2]), mp.mpf(parts[3]), prec)
            records.append(ZeroRecord(idx, gamma, prec, zp))
    # re-certify on load: a file that drifted out of sync with the
    # argument-principle count must not flow into moment sums
    return ZeroCache(tuple(records), t_max, prec).certify()
