"""Twisted-second-moment machinery: contour forms and main-term functionals.

Three layers, all built on the shifted local sums in :mod:`.recipe`:

* ``contour_bracket_check`` verifies the two- and three-shift residue
  identities that rewrite sums of shifted zeta products as multiple
  contour integrals of a single manifestly analytic integrand.
* ``tilde_Z_check`` verifies the diagonal-transfer identity: a weighted
  vertical-line integral of the closed-form diagonal Dirichlet series
  reproduces the shifted product ``Z`` up to quadrature error.  The
  mollifying factor ``H(s) = Q_z(s) exp(s^2)`` carries zeros placed at
  the two poles of the zeta-quotient integrand so only the ``s = 0``
  residue survives.
* ``mcI_mcJ_evaluate`` / ``twisted_compare`` assemble the two main-term
  functionals of the twisted second moment (the shift-derivative triple
  integral and the log-weighted diagonal) and compare their sum against
  a direct sum over nontrivial zeros.

Everything here runs in complex128: contours stay a fixed factor away
from every pole, so magnitudes are tame and vectorized Euler-Maclaurin
zeta values (~1e-13 relative) dominate the error budget.  Reference
values on the slow side of each comparison use mpmath.
"""
from __future__ import annotations

import math
import warnings

import numpy as np
from mpmath import mp

from .arith import CoefficientTable, FactoredInteger
from .errors import PreconditionError
from .mollifier import MollifierParams, build_tables
from .recipe import Z_value
from .zeros import ZeroCache
from .zeta import zeta_f64

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# circle quadrature and elementary t-integrals


def _circle(r: float, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights turning (1/2pi i) * contour integral into a dot.

    Midpoint-offset angles keep nodes off the real axis, where the
    integrands evaluated here concentrate their poles.
    """
    ang = TWO_PI * (np.arange(m) + 0.5) / m
    z = r * np.exp(1j * ang)
    return z, z / m


def power_integral(e: complex, T: float) -> complex:
    """(1/2pi) * integral_1^T (t/2pi)^e dt, exact antiderivative.

    The removable point e = -1 returns the log limit.  Exactness here
    (rather than numerical t-quadrature) keeps the main-term assembly
    free of a tolerance knob; tests cross-check against adaptive
    Gauss-Kronrod panels.
    """
    if T <= 1.0:
        raise PreconditionError("power_integral needs T > 1")
    e = complex(e)
    lo, hi = math.log(1.0 / TWO_PI), math.log(T / TWO_PI)
    if abs(e + 1.0) < 1e-9:
        return complex(math.log(T))
    return (np.exp((e + 1.0) * hi) - np.exp((e + 1.0) * lo)) / (e + 1.0)


def log_power_integral(e: complex, T: float) -> complex:
    """(1/2pi) * integral_1^T log(t/2pi) (t/2pi)^e dt, exact antiderivative."""
    if T <= 1.0:
        raise PreconditionError("log_power_integral needs T > 1")
    e = complex(e)
    lo, hi = math.log(1.0 / TWO_PI), math.log(T / TWO_PI)
    if abs(e + 1.0) < 1e-9:
        return complex(0.5 * (hi * hi - lo * lo))
    ep = e + 1.0
    val = np.exp(ep * hi) * (hi / ep - 1.0 / (ep * ep))
    val -= np.exp(ep * lo) * (lo / ep - 1.0 / (ep * ep))
    return complex(val)


def squared_log_integral(T: float) -> float:
    """(1/2pi) * integral_1^T log^2(t/2pi) dt, exact antiderivative."""
    if T <= 1.0:
        raise PreconditionError("squared_log_integral needs T > 1")

    def anti(u: float) -> float:
        lg = math.log(u)
        return u * (lg * lg - 2.0 * lg + 2.0)

    return anti(T / TWO_PI) - anti(1.0 / TWO_PI)


# ---------------------------------------------------------------------------
# contour representations of the shifted brackets


def _check_contour_args(t: float, shifts, r: float, h: int, k: int) -> None:
    if t < 2.0:
        raise PreconditionError("contour identity checked for t >= 2 only")
    if not (0.0 < r < 0.25):
        raise PreconditionError("contour radius must lie in (0, 1/4)")
    big = max(abs(complex(w)) for w in shifts)
    if big * 2.0 > r:
        raise PreconditionError(
            f"radius {r} must exceed twice every shift magnitude (max {big})"
        )
    if h < 1 or k < 1 or math.gcd(h, k) != 1:
        raise PreconditionError("h, k must be coprime positive integers")


def _guard_pole_distance(nodes: np.ndarray, poles: list[complex], r: float) -> None:
    for p in poles:
        if np.abs(nodes - p).min() < 1e-3 * max(1.0, r / 0.02):
            raise PreconditionError(
                "quadrature node within 1e-3 of a shift pole; pick a "
                "different radius r"
            )


def _local_ratio_slice(
    p: int, e: int, x: np.ndarray, y: np.ndarray, q: complex
) -> np.ndarray:
    """Local factor of Z on a (z1, z3) grid at one fixed middle node.

    x = p^(-z1) per first-axis node, y = p^(-z3) per second-axis node,
    q = p^(-(1+beta)) at the middle node.  The two grids sit on distinct
    radii so x - y stays bounded away from zero and the closed form is
    safe in double precision.
    """
    xe = x**e * (1.0 - x)
    ye = y**e * (1.0 - y)
    num = ye[None, :] * (1.0 - q * x[:, None]) - xe[:, None] * (1.0 - q * y[None, :])
    den = (x[:, None] - y[None, :]) * (1.0 - q)
    return num / den


def contour_bracket_check(
    order: int,
    t: float,
    shifts,
    h: int = 1,
    k: int = 1,
    r: float = 0.02,
    M: int = 256,
    prec: int = 30,
) -> float:
    """Relative residual of the order-2 or order-3 contour identity.

    The left side sums explicit shifted zeta products (order 2) or the
    three-term ``Z`` bracket (order 3) at height ``t``; the right side
    evaluates the corresponding multiple contour integral by trapezoid
    quadrature on concentric circles of slightly distinct radii (so grid
    nodes never collide across axes).  Both sides are analytic across
    internal shift coincidences, which is the point of the identity.
    """
    if order == 2:
        alpha, beta = (complex(w) for w in shifts)
        _check_contour_args(t, (alpha, beta), r, h, k)
        u = t / TWO_PI
        z1, w1 = _circle(0.9 * r, M)
        z2, w2 = _circle(1.1 * r, M)
        _guard_pole_distance(z1, [alpha, -beta], r)
        _guard_pole_distance(z2, [alpha, -beta], r)

        diff = z1[:, None] - z2[None, :]
        grid = zeta_f64(1.0 + diff) * diff * diff * np.exp(0.5 * math.log(u) * diff)
        row = w1 * np.exp(-math.log(k) * z1) / ((z1 - alpha) * (z1 + beta))
        col = w2 * np.exp(math.log(h) * z2) / ((z2 - alpha) * (z2 + beta))
        rhs = -(u ** (-0.5 * (alpha + beta))) * (row @ grid @ col)

        with mp.workdps(prec):
            ab = mp.mpc(alpha) + mp.mpc(beta)
            lhs = mp.zeta(1 + ab) * mp.power(h, -beta) * mp.power(k, -alpha)
            lhs += (
                mp.power(u, -ab)
                * mp.zeta(1 - ab)
                * mp.power(h, alpha)
                * mp.power(k, beta)
            )
            lhs = complex(lhs)
        return abs(lhs - rhs) / abs(lhs)

    if order != 3:
        raise PreconditionError("contour bracket order must be 2 or 3")

    alpha, beta, gamma = (complex(w) for w in shifts)
    _check_contour_args(t, (alpha, beta, gamma), r, h, k)
    u = t / TWO_PI
    logu = math.log(u)
    z1, w1 = _circle(0.9 * r, M)
    z2, w2 = _circle(1.0 * r, M)
    z3, w3 = _circle(1.1 * r, M)
    for nodes in (z1, z2, z3):
        _guard_pole_distance(nodes, [alpha, -beta, gamma], r)

    d12 = z1[:, None] - z2[None, :]
    d23 = -z2[:, None] + z3[None, :]
    grid12 = zeta_f64(1.0 + d12) * d12 * d12
    grid23 = zeta_f64(1.0 + d23) * d23 * d23
    grid13 = (z3[None, :] - z1[:, None]) ** 2
    inv_mid = 1.0 / zeta_f64(1.0 - z2)

    kf = FactoredInteger.from_int(k)
    row = w1 * np.exp(0.5 * logu * z1)
    col = w3 * np.exp(0.5 * logu * z3)
    for zz in (alpha, -beta, gamma):
        row = row / (z1 - zz)
        col = col / (z3 - zz)
    mid = w2 * inv_mid * np.exp((math.log(h) - 0.5 * logu) * z2)
    for zz in (alpha, -beta, gamma):
        mid = mid / (z2 - zz)

    total = 0.0 + 0.0j
    for j in range(M):
        slab = grid12[:, j][:, None] * grid23[j, :][None, :] * grid13
        for p, e in kf.factors:
            lp = math.log(p)
            slab = slab * _local_ratio_slice(
                p, e, np.exp(-lp * z1), np.exp(-lp * z3), np.exp(-lp * (1.0 - z2[j]))
            )
        total += mid[j] * (row @ slab @ col)
    rhs = -0.5 * (u ** (-0.5 * (alpha + beta + gamma))) * total

    with mp.workdps(prec):
        terms = [
            Z_value((alpha, beta, gamma), h, k, prec).to_mpc(),
            mp.power(u, -(mp.mpc(alpha) + mp.mpc(beta)))
            * Z_value((-beta, -alpha, gamma), h, k, prec).to_mpc(),
            mp.power(u, -(mp.mpc(beta) + mp.mpc(gamma)))
            * Z_value((alpha, -gamma, -beta), h, k, prec).to_mpc(),
        ]
        lhs = complex(mp.fsum(terms))
    return abs(lhs - rhs) / abs(lhs)


# ---------------------------------------------------------------------------
# diagonal-transfer identity


_TILDE_CACHE: dict[tuple, dict] = {}


def _tilde_nodes(z1: complex, z2: complex, z3: complex, T: float, V: float) -> dict:
    """Line-quadrature nodes and pair-independent integrand pieces.

    Cached per (shifts, T, V): the zeta quotient and the mollifier
    ``H(s)/s`` are shared by every (h, k) pair in a sweep, which turns
    the all-pairs certification into one grid build plus cheap dots.
    """
    key = (z1, z2, z3, float(T), float(V))
    hit = _TILDE_CACHE.get(key)
    if hit is not None:
        return hit

    from .quadrature import _WGK, panel_nodes

    c = 1.0 / math.log(T)
    width = 2.0 * c
    n_panels = max(8, int(math.ceil(2.0 * V / width)))
    edges = np.linspace(-V, V, n_panels + 1)
    nodes = []
    weights = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        nodes.append(panel_nodes(float(lo), float(hi)))
        weights.append(0.5 * (hi - lo) * _WGK)
    v = np.concatenate(nodes)
    w = np.concatenate(weights)

    s = c + 1j * v
    e1 = z1 + z2
    e2 = z2 + z3
    q_poly = (1.0 + 2.0 * s / e1) * (1.0 + 2.0 * s / e2)
    hs = q_poly * np.exp(s * s)
    zq = (
        zeta_f64(1.0 + e1 + 2.0 * s)
        * zeta_f64(1.0 + e2 + 2.0 * s)
        / zeta_f64(1.0 + z2 + 2.0 * s)
    )
    base = (w / TWO_PI) * (hs / s) * np.exp(2.0 * math.log(T) * s) * zq
    out = {"s": s, "base": base, "c": c}
    if len(_TILDE_CACHE) > 16:
        _TILDE_CACHE.clear()
    _TILDE_CACHE[key] = out
    return out


def tilde_Z_check(
    z1: complex,
    z2: complex,
    z3: complex,
    h: int,
    k: int,
    T: float,
    trunc_height: float = 6.0,
    prec: int = 30,
) -> dict:
    """Check the diagonal-transfer identity hk * tilde_Z = Z + small.

    tilde_Z is the weighted line integral (at Re s = 1/log T, truncated
    at +-trunc_height) of the closed-form diagonal series; the weight
    ``H(s) = Q_z(s) exp(s^2)`` has ``H(0) = 1`` and zeros at the two
    zeta-quotient poles ``2s = -(z1+z2)`` and ``2s = -(z2+z3)``, so the
    only surviving residue is the ``Z`` value at ``s = 0``.  Returns the
    integral, the reference ``Z``, and the relative deviation.
    """
    z1, z2, z3 = complex(z1), complex(z2), complex(z3)
    if h < 1 or k < 1 or math.gcd(h, k) != 1:
        raise PreconditionError("h, k must be coprime positive integers")
    if T < 50.0:
        raise PreconditionError("diagonal transfer needs T >= 50")
    for w in (z1, z2, z3):
        if abs(w) > 0.05:
            raise PreconditionError("shifts must have modulus <= 0.05")
    if abs(z1 + z2) < 1e-4 or abs(z2 + z3) < 1e-4:
        raise PreconditionError(
            "z1+z2 and z2+z3 must stay away from zero (H zeros would "
            "collide with the s = 0 residue)"
        )

    grid = _tilde_nodes(z1, z2, z3, T, trunc_height)
    s = grid["s"]
    vals = grid["base"] * np.exp(-(1.0 + s) * math.log(h * k))

    kf = FactoredInteger.from_int(k)
    for p, e in kf.factors:
        lp = math.log(p)
        x = complex(np.exp(-lp * z1))
        y = complex(np.exp(-lp * z3))
        q = np.exp(-lp * (1.0 + z2 + 2.0 * s))
        xe = x**e * (1.0 - x)
        ye = y**e * (1.0 - y)
        ratio = (ye * (1.0 - q * x) - xe * (1.0 - q * y)) / ((x - y) * (1.0 - q))
        vals = vals * ratio

    tilde = complex(np.exp(-math.log(h) * z2)) * vals.sum()
    z_ref = complex(Z_value((z1, z2, z3), h, k, prec).to_mpc())
    deviation = abs(h * k * tilde - z_ref) / abs(z_ref)
    return {"tilde_Z": tilde, "Z": z_ref, "deviation": deviation}


# ---------------------------------------------------------------------------
# main-term functionals


def pair_weight_matrix(a: np.ndarray) -> np.ndarray:
    """Coprime-pair weights W[h, k] = sum_g a(gh) conj(a(gk)) / (g h k).

    ``a`` is 1-indexed (slot 0 ignored) on 1..y.  The matrix is dense of
    side y+1; entry (h, k) collects every g <= y/max(h, k), coprimality
    enforced by a gcd mask, so downstream contractions are plain matrix
    products.
    """
    y = len(a) - 1
    if y < 1:
        raise PreconditionError("coefficient table must cover n = 1")
    idx = np.arange(1, y + 1)
    coprime = np.gcd(idx[:, None], idx[None, :]) == 1
    w = np.zeros((y + 1, y + 1), np.complex128)
    inv = 1.0 / idx.astype(np.float64)
    for g in range(1, y + 1):
        m = y // g
        if m < 1:
            break
        ah = a[g * idx[:m]]
        w[1 : m + 1, 1 : m + 1] += (
            np.outer(ah * inv[:m], np.conj(ah) * inv[:m]) * coprime[:m, :m] / g
        )
    return w


def _coerce_a_table(a_table, params) -> np.ndarray:
    if a_table is None:
        if params is None:
            return np.array([0.0, 1.0], np.complex128)
        q = build_tables(params)["Q"]
        return np.asarray(q.values, np.complex128)
    if isinstance(a_table, CoefficientTable):
        if not a_table.machine():
            raise PreconditionError("main-term assembly needs a machine table")
        return np.asarray(a_table.values, np.complex128)
    arr = np.asarray(a_table, np.complex128)
    if arr.ndim != 1 or len(arr) < 2:
        raise PreconditionError("a_table must be a 1-indexed vector on 1..y")
    return arr


def _shift_derivative_term(
    alpha: complex,
    beta: complex,
    T: float,
    weight: np.ndarray,
    M: int = 32,
    gamma_nodes: int = 64,
) -> complex:
    """The triple-contour main term: d/dgamma at 0 of the integrated bracket.

    The bracket is represented by its manifestly analytic triple contour
    integral, so the gamma-derivative is a Cauchy circle of radius
    1/log T and no term needs special-casing at coinciding shifts.  The
    t-integral folds into exact power antiderivatives; the gamma circle
    folds into a per-node tensor; what remains is one M^3 contraction
    per modulus k carrying weight.
    """
    logT = math.log(T)
    rz = 2.5 * max(abs(alpha), abs(beta), 1.0 / logT)
    if rz >= 0.5:
        raise PreconditionError("shift magnitudes too large for contour assembly")
    rg = 1.0 / logT

    z1, w1 = _circle(0.9 * rz, M)
    z2, w2 = _circle(1.0 * rz, M)
    z3, w3 = _circle(1.1 * rz, M)
    gam, _ = _circle(rg, gamma_nodes)

    d12 = z1[:, None] - z2[None, :]
    d23 = -z2[:, None] + z3[None, :]
    grid12 = zeta_f64(1.0 + d12) * d12 * d12
    grid23 = zeta_f64(1.0 + d23) * d23 * d23
    grid13 = (z3[None, :] - z1[:, None]) ** 2
    inv_mid = 1.0 / zeta_f64(1.0 - z2)

    lo, hi = math.log(1.0 / TWO_PI), math.log(T / TWO_PI)
    e0 = (
        z1[:, None, None]
        - z2[None, :, None]
        + z3[None, None, :]
        - alpha
        - beta
    ) * 0.5
    fold = np.zeros((M, M, M), np.complex128)
    for gm in gam:
        ep = e0 - 0.5 * gm + 1.0
        safe = np.where(np.abs(ep) < 1e-8, 1.0, ep)
        ei = np.where(
            np.abs(ep) < 1e-8, hi - lo, (np.exp(ep * hi) - np.exp(ep * lo)) / safe
        )
        den = (
            (z1 - gm)[:, None, None]
            * (z2 - gm)[None, :, None]
            * (z3 - gm)[None, None, :]
        )
        fold += ei / (den * gm)
    fold /= gamma_nodes

    core = fold * grid12[:, :, None] * grid23[None, :, :] * grid13[:, None, :]
    core *= (w1 / ((z1 - alpha) * (z1 + beta)))[:, None, None]
    core *= (w2 * inv_mid / ((z2 - alpha) * (z2 + beta)))[None, :, None]
    core *= (w3 / ((z3 - alpha) * (z3 + beta)))[None, None, :]
    core *= -0.5

    y = weight.shape[0] - 1
    hv = np.arange(1, y + 1, dtype=np.float64)
    hpow = np.exp(np.log(hv)[:, None] * z2[None, :])
    hk_all = hpow.T @ weight[1:, :]

    total = 0.0 + 0.0j
    for k in range(1, y + 1):
        wk = hk_all[:, k]
        if not np.any(weight[1:, k]):
            continue
        local = None
        for p, e in FactoredInteger.from_int(k).factors:
            lp = math.log(p)
            x = np.exp(-lp * z1)
            yy = np.exp(-lp * z3)
            tensor = np.empty((M, M, M), np.complex128)
            for j in range(M):
                tensor[:, j, :] = _local_ratio_slice(
                    p, e, x, yy, complex(np.exp(-lp * (1.0 - z2[j])))
                )
            local = tensor if local is None else local * tensor
        sliced = core if local is None else core * local
        total += np.einsum("ijl,j->", sliced, wk)
    return complex(total)


def _log_weighted_term(
    alpha: complex, beta: complex, T: float, weight: np.ndarray
) -> complex:
    """The log-weighted diagonal main term over the coprime-pair weights.

    Closed-form t-integrals; the coinciding case alpha + beta = 0 takes
    the exact limit (removable singularity) instead of cancelling two
    large zeta values.
    """
    y = weight.shape[0] - 1
    idx = np.arange(1, y + 1, dtype=np.float64)
    lidx = np.log(idx)
    ab = alpha + beta
    core = weight[1:, 1:]
    if abs(ab) < 1e-12:
        # Limit of the two-term bracket as beta -> -alpha: the zeta poles
        # cancel, leaving derivative terms from the t-power *and* from the
        # h, k powers (each carries the vanishing combination alpha+beta).
        ew = np.exp(alpha * lidx)
        ewk = np.exp(-alpha * lidx)
        pair_sum = complex(ew @ core @ ewk)
        log_sum = complex((lidx * ew) @ core @ ewk + ew @ core @ (lidx * ewk))
        li0 = log_power_integral(0.0, T)
        gamma_e = 2.0 * float(mp.euler) * li0 + squared_log_integral(T)
        return pair_sum * gamma_e - log_sum * li0
    with mp.workdps(30):
        zp = complex(mp.zeta(1 + mp.mpc(ab)))
        zm = complex(mp.zeta(1 - mp.mpc(ab)))
    t1 = zp * log_power_integral(0.0, T) * complex(
        np.exp(-beta * lidx) @ core @ np.exp(-alpha * lidx)
    )
    t2 = zm * log_power_integral(-ab, T) * complex(
        np.exp(alpha * lidx) @ core @ np.exp(beta * lidx)
    )
    return t1 + t2


def mcI_mcJ_evaluate(
    params: MollifierParams | None,
    alpha: complex,
    beta: complex,
    T: float,
    a_table=None,
    M: int = 32,
    gamma_nodes: int = 64,
) -> dict:
    """Main terms of the twisted second moment for one shift pair.

    Returns ``I_main`` (the shift-derivative triple-contour term) and
    ``J_main`` (the log-weighted diagonal term).  The polynomial weights
    come from ``a_table`` (1-indexed on 1..y), or from the mollifier
    tables of ``params``, or default to the constant polynomial 1.
    """
    if T <= 10.0:
        raise PreconditionError("main-term assembly needs T > 10")
    alpha = complex(alpha)
    beta = complex(beta)
    a = _coerce_a_table(a_table, params)
    y = len(a) - 1
    if y > math.sqrt(T):
        warnings.warn(
            "polynomial support exceeds sqrt(T); main-term accuracy degrades",
            RuntimeWarning,
            stacklevel=2,
        )
    w = pair_weight_matrix(a)
    i_main = _shift_derivative_term(alpha, beta, T, w, M=M, gamma_nodes=gamma_nodes)
    j_main = _log_weighted_term(alpha, beta, T, w)
    return {"I_main": i_main, "J_main": j_main, "support": y}


def _zero_sum_rows(
    cache: ZeroCache, alpha: complex, beta: complex, a: np.ndarray, t_list
) -> list[complex]:
    gam = cache.gammas_f64()
    y = len(a) - 1
    idx = np.arange(1, y + 1, dtype=np.float64)
    coef = a[1:] / np.sqrt(idx)
    phase = np.exp(-1j * np.outer(gam, np.log(idx)))
    q_rho = phase @ coef
    q_bar = np.conj(phase) @ np.conj(coef)
    z_left = zeta_f64((0.5 + alpha) + 1j * gam)
    z_right = zeta_f64((0.5 + beta) - 1j * gam)
    csum = np.cumsum(z_left * z_right * q_rho * q_bar)
    out = []
    for t in t_list:
        n = int(np.searchsorted(gam, t, side="right"))
        out.append(complex(csum[n - 1]) if n else 0.0 + 0.0j)
    return out


def twisted_compare(
    cache: ZeroCache,
    params: MollifierParams | None,
    alpha: complex,
    beta: complex,
    T,
    a_table=None,
    M: int = 32,
    gamma_nodes: int = 64,
) -> dict:
    """Direct zero sum vs main-term prediction, per cutoff.

    The direct side sums zeta(rho + alpha) zeta(1 - rho + beta) times
    the polynomial pair over cached zeros up to each T; the predicted
    side is I(alpha, beta) + conj(I(conj beta, conj alpha)) + J.  Rows
    report both sides and the relative deviation; ``decreasing`` states
    whether the deviation shrinks along increasing T.
    """
    t_list = [float(t) for t in (T if np.iterable(T) else [T])]
    if sorted(t_list) != t_list:
        raise PreconditionError("cutoffs must be increasing")
    if t_list[-1] > cache.t_max:
        raise PreconditionError(
            f"zero cache covers t <= {cache.t_max}, need {t_list[-1]}"
        )
    alpha = complex(alpha)
    beta = complex(beta)
    a = _coerce_a_table(a_table, params)
    lhs_vals = _zero_sum_rows(cache, alpha, beta, a, t_list)

    rows = []
    for t, lhs in zip(t_list, lhs_vals):
        main = mcI_mcJ_evaluate(
            None, alpha, beta, t, a_table=a, M=M, gamma_nodes=gamma_nodes
        )
        twin = mcI_mcJ_evaluate(
            None,
            np.conj(beta),
            np.conj(alpha),
            t,
            a_table=a,
            M=M,
            gamma_nodes=gamma_nodes,
        )
        rhs = main["I_main"] + np.conj(twin["I_main"]) + main["J_main"]
        rows.append(
            {
                "T": t,
                "lhs": lhs,
                "rhs": complex(rhs),
                "I_main": main["I_main"],
                "J_main": main["J_main"],
                "deviation": abs(lhs - rhs) / abs(rhs),
            }
        )
    devs = [r["deviation"] for r in rows]
    return {
        "rows": rows,
        "decreasing": all(b < a for a, b in zip(devs, devs[1:])),
    }
