"""Smoothed mollifier polynomials.

The taper psi(n) = (log(x/n)/log x)^B on n <= x multiplies the
generalized divisor coefficients to give the mollifier's Dirichlet
polynomial P; its powers R = P^a and Q = P^(a+b) are built by truncated
Dirichlet convolution.  ``mellin_psi_check`` verifies the taper's contour
representation with a Filon-Legendre rule (plain quadrature cannot reach
1e-8 on the oscillatory line within the node budget).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .arith import CoefficientTable, restricted_power_coeffs, tau_alpha_table
from .errors import PreconditionError
from .zeta import ComplexHP


def default_taper_exponent(a: int, b: int) -> int:
    """The proof-driven smoothing exponent ceil(14 + 12 a/b).

    Numerical asymptotic comparisons normally override this with B = 1 or
    2: at desk-scale x the huge exponent pushes the leading term invisibly
    far out, so the sharp constants only emerge with a mild taper.
    """
    return math.ceil(14 + 12 * a / b)


@dataclass(frozen=True)
class MollifierParams:
    """Shape of the mollifier: exponents a, b (k = a/b), taper B, length
    x = T^(theta/(a+b)), full support y = x^(a+b)."""

    a: int
    b: int
    theta: float
    T: float
    B: int | None = None

    def __post_init__(self):
        if self.a < 1 or self.b < 1 or math.gcd(self.a, self.b) != 1:
            raise PreconditionError("need coprime positive a, b")
        if not 0.0 < self.theta < 0.5:
            raise PreconditionError("theta must lie in (0, 1/2)")
        if self.T <= 1.0:
            raise PreconditionError("T must exceed 1")
        if self.B is None:
            object.__setattr__(self, "B", default_taper_exponent(self.a, self.b))
        if self.B < 1:
            raise PreconditionError("taper exponent B must be >= 1")
        if self.y > math.sqrt(self.T) * (1 + 1e-12):
            raise PreconditionError("mollifier support exceeds T^(1/2)")

    @property
    def k(self) -> float:
        return self.a / self.b

    @property
    def x(self) -> float:
        return self.T ** (self.theta / (self.a + self.b))

    @property
    def y(self) -> float:
        return self.T**self.theta


def psi_weight(n: int, params: MollifierParams) -> float:
    """Taper value at n: (log(x/n)/log x)^B for n <= x, else 0."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    x = params.x
    if n >= x:
        return 0.0
    return (math.log(x / n) / math.log(x)) ** params.B


def psi_values(params: MollifierParams, nmax: int) -> np.ndarray:
    """psi on 1..nmax as float64 (index 0 unused)."""
    x = params.x
    logx = math.log(x)
    n = np.arange(nmax + 1, dtype=np.float64)
    n[0] = 1.0
    vals = np.where(n < x, ((logx - np.log(n)) / logx), 0.0)
    vals = np.where(vals > 0.0, vals, 0.0) ** params.B
    vals[0] = 0.0
    return vals


def _legendre_moments(omega_h: float, kmax: int) -> np.ndarray:
    """integral of P_k(u) e^{i w u} over [-1,1]: 2 i^k j_k(w), with odd/even
    parity handling negative w."""
    from scipy.special import spherical_jn

    k = np.arange(kmax + 1)
    j = spherical_jn(k, abs(omega_h))
    moments = 2.0 * (1j**k) * j
    if omega_h < 0:
        moments = moments * (-1.0) ** k
    return moments


def mellin_psi_check(
    n: int,
    params: MollifierParams,
    c: float | None = None,
    nodes: int = 10_000,
    height: float = 1000.0,
) -> float:
    """|truncated contour integral - psi(n)| for the taper's Mellin form.

    The representation is (B!/(2 pi i (log x)^B)) times the integral of
    (x/n)^s s^-(B+1) over the vertical line Re s = c, |Im s| <= height.
    The default contour c = (B+1)/log x passes through the saddle, keeping
    the integrand O(1) so float64 cancellation stays harmless.  Panels
    grow geometrically from the s^-(B+1) spike; on each panel the smooth
    factor is expanded in Legendre polynomials and the oscillation
    e^{i omega v} integrates exactly against spherical Bessel moments.
    """
    if n < 1:
        raise PreconditionError("n must be >= 1")
    big_b = params.B
    logx = math.log(params.x)
    omega = logx - math.log(n)  # log(x/n), negative beyond the support
    if c is None:
        c = (big_b + 1) / logx
    if c <= 0:
        raise PreconditionError("contour abscissa must be positive")
    # averaging the truncated integral over endpoints half an oscillation
    # apart cancels the leading boundary term g(H) e^{i omega H}/(i omega):
    # the sliver [H - pi/|omega|, H] enters with weight 1/2
    sliver = math.pi / abs(omega) if omega != 0.0 else math.inf
    h_main = height - sliver if sliver < height / 4.0 else height
    edges = [0.0, c / 2.0]
    while edges[-1] < h_main:
        edges.append(min(edges[-1] * 2.0, h_main))
    panels = [(lo, hi, 1.0) for lo, hi in zip(edges[:-1], edges[1:])]
    if h_main < height:
        panels.append((h_main, height, 0.5))
    nq = max(8, min(32, nodes // (2 * len(panels))))
    kdeg = min(nq - 2, 20)
    u, w = np.polynomial.legendre.leggauss(nq)
    # P_k(u_i) matrix for the projection
    pk = np.empty((kdeg + 1, nq))
    for k in range(kdeg + 1):
        coefs = np.zeros(k + 1)
        coefs[k] = 1.0
        pk[k] = np.polynomial.legendre.legval(u, coefs)
    proj = pk * w[None, :] * ((2.0 * np.arange(kdeg + 1) + 1.0) / 2.0)[:, None]
    total = 0.0 + 0.0j
    for lo, hi, wt in panels:
        h = 0.5 * (hi - lo)
        m = 0.5 * (hi + lo)
        v = m + h * u
        g = (c + 1j * v) ** (-(big_b + 1))
        coeffs = proj @ g
        moments = _legendre_moments(omega * h, kdeg)
        total += wt * h * np.exp(1j * omega * m) * (coeffs @ moments)
    # fold in the prefactor and the (x/n)^c magnitude; the v<0 half of the
    # line is the conjugate of the v>0 half
    value = (
        math.factorial(big_b)
        / (math.pi * logx**big_b)
        * math.exp(omega * c)
        * total.real
    )
    return abs(value - psi_weight(n, params))


def build_tables(
    params: MollifierParams,
    prec: int | None = None,
    nmax: int | None = None,
    force_psi_one: bool = False,
    include_q: bool = True,
) -> dict[str, CoefficientTable]:
    """Coefficient tables of P (on 1..x), R = P^a (on 1..x^a), Q = P^(a+b).

    P(n) = tau_{-1/b}(n) psi(n); the powers come from iterated truncated
    convolution.  ``nmax`` truncates R and Q below their full supports
    (callers see the truncation explicitly in the table lengths).
    ``force_psi_one`` is a test hook replacing the taper by 1;
    ``include_q=False`` skips the y-length Q table, whose support x^(a+b)
    can dwarf the x^a the quadratic sums need.
    """
    x_int = int(params.x)
    if x_int < 1:
        raise PreconditionError("mollifier support is empty (x < 1)")
    alpha = -1.0 / params.b if prec is None else mp.mpf(-1) / params.b
    tau = tau_alpha_table(alpha, x_int, prec=prec)
    if prec is None:
        psi = psi_values(params, x_int)
        if force_psi_one:
            psi = np.ones_like(psi)
            psi[0] = 0.0
        pvals = tau.values * psi
    else:
        pvals = np.empty(x_int + 1, object)
        pvals[0] = mp.mpf(0)
        with mp.workdps(prec):
            logx = mp.log(params.x)
            for n in range(1, x_int + 1):
                if force_psi_one:
                    pvals[n] = tau.values[n]
                else:
                    pvals[n] = tau.values[n] * ((logx - mp.log(n)) / logx) ** params.B
    p_table = CoefficientTable(pvals, label=f"P[a={params.a},b={params.b}]", prec=prec)
    r_len = x_int**params.a if nmax is None else min(nmax, x_int**params.a)
    q_len = int(params.y) if nmax is None else min(nmax, int(params.y))
    r_table = restricted_power_coeffs(p_table, params.a, r_len)
    out = {"P": p_table, "R": r_table}
    if include_q:
        out["Q"] = restricted_power_coeffs(p_table, params.a + params.b, q_len)
    return out


def eval_poly(table: CoefficientTable, s) -> ComplexHP:
    """The Dirichlet polynomial sum_n table(n) n^-s at a complex point.

    Machine tables: vectorized powers, chunked pairwise partials combined
    with Neumaier compensation in fixed ascending order.  High-precision
    tables: mpmath fsum.  Real tables satisfy eval(conj s) = conj eval(s).
    """
    if isinstance(s, ComplexHP):
        s_prec = s.prec
        s_val = s.to_mpc()
    else:
        s_prec = None
        s_val = mp.mpc(s)
    if table.prec is not None:
        prec = table.prec if s_prec is None else min(table.prec, s_prec)
        with mp.workdps(prec + 5):
            terms = [
                table.values[n] * mp.power(n, -s_val)
                for n in range(1, table.length + 1)
                if table.values[n]
            ]
            val = mp.fsum(terms, absolute=False) if terms else mp.mpc(0)
        return ComplexHP.make(val, prec)
    sc = complex(s_val)
    n = np.arange(1, table.length + 1, dtype=np.float64)
    terms = table.values[1:] * np.exp(-sc * np.log(n))
    chunk = 4096
    partials = [np.sum(terms[i: i + chunk]) for i in range(0, len(terms), chunk)]
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for p in partials:  # Neumaier combine, fixed order
        t = total + p
        if abs(total.real) + abs(total.imag) >= abs(p.real) + abs(p.imag):
            comp += (total - t) + p
        else:
            comp += (p - t) + total
        total = t
    prec = 15 if s_prec is None else min(15, s_prec)
    return ComplexHP.make(complex(total + comp), max(prec, 15))
