"""Dirichlet characters, Gauss sums, and additive-twist decompositions.

Characters are stored exactly: each value is a root of unity recorded as
an integer exponent over one common denominator, so conjugation,
principality, and conductor tests are integer arithmetic, and complex
values materialize only inside an mpmath working-precision block.

The two finite identities checked here rewrite an additive character
e(-m/k): first through orthogonality over all characters mod k/(m,k)
(splitting off the Moebius main term), then regrouping the non-principal
part over primitive characters of every modulus q | k with divisor
weights ``delta``.  Both hold exactly, so residuals measure only root
of-unity rounding at working precision.
"""
from __future__ import annotations

import itertools
import math

from mpmath import mp

from .arith import FactoredInteger, divisors, euler_phi, mobius_of
from .errors import IntegrityError, PreconditionError
from .zeta import ComplexHP


def _primitive_root(pe: int, phi: int) -> int:
    fact = FactoredInteger.from_int(phi).factors
    for g in range(2, pe):
        if math.gcd(g, pe) != 1:
            continue
        if all(pow(g, phi // p, pe) != 1 for p, _ in fact):
            return g
    raise IntegrityError(f"no primitive root mod {pe}")


def _component_logs(p: int, e: int) -> tuple[list[int], dict[int, tuple[int, ...]]]:
    """Cyclic orders and discrete logs for the unit group mod p^e."""
    pe = p**e
    if p == 2:
        if e == 1:
            return [], {1: ()}
        if e == 2:
            return [2], {1: (0,), 3: (1,)}
        half = 2 ** (e - 2)
        table = {}
        val = 1
        for b in range(half):
            table[val] = (0, b)
            table[pe - val] = (1, b)
            val = val * 5 % pe
        return [2, half], table
    phi = pe // p * (p - 1)
    g = _primitive_root(pe, phi)
    table = {}
    val = 1
    for x in range(phi):
        table[val] = (x,)
        val = val * g % pe
    return [phi], table


_STRUCTURE: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}


def _unit_structure(q: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(cyclic orders, flattened exponent table) for the units mod q.

    The table stores, for each residue n in 0..q-1, the concatenated
    component discrete logs packed as a single integer row offset, or -1
    for non-units.  Orders multiply to phi(q).
    """
    hit = _STRUCTURE.get(q)
    if hit is not None:
        return hit
    if q == 1:
        out: tuple = ((), ((),))
        _STRUCTURE[q] = out
        return out
    comps = []
    for p, e in FactoredInteger.from_int(q).factors:
        orders, table = _component_logs(p, e)
        comps.append((p**e, orders, table))
    orders = tuple(o for _, os, _ in comps for o in os)
    rows = []
    for n in range(q):
        if math.gcd(n, q) != 1:
            rows.append(None)
            continue
        vec: tuple[int, ...] = ()
        for pe, _, table in comps:
            vec = vec + table[n % pe]
        rows.append(vec)
    out = (orders, tuple(rows))
    _STRUCTURE[q] = out
    return out


class DirichletCharacter:
    """One character mod q, as exact exponents of a common root of unity.

    ``exponents[n]`` is t with value e(t / denominator) for units n, and
    -1 for non-units.  Instances come from :func:`characters`; equality
    and hashing follow the exponent table.
    """

    __slots__ = ("modulus", "denominator", "exponents", "_conductor")

    def __init__(self, modulus: int, denominator: int, exponents: tuple[int, ...]):
        self.modulus = modulus
        self.denominator = denominator
        self.exponents = exponents
        self._conductor: int | None = None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DirichletCharacter)
            and self.modulus == other.modulus
            and self.denominator == other.denominator
            and self.exponents == other.exponents
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self.denominator, self.exponents))

    def __repr__(self) -> str:
        return (
            f"DirichletCharacter(mod {self.modulus}, conductor {self.conductor})"
        )

    def exponent_at(self, n: int) -> int:
        """Integer t with chi(n) = e(t / denominator), or -1 off units."""
        return self.exponents[n % self.modulus]

    def value(self, n: int):
        """chi(n) as an mpmath complex at the ambient working precision."""
        t = self.exponents[n % self.modulus]
        if t < 0:
            return mp.mpc(0)
        if t == 0:
            return mp.mpc(1)
        return mp.expjpi(mp.mpf(2 * t) / self.denominator)

    def conjugate(self) -> DirichletCharacter:
        den = self.denominator
        exps = tuple(-1 if t < 0 else (den - t) % den for t in self.exponents)
        return DirichletCharacter(self.modulus, den, exps)

    @property
    def is_principal(self) -> bool:
        return all(t <= 0 for t in self.exponents)

    @property
    def conductor(self) -> int:
        """Smallest f | q on which the character is induced."""
        if self._conductor is None:
            q = self.modulus
            for f in divisors(FactoredInteger.from_int(q)):
                if all(
                    self.exponents[n % q] == 0
                    for n in range(1, q + 1)
                    if (n - 1) % f == 0 and math.gcd(n, q) == 1
                ):
                    self._conductor = f
                    break
        return self._conductor

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus


def characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q, in a fixed deterministic order."""
    if q < 1:
        raise PreconditionError("modulus must be positive")
    orders, rows = _unit_structure(q)
    lcm = 1
    for o in orders:
        lcm = lcm * o // math.gcd(lcm, o)
    out = []
    for combo in itertools.product(*(range(o) for o in orders)):
        exps = []
        for row in rows:
            if row is None:
                exps.append(-1)
                continue
            t = sum(c * x * (lcm // o) for c, x, o in zip(combo, row, orders))
            exps.append(t % lcm)
        out.append(DirichletCharacter(q, lcm, tuple(exps)))
    return out


def primitive_characters(q: int) -> list[DirichletCharacter]:
    return [chi for chi in characters(q) if chi.is_primitive]


def gauss_sum(chi: DirichletCharacter, prec: int = 30) -> ComplexHP:
    """tau(chi) = sum_a chi(a) e(a/q), each term a single exact root of unity."""
    q = chi.modulus
    den = chi.denominator
    with mp.workdps(prec + 10):
        total = mp.mpc(0)
        for a in range(1, q + 1):
            t = chi.exponents[a % q]
            if t < 0:
                continue
            total += mp.expjpi(mp.mpf(2 * (t * q + a * den)) / (den * q))
        return ComplexHP.make(total, prec)


_TAU_CACHE: dict[tuple[int, int], list] = {}


def _chars_with_tau(q: int, prec: int):
    """Characters mod q with tau(conjugate) precomputed, cached per modulus."""
    key = (q, prec)
    hit = _TAU_CACHE.get(key)
    if hit is None:
        hit = [
            (chi, gauss_sum(chi.conjugate(), prec + 5)) for chi in characters(q)
        ]
        _TAU_CACHE[key] = hit
    return hit


def _delta_weight(q: int, k: int, d: int, psi: DirichletCharacter, prec: int):
    """Divisor weight delta(q, k, d, psi) of the primitive regrouping."""
    kq = k // q
    psi_bar = psi.conjugate()
    total = mp.mpc(0)
    for e in divisors(FactoredInteger.from_int(math.gcd(d, kq))):
        mu_de = mobius_of(FactoredInteger.from_int(d // e))
        mu_keq = mobius_of(FactoredInteger.from_int(kq // e))
        if mu_de == 0 or mu_keq == 0:
            continue
        phi_ke = euler_phi(FactoredInteger.from_int(k // e))
        term = psi_bar.value(-(kq // e)) * psi.value(d // e)
        total += term * mp.mpf(mu_de * mu_keq) / phi_ke
    return total


def character_decomposition_check(m: int, k: int, prec: int = 30) -> dict:
    """Residuals of the two additive-character decompositions.

    Form A expands e(-m/k) through orthogonality over characters mod
    k/(m,k), with the principal character contributing mu/phi.  Form B
    rewrites the non-principal part over primitive characters of moduli
    q | k with the divisor weights ``delta``.  Both identities are exact;
    the returned residuals are absolute differences at ``prec`` digits.
    """
    if m < 1 or k < 1:
        raise PreconditionError("need positive m, k")
    g = math.gcd(m, k)
    kp = k // g
    m_red = m // g
    with mp.workdps(prec + 10):
        additive = mp.expjpi(mp.mpf(-2 * m) / k)
        kp_f = FactoredInteger.from_int(kp)
        phi_kp = euler_phi(kp_f)
        main = mp.mpf(mobius_of(kp_f)) / phi_kp

        s_char = mp.mpc(0)
        for chi, tau_bar in _chars_with_tau(kp, prec):
            if chi.is_principal:
                continue
            s_char += tau_bar.to_mpc() * chi.value(-m_red)
        s_char /= phi_kp
        residual_a = abs(additive - (main + s_char))

        s_prim = mp.mpc(0)
        for q in divisors(FactoredInteger.from_int(k)):
            if q == 1:
                continue
            for psi, tau_bar in _chars_with_tau(q, prec):
                if not psi.is_primitive:
                    continue
                inner = mp.mpc(0)
                for d in divisors(FactoredInteger.from_int(g)):
                    val = psi.value(m // d)
                    if val == 0:
                        continue
                    inner += val * _delta_weight(q, k, d, psi, prec)
                s_prim += tau_bar.to_mpc() * inner
        residual_b = abs(s_char - s_prim)

        return {
            "additive_residual": float(residual_a),
            "primitive_residual": float(residual_b),
            "main_term": main,
            "nonprincipal": s_char,
        }
