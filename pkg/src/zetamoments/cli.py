"""Command-line interface: configuration, subcommands, exit codes.

Commands
  zeros      scan (or extend) a certified zero cache and write it to disk
  moments    full moment comparison for one mollifier configuration
  constants  leading-order constants with error estimates
  verify     self-check suites over the identity layer
  twisted    twisted-second-moment comparison against the zero sum

Configuration comes from an optional JSON file (``--config``) merged with
command-line flags; flags win.  Unknown keys are rejected.  Every report
echoes the effective configuration.  Exit codes: 0 success, 2 configuration
error, 3 precondition/capacity failure, 4 cache-integrity failure,
5 verification failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np
from mpmath import mp

from . import backend, reports
from .arith import CoefficientTable, heath_brown_mu, mobius_table
from .characters import character_decomposition_check, gauss_sum, primitive_characters
from .constants import beta_closed_a1, euler_A0, gamma_closed_a1b1, polytope_mc
from .errors import (
    ConfigError,
    IntegrityError,
    PreconditionError,
    VerificationError,
)
from .moments import moment_report
from .mollifier import (
    MollifierParams,
    build_tables,
    default_taper_exponent,
    mellin_psi_check,
)
from .recipe import coeff_tables_c_b, verify_euler_identity, verify_series_factorization
from .twisted import contour_bracket_check, tilde_Z_check, twisted_compare
from .zeros import ZeroCache, build_cache, cache_io, count_exact, scan_zeros

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3
EXIT_INTEGRITY = 4
EXIT_VERIFICATION = 5

_SUITES = (
    "euler-identity",
    "factorization",
    "heath-brown",
    "characters",
    "contour",
    "mellin",
    "tilde-z",
)


@dataclass
class RunConfig:
    """Validated effective configuration for one command invocation."""

    command: str
    a: int = 1
    b: int = 1
    B: int | None = None
    theta: float = 0.4
    T: float = 1000.0
    precision: int = 30
    zeros: str | None = None
    out: str | None = None
    k_list: tuple[float, ...] | None = None
    suite: str | None = None
    kmax: int = 300
    mmax: int = 40
    nmax: int = 10_000
    n_trunc: int = 100_000
    t_max: float = 100.0
    t_list: tuple[float, ...] | None = None
    alpha: float | None = None
    beta: float | None = None
    samples: int = 200_000
    seed: int = 1
    prime_cutoff: int = 1_000_000
    mollified: bool = False
    json_out: str | None = None
    csv_out: str | None = None
    threads: int | None = None

    @classmethod
    def gather(cls, command: str, config_path: str | None, overrides: dict) -> "RunConfig":
        """Merge config-file values with flag overrides; reject unknown keys."""
        known = {f.name for f in fields(cls)}
        merged: dict = {}
        if config_path:
            try:
                raw = json.loads(Path(config_path).read_text(encoding="utf-8"))
            except OSError as exc:
                raise ConfigError(f"cannot read config file: {exc}") from exc
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config file is not valid JSON: {exc}") from exc
            if not isinstance(raw, dict):
                raise ConfigError("config file must hold a JSON object")
            unknown = sorted(set(raw) - known)
            if unknown:
                raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
            raw.pop("command", None)
            merged.update(raw)
        merged.update({k: v for k, v in overrides.items() if v is not None})
        merged["command"] = command
        for key in ("k_list", "t_list"):
            if merged.get(key) is not None:
                merged[key] = tuple(float(v) for v in merged[key])
        try:
            cfg = cls(**merged)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not isinstance(self.a, int) or not isinstance(self.b, int):
            raise ConfigError("a and b must be integers")
        if self.precision < 10 or self.precision > 200:
            raise ConfigError("precision must lie in [10, 200]")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if self.samples < 1:
            raise ConfigError("samples must be positive")
        if self.suite is not None and self.suite not in _SUITES:
            raise ConfigError(
                f"unknown suite {self.suite!r}; choose one of {', '.join(_SUITES)}"
            )
        if self.threads is not None and self.threads < 1:
            raise ConfigError("threads must be positive")
        for key in ("kmax", "mmax", "nmax", "n_trunc"):
            if getattr(self, key) < 1:
                raise ConfigError(f"{key} must be positive")
        needs_params = self.command in ("moments", "twisted") and (
            self.command == "moments" or self.mollified
        )
        if needs_params:
            try:
                self.mollifier_params()
            except PreconditionError as exc:
                raise ConfigError(f"mollifier parameters invalid: {exc}") from exc

    def mollifier_params(self) -> MollifierParams:
        return MollifierParams(a=self.a, b=self.b, theta=self.theta, T=self.T, B=self.B)

    def effective(self) -> dict:
        return dataclasses.asdict(self)


def _provenance(cfg: RunConfig, cache_path: str | None = None) -> dict:
    return {
        "seed": cfg.seed,
        "precision": cfg.precision,
        "cache_hash": reports.file_sha256(cache_path) if cache_path else None,
    }


@dataclass
class CommandResult:
    payload: dict
    csv_columns: tuple[str, ...]
    csv_rows: list
    failure: str | None = None


def _read_cache(cfg: RunConfig) -> ZeroCache:
    if not cfg.zeros:
        raise ConfigError(f"command {cfg.command!r} requires --zeros CACHE_PATH")
    try:
        return cache_io(cfg.zeros, "read")
    except OSError as exc:
        raise ConfigError(f"cannot read zero cache: {exc}") from exc


def cmd_zeros(cfg: RunConfig) -> CommandResult:
    base = None
    if cfg.zeros and Path(cfg.zeros).exists():
        base = cache_io(cfg.zeros, "read")
    if base is not None and base.t_max >= cfg.t_max:
        cache = base
    elif base is not None:
        extra = scan_zeros(base.t_max, cfg.t_max, prec=min(base.prec, cfg.precision))
        cache = ZeroCache(
            records=base.records + tuple(extra),
            t_max=cfg.t_max,
            prec=min(base.prec, cfg.precision),
        ).certify()
    else:
        cache = build_cache(cfg.t_max, prec=cfg.precision)
    out_path = cfg.out or cfg.zeros
    if out_path:
        cache_io(out_path, "write", cache)
    gammas = cache.gammas_f64()
    results = {
        "n_zeros": len(cache),
        "t_max": cache.t_max,
        "prec": cache.prec,
        "first_zero": float(gammas[0]) if len(cache) else None,
        "last_zero": float(gammas[-1]) if len(cache) else None,
        "out_path": out_path,
        "extended_from": base.t_max if base is not None and cache is not base else None,
    }
    residuals = {"count_mismatch": count_exact(cache.t_max) - len(cache)}
    payload = reports.build_payload(
        cfg.effective(), results, residuals, _provenance(cfg, out_path)
    )
    rows = [
        ("n_zeros", len(cache)),
        ("count_exact", count_exact(cache.t_max)),
        ("first_zero", results["first_zero"]),
        ("last_zero", results["last_zero"]),
    ]
    return CommandResult(payload, ("check", "value"), rows)


def cmd_moments(cfg: RunConfig) -> CommandResult:
    params = cfg.mollifier_params()
    cache = _read_cache(cfg)
    if cache.t_max + 1e-9 < params.T:
        raise IntegrityError(
            f"zero cache covers gamma <= {cache.t_max}, but T = {params.T}; "
            "extend the cache with the zeros command"
        )
    rep = moment_report(params, cache, k_list=list(cfg.k_list) if cfg.k_list else None)
    slack = {
        str(k): (v - rep.J_holder_lower) / v
        for k, v in rep.J_direct.items()
        if abs(k - params.k) < 1e-12
    }
    residuals = {"deviations": rep.deviations, "holder_rel_slack": slack}
    payload = reports.build_payload(
        cfg.effective(), rep.as_dict(), residuals, _provenance(cfg, cfg.zeros)
    )
    columns = ("k", "J_direct", "J_holder_lower", "S1_direct", "S2_direct", "T")
    rows = [tuple(r[c] for c in columns) for r in rep.csv_rows()]
    return CommandResult(payload, columns, rows)


def cmd_constants(cfg: RunConfig) -> CommandResult:
    a, b = cfg.a, cfg.b
    big_b = cfg.B if cfg.B is not None else default_taper_exponent(a, b)
    a0 = euler_A0(a, b, cfg.prime_cutoff, prec=cfg.precision)
    beta_mc = polytope_mc(a, b, big_b, "beta", samples=cfg.samples, seed=cfg.seed)
    gamma_mc = polytope_mc(a, b, big_b, "gamma", samples=cfg.samples, seed=cfg.seed + 1)
    results = {
        "a": a,
        "b": b,
        "B": big_b,
        "A0": {"value": a0.value, "tail_bound": a0.tail_bound},
        "beta_mc": {"value": beta_mc.mean, "stderr": beta_mc.std_error},
        "gamma_mc": {"value": gamma_mc.mean, "stderr": gamma_mc.std_error},
    }
    residuals: dict = {}
    rows = [
        ("A0", a0.value, a0.tail_bound),
        ("beta_mc", beta_mc.mean, beta_mc.std_error),
        ("gamma_mc", gamma_mc.mean, gamma_mc.std_error),
    ]
    if a == 1:
        bc = beta_closed_a1(b, big_b)
        results["beta_closed"] = bc
        residuals["beta_mc_vs_closed_se"] = abs(beta_mc.mean - bc) / beta_mc.std_error
        rows.append(("beta_closed", bc, 0.0))
    if a == 1 and b == 1:
        gc = gamma_closed_a1b1(big_b)
        results["gamma_closed"] = gc
        residuals["gamma_mc_vs_closed_se"] = abs(gamma_mc.mean - gc) / gamma_mc.std_error
        rows.append(("gamma_closed", gc, 0.0))
    if a == b:
        six_pi2 = 6.0 / math.pi**2
        residuals["A0_vs_6_over_pi2"] = abs(a0.value - six_pi2)
        rows.append(("six_over_pi_squared", six_pi2, 0.0))
    payload = reports.build_payload(
        cfg.effective(), results, residuals, _provenance(cfg)
    )
    return CommandResult(payload, ("check", "value", "error"), rows)


def _random_shifts(rng: np.random.Generator, scale: float) -> tuple[complex, complex, complex]:
    re, im = rng.uniform(-scale, scale, 3), rng.uniform(-scale, scale, 3)
    return tuple(complex(x, y) for x, y in zip(re, im))


def _suite_euler_identity(cfg: RunConfig):
    rng = np.random.default_rng(cfg.seed)
    tol = 1e-20
    worst, worst_at = 0.0, None
    triples = [_random_shifts(rng, 0.035) for _ in range(3)]
    rows = []
    for i, shifts in enumerate(triples):
        peak = 0.0
        for kp in range(1, cfg.kmax + 1):
            r = verify_euler_identity(kp, shifts, prec=cfg.precision)
            if r > peak:
                peak = r
            if r > worst:
                worst, worst_at = r, (i, kp)
        rows.append((f"triple_{i}_max_residual", peak, tol, peak < tol))
    results = {
        "kmax": cfg.kmax,
        "n_triples": len(triples),
        "worst_residual": worst,
        "worst_at": {"triple": worst_at[0], "kprime": worst_at[1]},
        "shifts": [[complex(s) for s in t] for t in triples],
    }
    return results, {"worst_residual": worst}, rows, worst < tol


def _suite_factorization(cfg: RunConfig):
    rng = np.random.default_rng(cfg.seed)
    shifts = _random_shifts(rng, 0.035)
    ks = (1, 2, 4, 6, 12)
    dmax = max(ks)
    unit = np.zeros(2, np.complex128)
    unit[1] = 1.0
    c_table = coeff_tables_c_b(
        shifts, cfg.n_trunc * dmax, CoefficientTable(unit, label="1")
    )["c"]
    worst_ratio, rows = 0.0, []
    for s in (2.0, 3.0):
        peak = 0.0
        for k in ks:
            for d in ks:
                out = verify_series_factorization(
                    s, k, d, shifts, N_trunc=cfg.n_trunc, c_table=c_table
                )
                ratio = out["residual"] / out["tail_bound"]
                peak = max(peak, ratio)
                worst_ratio = max(worst_ratio, ratio)
        rows.append((f"s={s}_max_residual_over_tail", peak, 10.0, peak <= 10.0))
    results = {
        "n_trunc": cfg.n_trunc,
        "k_d_grid": list(ks),
        "worst_residual_over_tail": worst_ratio,
        "shifts": [complex(s) for s in shifts],
    }
    return results, {"worst_residual_over_tail": worst_ratio}, rows, worst_ratio <= 10.0


def _suite_heath_brown(cfg: RunConfig):
    mu = mobius_table(cfg.nmax)
    rows, mismatches = [], 0
    for j in (2, 3):
        bad = sum(
            1
            for n in range(1, cfg.nmax + 1)
            if heath_brown_mu(n, j, float(cfg.nmax)) != int(mu[n])
        )
        mismatches += bad
        rows.append((f"J={j}_mismatches", bad, 0, bad == 0))
    results = {"nmax": cfg.nmax, "J_values": [2, 3], "mismatches": mismatches}
    return results, {"mismatches": mismatches}, rows, mismatches == 0


def _suite_characters(cfg: RunConfig):
    tol = 1e-20
    worst_add = worst_prim = 0.0
    for k in range(1, cfg.mmax + 1):
        for m in range(1, cfg.mmax + 1):
            out = character_decomposition_check(m, k, prec=cfg.precision)
            worst_add = max(worst_add, out["additive_residual"])
            worst_prim = max(worst_prim, out["primitive_residual"])
    worst_gauss = 0.0
    with mp.workdps(cfg.precision + 10):
        for q in range(1, cfg.mmax + 1):
            for psi in primitive_characters(q):
                tau = gauss_sum(psi, prec=cfg.precision).to_mpc()
                err = abs(mp.sqrt(tau.real**2 + tau.imag**2) - mp.sqrt(q))
                worst_gauss = max(worst_gauss, float(err))
    rows = [
        ("additive_identity_max_residual", worst_add, tol, worst_add < tol),
        ("primitive_form_max_residual", worst_prim, tol, worst_prim < tol),
        ("gauss_modulus_max_residual", worst_gauss, tol, worst_gauss < tol),
    ]
    ok = max(worst_add, worst_prim, worst_gauss) < tol
    results = {
        "mmax": cfg.mmax,
        "additive_max": worst_add,
        "primitive_max": worst_prim,
        "gauss_modulus_max": worst_gauss,
    }
    residuals = {"worst": max(worst_add, worst_prim, worst_gauss)}
    return results, residuals, rows, ok


def _suite_contour(cfg: RunConfig):
    checks = [
        ("order2_h1_k1", 2, 100.0, (0.004, 0.004), 1, 1, 1e-10),
        ("order2_h3_k2", 2, 100.0, (0.004, 0.004), 3, 2, 1e-10),
        ("order3_h2_k5", 3, 50.0, (0.004, 0.003, -0.002), 2, 5, 1e-8),
    ]
    rows, results, ok = [], {}, True
    for name, order, t, shifts, h, k, tol in checks:
        r = contour_bracket_check(
            order, t, shifts, h=h, k=k, r=0.02, M=256, prec=cfg.precision
        )
        results[name] = r
        rows.append((name, r, tol, r < tol))
        ok = ok and r < tol
    return results, {"worst": max(results.values())}, rows, ok


def _suite_mellin(cfg: RunConfig):
    tol = 1e-8
    worst, rows, ok = 0.0, [], True
    for big_b in (1, 2):
        params = MollifierParams(a=1, b=1, theta=0.4, T=1.0e6, B=big_b)
        peak = 0.0
        for n in (1, 2, 3, 5, 8, 13, 15):
            peak = max(peak, mellin_psi_check(n, params, nodes=20_000, height=1.0e5))
        worst = max(worst, peak)
        rows.append((f"B={big_b}_max_residual", peak, tol, peak < tol))
        ok = ok and peak < tol
    results = {"B_values": [1, 2], "worst_residual": worst}
    return results, {"worst_residual": worst}, rows, ok


def _suite_tilde_z(cfg: RunConfig):
    tol = 1e-3
    rng = np.random.default_rng(cfg.seed)
    while True:
        z1, z2, z3 = _random_shifts(rng, 0.0035)
        if min(abs(z1 + z2), abs(z2 + z3)) > 2e-4:
            break
    pairs = [
        (h, k)
        for h in range(1, 11)
        for k in range(h, 11)
        if math.gcd(h, k) == 1
    ]
    t_values = (500.0, 1000.0, 2000.0)
    worst_by_t, rows = [], []
    for t in t_values:
        worst = 0.0
        for h, k in pairs:
            out = tilde_Z_check(z1, z2, z3, h, k, t, prec=cfg.precision)
            worst = max(worst, out["deviation"])
        worst_by_t.append(worst)
        rows.append((f"T={t:g}_max_deviation", worst, tol, worst < tol))
    decreasing = all(x > y for x, y in zip(worst_by_t, worst_by_t[1:]))
    rows.append(("decreasing_in_T", float(decreasing), 1.0, decreasing))
    ok = worst_by_t[1] < tol and decreasing
    results = {
        "shifts": [z1, z2, z3],
        "pairs_checked": len(pairs),
        "T_values": list(t_values),
        "max_deviation_by_T": worst_by_t,
        "decreasing": decreasing,
    }
    return results, {"worst_deviation": max(worst_by_t)}, rows, ok


_SUITE_FNS = {
    "euler-identity": _suite_euler_identity,
    "factorization": _suite_factorization,
    "heath-brown": _suite_heath_brown,
    "characters": _suite_characters,
    "contour": _suite_contour,
    "mellin": _suite_mellin,
    "tilde-z": _suite_tilde_z,
}


def cmd_verify(cfg: RunConfig) -> CommandResult:
    if cfg.suite is None:
        raise ConfigError("verify requires --suite NAME")
    results, residuals, rows, ok = _SUITE_FNS[cfg.suite](cfg)
    results["suite"] = cfg.suite
    results["pass"] = ok
    payload = reports.build_payload(cfg.effective(), results, residuals, _provenance(cfg))
    failure = None if ok else f"suite {cfg.suite!r} exceeded tolerance"
    return CommandResult(payload, ("check", "value", "tolerance", "ok"), rows, failure)


def cmd_twisted(cfg: RunConfig) -> CommandResult:
    cache = _read_cache(cfg)
    t_list = cfg.t_list or (500.0, 1000.0, 2000.0)
    over = [t for t in t_list if t > cache.t_max + 1e-9]
    if over:
        raise IntegrityError(
            f"zero cache covers gamma <= {cache.t_max}, cannot evaluate at T in {over}"
        )
    params = cfg.mollifier_params() if cfg.mollified else None
    a_table = build_tables(params)["Q"] if params is not None else None
    rows_out, results_rows, deviations = [], [], []
    for t in t_list:
        alpha = cfg.alpha if cfg.alpha is not None else 1.0 / math.log(t)
        beta = cfg.beta if cfg.beta is not None else 1.0 / math.log(t)
        out = twisted_compare(cache, None, alpha, beta, [t], a_table=a_table)
        row = out["rows"][0]
        results_rows.append(row)
        deviations.append(row["deviation"])
        rows_out.append(
            (
                t,
                row["lhs"].real,
                row["lhs"].imag,
                row["rhs"].real,
                row["rhs"].imag,
                row["deviation"],
            )
        )
    results = {
        "rows": results_rows,
        "mollified": cfg.mollified,
        "alpha_mode": "fixed" if cfg.alpha is not None else "1/log T",
        "decreasing": all(x > y for x, y in zip(deviations, deviations[1:])),
    }
    payload = reports.build_payload(
        cfg.effective(), results, {"deviations": deviations}, _provenance(cfg, cfg.zeros)
    )
    columns = ("T", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "deviation")
    return CommandResult(payload, columns, rows_out)


COMMANDS = {
    "zeros": cmd_zeros,
    "moments": cmd_moments,
    "constants": cmd_constants,
    "verify": cmd_verify,
    "twisted": cmd_twisted,
}


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated floats: {text!r}"
        ) from exc


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override its keys")
    common.add_argument("--prec", dest="precision", type=int, help="working digits")
    common.add_argument("--seed", type=int, help="RNG seed for randomized checks")
    common.add_argument("--threads", type=int, help="cap for parallel sections")
    common.add_argument("--json-out", help="write the JSON report here")
    common.add_argument("--csv-out", help="write the CSV report here")

    p = argparse.ArgumentParser(
        prog="zetamoments",
        description="Moment sums over zeta zeros: caches, constants, identity checks.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    z = sub.add_parser("zeros", parents=[common], help="scan or extend a zero cache")
    z.add_argument("--t-max", type=float, help="certify zeros with gamma <= t-max")
    z.add_argument("--zeros", help="existing cache to extend")
    z.add_argument("--out", help="cache file to write")

    m = sub.add_parser("moments", parents=[common], help="moment comparison report")
    for flag, typ in (("--a", int), ("--b", int), ("--B", int)):
        m.add_argument(flag, type=typ)
    m.add_argument("--theta", type=float)
    m.add_argument("--T", type=float)
    m.add_argument("--zeros", help="certified zero cache path (required)")
    m.add_argument("--k-list", type=_float_list, help="extra exponents, e.g. 1,2")

    c = sub.add_parser("constants", parents=[common], help="leading-order constants")
    for flag, typ in (("--a", int), ("--b", int), ("--B", int)):
        c.add_argument(flag, type=typ)
    c.add_argument("--samples", type=int, help="Monte Carlo sample count")
    c.add_argument("--prime-cutoff", type=int, help="Euler product cutoff")

    v = sub.add_parser("verify", parents=[common], help="run a self-check suite")
    v.add_argument("--suite", choices=_SUITES, help="which suite to run")
    v.add_argument("--kmax", type=int, help="modulus sweep bound (euler-identity)")
    v.add_argument("--mmax", type=int, help="character sweep bound")
    v.add_argument("--nmax", type=int, help="Moebius reconstruction bound")
    v.add_argument("--n-trunc", type=int, help="Dirichlet-series truncation length")

    t = sub.add_parser("twisted", parents=[common], help="twisted moment comparison")
    for flag, typ in (("--a", int), ("--b", int), ("--B", int)):
        t.add_argument(flag, type=typ)
    t.add_argument("--theta", type=float)
    t.add_argument("--T", type=float)
    t.add_argument("--zeros", help="certified zero cache path (required)")
    t.add_argument("--t-list", type=_float_list, help="cutoffs, e.g. 500,1000,2000")
    t.add_argument("--alpha", type=float, help="fixed shift (default 1/log T)")
    t.add_argument("--beta", type=float, help="fixed shift (default 1/log T)")
    t.add_argument(
        "--mollified",
        action="store_const",
        const=True,
        default=None,
        help="twist by the tapered polynomial instead of Q = 1",
    )
    return p


def run(cfg: RunConfig) -> int:
    """Execute one configured command, emit reports, return the exit code."""
    if cfg.threads is not None:
        backend.set_threads(cfg.threads)
    result = COMMANDS[cfg.command](cfg)
    document = reports.render_document(reports.build_document(result.payload))
    if cfg.json_out:
        Path(cfg.json_out).write_text(document, encoding="utf-8")
    if cfg.csv_out:
        reports.write_csv(cfg.csv_out, result.csv_columns, result.csv_rows)
    sys.stdout.write(document)
    if result.failure:
        print(f"verification failure: {result.failure}", file=sys.stderr)
        return EXIT_VERIFICATION
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    fieldnames = {f.name for f in fields(RunConfig)}
    overrides = {k: v for k, v in vars(args).items() if k in fieldnames}
    config_path = getattr(args, "config", None)
    try:
        cfg = RunConfig.gather(args.command, config_path, overrides)
        return run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PreconditionError as exc:
        print(f"precondition failure: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except IntegrityError as exc:
        print(f"integrity failure: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
