"""Micro-benchmarks for the accelerated kernels: numba vs pure numpy.

Run as ``python -m zetamoments.bench``.  Each hot kernel ships in two
functionally identical variants (see ``backend``); this times both in the
same process and prints the ratio.  With ``ZETAMOMENTS_NO_NUMBA=1`` the
jitted variants degrade to interpreted loops, so only the numpy column is
timed and the comparison is skipped.
"""

from __future__ import annotations

import timeit

import numpy as np

from . import kernels
from .backend import USE_NUMBA


def _median_ms(fn, repeats: int = 5) -> float:
    fn()  # warm-up (JIT compilation, cache effects)
    times = timeit.repeat(fn, number=1, repeat=repeats)
    return 1000.0 * sorted(times)[len(times) // 2]


def _cases(n: int = 200_000):
    rng = np.random.default_rng(0)
    f = rng.standard_normal(n + 1)
    g = rng.standard_normal(n + 1)
    fc = f + 1j * g
    spf = kernels.spf_sieve_raw(n)
    primes = kernels.primes_from_spf(spf)
    w = np.zeros(n + 1)
    w[1] = 1.0
    for p in primes[:50]:
        w[p] = -0.5
    ts = np.linspace(50.0, 5000.0, 20_000)
    return [
        ("convolve_f64", ("_convolve_f64_nb", "_convolve_f64_np"), (f, g, n)),
        ("convolve_c128", ("_convolve_c128_nb", "_convolve_c128_np"), (fc, fc, n)),
        (
            "mult_fill_w_f64",
            ("_mult_fill_w_f64_nb", "_mult_fill_w_f64_np"),
            (spf, w),
        ),
        (
            "squarefree_block",
            ("_squarefree_block_nb", "_squarefree_block_np"),
            (1, n, primes),
        ),
        (
            "polytope_mc_chunk",
            ("_polytope_mc_nb", "_polytope_mc_np"),
            (np.uint64(12345), 0, n, 2, 9.0, 1.0, np.ones(2)),
        ),
        (
            "hardy_grid",
            ("_hardy_grid_nb", "_hardy_grid_np"),
            (ts, kernels.EM_COEF, kernels.STIRLING, 12),
        ),
    ]


def run(n: int = 200_000) -> list[dict]:
    """Time each kernel pair; returns one row per kernel."""
    rows = []
    for name, (nb_name, np_name), args in _cases(n):
        np_fn = getattr(kernels, np_name)
        row = {"kernel": name, "n": n, "numpy_ms": _median_ms(lambda: np_fn(*args))}
        if USE_NUMBA:
            nb_fn = getattr(kernels, nb_name)
            out_nb, out_np = nb_fn(*args), np_fn(*args)
            if not np.allclose(
                np.asarray(out_nb, dtype=np.complex128),
                np.asarray(out_np, dtype=np.complex128),
                rtol=1e-10,
                atol=1e-12,
            ):
                raise AssertionError(f"backend variants disagree for {name}")
            row["numba_ms"] = _median_ms(lambda: nb_fn(*args))
            row["speedup"] = row["numpy_ms"] / row["numba_ms"]
        rows.append(row)
    return rows


def main() -> int:
    rows = run()
    width = max(len(r["kernel"]) for r in rows)
    if USE_NUMBA:
        print(f"{'kernel':<{width}}  {'numba ms':>9}  {'numpy ms':>9}  {'speedup':>7}")
        for r in rows:
            print(
                f"{r['kernel']:<{width}}  {r['numba_ms']:>9.3f}  "
                f"{r['numpy_ms']:>9.3f}  {r['speedup']:>7.2f}"
            )
    else:
        print("numba disabled (ZETAMOMENTS_NO_NUMBA); timing numpy variants only")
        print(f"{'kernel':<{width}}  {'numpy ms':>9}")
        for r in rows:
            print(f"{r['kernel']:<{width}}  {r['numpy_ms']:>9.3f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
