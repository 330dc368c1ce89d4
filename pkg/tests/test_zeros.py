"""Zero scanning, certification, and cache round-trips."""

from __future__ import annotations

import dataclasses

import numpy as np
import pytest
from mpmath import mp

from zetamoments.errors import IntegrityError, PreconditionError
from zetamoments.zeros import (
    ZeroCache,
    cache_io,
    count_exact,
    count_main_term,
    gram_points,
    scan_zeros,
)


def test_twenty_nine_zeros_below_100(cache100):
    assert len(cache100) == 29
    assert cache100.certified
    g = cache100.gammas_f64()
    assert 14.13 < g[0] < 14.14
    assert np.all(np.diff(g) > 0)
    assert g[-1] <= 100.0


def test_count_exact_known_values():
    assert count_exact(100.0) == 29
    assert count_exact(50.0) == 10
    assert count_exact(14.0) == 0
    assert count_exact(15.0) == 1


def test_count_main_term_tracks_exact():
    for t in (100.0, 500.0, 1000.0):
        assert abs(count_main_term(t) - count_exact(t)) < 3.0


def test_zero_precision_against_mpmath(cache100):
    with mp.workdps(40):
        for idx in (0, 9, 28):
            rec = cache100.records[idx]
            ref = mp.im(mp.zetazero(idx + 1))
            assert abs(rec.gamma - ref) < mp.mpf(10) ** (-rec.prec + 2)


def test_zeta_prime_at_zero(cache100):
    rec = cache100.records[0]
    with mp.workdps(30):
        ref = mp.zeta(mp.mpc(0.5, rec.gamma), derivative=1)
        assert abs(rec.zeta_prime.to_mpc() - ref) < mp.mpf(10) ** (-15)


def test_gram_points_interleave_low_zeros(cache100):
    g = gram_points(10.0, 60.0)
    assert np.all(np.diff(g) > 0)


def test_scan_window_matches_cache(cache100):
    recs = scan_zeros(20.0, 60.0, prec=20)
    expect = [float(r.gamma) for r in cache100.records if 20.0 < float(r.gamma) <= 60.0]
    assert len(recs) == len(expect)
    for r, e in zip(recs, expect):
        assert abs(float(r.gamma) - e) < 1e-12


def test_cache_roundtrip_and_stability(tmp_path, cache100):
    p1 = tmp_path / "z1.tsv"
    cache_io(p1, "write", cache100)
    back = cache_io(p1, "read")
    assert len(back) == len(cache100)
    assert back.prec == cache100.prec
    assert back.certified
    for a, b in zip(back.records, cache100.records):
        assert abs(a.gamma - b.gamma) < mp.mpf(10) ** (-cache100.prec + 1)
    p2 = tmp_path / "z2.tsv"
    cache_io(p2, "write", back)
    assert p1.read_bytes() == p2.read_bytes()


def test_certify_rejects_dropped_record(cache100):
    broken = ZeroCache(
        records=cache100.records[:-1],
        t_max=cache100.t_max,
        prec=cache100.prec,
    )
    with pytest.raises(IntegrityError):
        broken.certify()


def test_write_refuses_uncertified(tmp_path, cache100):
    dubious = dataclasses.replace(cache100, certified=False)
    with pytest.raises(PreconditionError):
        cache_io(tmp_path / "nope.tsv", "write", dubious)


def test_read_detects_tampering(tmp_path, cache100):
    p = tmp_path / "z.tsv"
    cache_io(p, "write", cache100)
    lines = p.read_text().splitlines()
    del lines[5]
    p.write_text("\n".join(lines) + "\n")
    with pytest.raises(IntegrityError):
        cache_io(p, "read")
