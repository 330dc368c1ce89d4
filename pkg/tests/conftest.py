"""Shared fixtures: disk-persisted zero caches (slow to build, cheap to read)."""

from __future__ import annotations

from pathlib import Path

import pytest

from zetamoments.zeros import build_cache, cache_io

CACHE_DIR = Path(__file__).parent / ".cache"


def _disk_cache(name: str, t_max: float, prec: int):
    CACHE_DIR.mkdir(exist_ok=True)
    path = CACHE_DIR / name
    if path.exists():
        cache = cache_io(path, "read")
        if cache.t_max >= t_max and cache.prec >= prec:
            return cache
    cache = build_cache(t_max, prec=prec)
    cache_io(path, "write", cache)
    return cache


@pytest.fixture(scope="session")
def cache100():
    """Certified zeros with gamma <= 100 at 30 digits (29 zeros)."""
    return _disk_cache("zeros100.tsv", 100.0, 30)


@pytest.fixture(scope="session")
def cache2000():
    """Certified zeros with gamma <= 2000 at 20 digits (1517 zeros)."""
    return _disk_cache("zeros2000.tsv", 2000.0, 20)


@pytest.fixture(scope="session")
def cache2000_path(cache2000):
    return str(CACHE_DIR / "zeros2000.tsv")
