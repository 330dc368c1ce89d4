"""Versioned report documents: canonical JSON payloads, frozen-column CSV.

A report is a two-part document: a header carrying volatile metadata (the
generation timestamp) and a payload that is a pure function of the inputs.
Re-running a command with the same configuration and seed must reproduce
the payload byte for byte, so everything nondeterministic stays in the
header and the payload is serialized with sorted keys and a fixed float
format (``repr``, shortest round-trip, "." decimal separator).
"""

from __future__ import annotations

import csv
import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

SCHEMA = "report-v1"


def file_sha256(path: str | Path) -> str:
    """Hex digest of a file's contents (used to fingerprint zero caches)."""
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def jsonable(obj):
    """Rewrite nested containers into JSON-encodable form.

    Complex values become ``{"re": ..., "im": ...}`` objects, numpy scalars
    and arrays collapse to Python numbers and lists, and non-finite floats
    are spelled out as strings so the output stays strict JSON.  mpmath
    numbers are converted through float/complex, which is intentional:
    reports are summaries, not archival high-precision storage.
    """
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if x != x or x in (float("inf"), float("-inf")):
            return repr(x)
        return x
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return {"im": jsonable(z.imag), "re": jsonable(z.real)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple, set, frozenset)):
        seq = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in seq]
    if hasattr(obj, "_mpc_"):
        return jsonable(complex(obj))
    if hasattr(obj, "_mpf_"):
        return jsonable(float(obj))
    return str(obj)


def build_payload(config: dict, results: dict, residuals: dict, provenance: dict) -> dict:
    return jsonable(
        {
            "schema": SCHEMA,
            "config": config,
            "results": results,
            "residuals": residuals,
            "provenance": provenance,
        }
    )


def payload_bytes(payload: dict) -> bytes:
    """Canonical serialization of the deterministic part of a report."""
    return json.dumps(jsonable(payload), sort_keys=True, separators=(",", ":")).encode()


def build_document(payload: dict) -> dict:
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return {"header": {"generated_at": stamp}, "payload": jsonable(payload)}


def render_document(document: dict) -> str:
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def write_json(path: str | Path, payload: dict) -> None:
    Path(path).write_text(render_document(build_document(payload)), encoding="utf-8")


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (complex, np.complexfloating)):
        z = complex(v)
        return f"{z.real!r}{z.imag:+}j" if z.imag else repr(z.real)
    return str(v)


def write_csv(path: str | Path, columns: Sequence[str], rows: Iterable[Sequence]) -> None:
    """One record per row under a mandatory header; the timestamp lives in a
    leading comment line so the tabular part is reproducible byte for byte."""
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# generated_at={stamp}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(list(columns))
        for row in rows:
            writer.writerow([_cell(v) for v in row])
