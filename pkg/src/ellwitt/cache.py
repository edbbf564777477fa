"""Content-addressed on-disk cache for computed report sections.

Entries are keyed by (schema_version, kind, parameters) and carry a
sha256 of their canonical payload; a hit is byte-identical to
recomputation by construction.  Corrupt entries (bad JSON, checksum or
key mismatch) are discarded with a warning and recomputed.  Writes are
atomic (write-temp-then-rename).
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path

from .report import SCHEMA_VERSION, canonical_json

ENV_CACHE_DIR = "ELLWITT_CACHE_DIR"


def cache_dir() -> Path:
    override = os.environ.get(ENV_CACHE_DIR)
    if override:
        return Path(override)
    return Path.home() / ".cache" / "ellwitt"


def _entry_path(kind: str, key: dict) -> Path:
    parts = [kind] + [f"{k}{key[k]}" for k in sorted(key)]
    return cache_dir() / ("_".join(parts) + ".json")


def _checksum(payload: dict) -> str:
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


def load(kind: str, key: dict):
    """The cached payload for (kind, key), or None on miss/corruption."""
    path = _entry_path(kind, key)
    if not path.exists():
        return None
    try:
        entry = json.loads(path.read_text())
        ok = (entry.get("schema_version") == SCHEMA_VERSION
              and entry.get("key") == key
              and entry.get("sha256") == _checksum(entry["payload"]))
    except (ValueError, KeyError, TypeError):
        ok = False
    if not ok:
        print(f"warning: discarding corrupt cache entry {path}",
              file=sys.stderr)
        try:
            path.unlink()
        except OSError:
            pass
        return None
    return entry["payload"]


def store(kind: str, key: dict, payload: dict) -> None:
    path = _entry_path(kind, key)
    path.parent.mkdir(parents=True, exist_ok=True)
    entry = {
        "schema_version": SCHEMA_VERSION,
        "key": key,
        "sha256": _checksum(payload),
        "payload": payload,
    }
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(canonical_json(entry))
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
