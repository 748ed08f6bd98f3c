"""Tiny JSON disk cache for expensive lattice computations.

The cache directory comes from the ``COXPOLY_CACHE`` environment variable,
defaulting to ``~/.cache/coxpoly``.  Keys embed the code generator
checksum, so stale entries can never leak across generator changes.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path


def cache_dir() -> Path:
    root = os.environ.get("COXPOLY_CACHE")
    if root:
        return Path(root)
    return Path.home() / ".cache" / "coxpoly"


def load(key: str) -> dict | None:
    path = cache_dir() / f"{key}.json"
    if not path.exists():
        return None
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None


def store(key: str, payload: dict) -> None:
    d = cache_dir()
    d.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, d / f"{key}.json")
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
