"""On-disk artifact cache, content-addressed by the job parameters and code version."""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path

from . import __version__

log = logging.getLogger(__name__)

ENV_VAR = "UNICOMPLEX_CACHE_DIR"


def cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "unicomplex"


def cache_key(command: str, family=None, p=None, n=None, method=None, version: str = __version__, **extra) -> str:
    payload = {"command": command, "family": family, "p": p, "n": n, "method": method, "version": version}
    payload.update(extra)
    blob = json.dumps(payload, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()


def _path(key: str, root: Path | None) -> Path:
    return (root or cache_dir()) / key[:2] / f"{key}.json"


def cache_get(key: str, root: Path | None = None) -> str | None:
    path = _path(key, root)
    if not path.exists():
        return None
    try:
        record = json.loads(path.read_text())
        body = record["body"]
        if hashlib.sha256(body.encode()).hexdigest() != record["sha256"]:
            raise ValueError("checksum mismatch")
        return body
    except (ValueError, KeyError, OSError) as exc:
        log.warning("ignoring corrupt cache entry %s (%s)", path, exc)
        return None


def cache_put(key: str, body: str, root: Path | None = None) -> Path:
    path = _path(key, root)
    path.parent.mkdir(parents=True, exist_ok=True)
    record = {"sha256": hashlib.sha256(body.encode()).hexdigest(), "body": body}
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(record))
    tmp.replace(path)
    return path


def cached(key: str, compute, enabled: bool = True, root: Path | None = None) -> tuple[str, bool]:
    """(artifact text, whether it came from the cache)."""
    if enabled:
        hit = cache_get(key, root)
        if hit is not None:
            return hit, True
    body = compute()
    if enabled:
        cache_put(key, body, root)
    return body, False
