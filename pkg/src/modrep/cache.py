"""Content-addressed on-disk cache of result documents.

Entries are files named by the SHA-256 of their key.  Each entry stores a
digest of its body, so truncated or edited files are detected, discarded
with a warning and recomputed.  Writes go to a temporary file in the same
directory followed by an atomic rename.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

log = logging.getLogger("modrep.cache")

WORKSPACE_ENV = "MODREP_WORKSPACE"


def default_workspace() -> Path:
    env = os.environ.get(WORKSPACE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "modrep"


def cache_key(**parts) -> str:
    text = json.dumps(parts, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class Cache:
    root: Path

    def path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str) -> str | None:
        path = self.path(key)
        try:
            raw = path.read_bytes()
        except FileNotFoundError:
            return None
        except OSError as exc:
            log.warning("cache entry %s unreadable (%s); recomputing", path, exc)
            return None
        try:
            entry = json.loads(raw.decode("utf-8"))
            body = entry["body"]
            ok = entry["key"] == key and hashlib.sha256(body.encode("utf-8")).hexdigest() == entry["sha256"]
        except (ValueError, KeyError, TypeError, AttributeError):
            ok = False
        if not ok:
            log.warning("corrupt cache entry %s discarded; recomputing", path)
            try:
                path.unlink()
            except OSError:
                pass
            return None
        return body

    def put(self, key: str, body: str) -> None:
        path = self.path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        entry = json.dumps({"key": key, "sha256": hashlib.sha256(body.encode("utf-8")).hexdigest(), "body": body})
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(entry)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
