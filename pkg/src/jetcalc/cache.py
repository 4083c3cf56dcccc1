"""Content-addressed JSON cache for dimension results."""

from __future__ import annotations

import hashlib
import json
import os
import sys
from pathlib import Path

from filelock import FileLock, Timeout


def default_cache_dir() -> Path:
    env = os.environ.get("JETCALC_CACHE")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "jetcalc"


class ResultCache:
    """One JSON file per key; writes are atomic and guarded by an advisory lock.

    Any I/O failure switches the cache off with a warning rather than failing the run.
    """

    def __init__(self, directory: Path | str | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.enabled = True
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            self._disable(exc)

    def _disable(self, exc):
        if self.enabled:
            print(f"warning: cache disabled ({exc})", file=sys.stderr)
        self.enabled = False

    @staticmethod
    def key(**fields) -> str:
        blob = json.dumps(fields, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def lookup(self, key: str):
        if not self.enabled:
            return None
        path = self._path(key)
        if not path.exists():
            return None
        try:
            with FileLock(str(path) + ".lock", timeout=10):
                raw = path.read_text()
                try:
                    entry = json.loads(raw)
                    if entry.get("key") != key or "result" not in entry:
                        raise ValueError("malformed entry")
                    return entry["result"]
                except (ValueError, AttributeError):
                    path.unlink(missing_ok=True)  # corrupt entries are evicted, never trusted
                    return None
        except (OSError, Timeout) as exc:
            self._disable(exc)
            return None

    def store(self, key: str, result) -> None:
        if not self.enabled:
            return
        path = self._path(key)
        tmp = path.with_suffix(".tmp")
        try:
            with FileLock(str(path) + ".lock", timeout=10):
                tmp.write_text(json.dumps({"key": key, "result": result}, sort_keys=True))
                os.replace(tmp, path)
        except (OSError, Timeout) as exc:
            self._disable(exc)
