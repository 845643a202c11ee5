"""Content-addressed store for finished searches.

Each entry is a JSON file named by the SHA-256 of its canonical key, so a
long run can be resumed and a cache hit returns exactly what a cold run
computed.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import __version__

ENV_VAR = "GRASSWT_CACHE"


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "grasswt"


def digest(key: dict) -> str:
    blob = json.dumps(key, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class ResultCache:
    def __init__(self, root: str | Path | None = None):
        self.root = Path(root) if root is not None else default_dir()

    def _path(self, key: dict) -> Path:
        return self.root / f"{digest({**key, 'version': __version__})}.json"

    def get(self, key: dict):
        path = self._path(key)
        try:
            data = json.loads(path.read_text())
        except (FileNotFoundError, json.JSONDecodeError):
            return None
        return data.get("value")

    def put(self, key: dict, value) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        payload = json.dumps({"key": key, "version": __version__, "value": value}, sort_keys=True)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(payload)
            os.replace(tmp, self._path(key))
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    def entries(self) -> list[dict]:
        if not self.root.is_dir():
            return []
        out = []
        for path in sorted(self.root.glob("*.json")):
            try:
                data = json.loads(path.read_text())
            except json.JSONDecodeError:
                continue
            out.append({"id": path.stem, "key": data.get("key"), "version": data.get("version"),
                        "bytes": path.stat().st_size})
        return out

    def purge(self) -> int:
        if not self.root.is_dir():
            return 0
        n = 0
        for path in self.root.glob("*.json"):
            path.unlink()
            n += 1
        return n
