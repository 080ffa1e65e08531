"""Content-addressed on-disk cache for job results and cover modules."""

from __future__ import annotations

import functools
import hashlib
import json
import os
import pickle
import tempfile
from pathlib import Path

from .. import __version__

CACHE_FORMAT = 1


def default_dir() -> Path:
    base = os.environ.get("MODREP_CACHE_DIR")
    if base:
        return Path(base)
    xdg = os.environ.get("XDG_CACHE_HOME")
    return (Path(xdg) if xdg else Path.home() / ".cache") / "modrep"


@functools.lru_cache(maxsize=None)
def code_digest() -> str:
    """Hash of the package sources, so edited code never reads old entries."""
    h = hashlib.sha256()
    root = Path(__file__).resolve().parents[1]
    for path in sorted(root.rglob("*.py")):
        h.update(str(path.relative_to(root)).encode())
        h.update(path.read_bytes())
    return h.hexdigest()


def cache_key(kind: str, data: dict, seed: int) -> str:
    """SHA-256 of the canonical JSON of everything the result depends on."""
    blob = json.dumps(
        {"kind": kind, "data": data, "seed": seed, "version": __version__, "code": code_digest(),
         "format": CACHE_FORMAT},
        sort_keys=True, separators=(",", ":"),
    )
    return hashlib.sha256(blob.encode()).hexdigest()


class Cache:
    """Objects stored under ``<dir>/<key[:2]>/<key>.pkl``.

    Writes go to a temporary file in the same directory and are renamed
    into place, so concurrent writers never expose a partial file.
    """

    def __init__(self, directory: str | Path | None = None, enabled: bool = True):
        self.dir = Path(directory) if directory is not None else default_dir()
        self.enabled = enabled

    def _path(self, key: str) -> Path:
        return self.dir / key[:2] / f"{key}.pkl"

    def get(self, key: str):
        if not self.enabled:
            return None
        path = self._path(key)
        try:
            with open(path, "rb") as fh:
                return pickle.load(fh)
        except FileNotFoundError:
            return None
        except (pickle.UnpicklingError, EOFError, AttributeError, ImportError):
            return None  # stale or foreign entry: recompute

    def put(self, key: str, value) -> None:
        if not self.enabled:
            return
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".pkl")
        try:
            with os.fdopen(fd, "wb") as fh:
                pickle.dump(value, fh, protocol=pickle.HIGHEST_PROTOCOL)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except FileNotFoundError:
                pass
            raise
