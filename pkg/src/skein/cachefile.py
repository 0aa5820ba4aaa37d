"""Persistent product cache in JSON Lines.

Line 1 is the header ``{"format":"skein-cache","version":1,"algebra":"f04"}``;
each further line is ``{"key":[d1,n1,d2,n2],"value":<element JSON>}``.
Files are opened under an exclusive non-blocking ``flock``; a file held by
another process is an error rather than a wait.
"""

from __future__ import annotations

import fcntl
import json
import os
from contextlib import contextmanager
from pathlib import Path

from .curves import normalize
from .engine import ProductCache
from .serialize import dumps, element_from_obj, element_to_obj

__all__ = ["CACHE_FORMAT", "CACHE_VERSION", "CacheFileError", "CacheVersionError", "load_cache", "store_cache", "cache_io"]

CACHE_FORMAT = "skein-cache"
CACHE_VERSION = 1


class CacheFileError(ValueError):
    pass


class CacheVersionError(CacheFileError):
    pass


@contextmanager
def _locked(path: Path, mode: str):
    with open(path, mode, encoding="utf-8") as fh:
        try:
            fcntl.flock(fh.fileno(), fcntl.LOCK_EX | fcntl.LOCK_NB)
        except BlockingIOError as exc:
            raise CacheFileError(f"cache file {path} is locked by another process") from exc
        try:
            yield fh
        finally:
            fcntl.flock(fh.fileno(), fcntl.LOCK_UN)


def _check_header(obj, path) -> None:
    if not isinstance(obj, dict) or obj.get("format") != CACHE_FORMAT:
        raise CacheFileError(f"{path}: not a skein cache file")
    version = obj.get("version")
    if not isinstance(version, int) or version != CACHE_VERSION:
        raise CacheVersionError(f"{path}: cache version {version!r} is not supported (expected {CACHE_VERSION})")
    if obj.get("algebra") != "f04":
        raise CacheFileError(f"{path}: unsupported algebra {obj.get('algebra')!r}")


def load_cache(path: str | os.PathLike, into: ProductCache | None = None) -> ProductCache:
    """Read a cache file, merging into ``into`` without touching existing keys."""
    path = Path(path)
    cache = into if into is not None else ProductCache()
    entries = {}
    with _locked(path, "r") as fh:
        lines = fh.read().splitlines()
    if not any(line.strip() for line in lines):
        return cache
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise CacheFileError(f"{path}: corrupt header: {exc}") from exc
    _check_header(header, path)
    index = 0
    for line in lines[1:]:
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            d1, n1, d2, n2 = (int(v) for v in rec["key"])
            value = element_from_obj(rec["value"])
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise CacheFileError(f"{path}: corrupt record {index}: {exc}") from exc
        entries[(normalize(d1, n1), normalize(d2, n2))] = value
        index += 1
    cache.merge(entries)
    return cache


def store_cache(cache: ProductCache, path: str | os.PathLike) -> int:
    """Write every entry of ``cache`` to ``path``; returns the record count."""
    path = Path(path)
    path.touch(exist_ok=True)
    with _locked(path, "r+") as fh:
        fh.seek(0)
        fh.truncate()
        fh.write(dumps({"format": CACHE_FORMAT, "version": CACHE_VERSION, "algebra": "f04"}) + "\n")
        for (a, b), value in sorted(cache.entries.items()):
            fh.write(dumps({"key": [a.d, a.n, b.d, b.n], "value": element_to_obj(value)}) + "\n")
    return len(cache.entries)


def cache_io(path: str | os.PathLike, mode: str, cache: ProductCache | None = None) -> ProductCache:
    if mode == "load":
        return load_cache(path, cache)
    if mode == "store":
        if cache is None:
            raise ValueError("store needs a cache")
        store_cache(cache, path)
        return cache
    raise ValueError(f"mode must be 'load' or 'store', got {mode!r}")
