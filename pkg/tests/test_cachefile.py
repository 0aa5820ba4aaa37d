import fcntl
import json

import pytest

from skein import Engine
from skein.cachefile import CacheFileError, CacheVersionError, load_cache, store_cache
from skein.engine import ProductCache


def _filled(entries: int) -> ProductCache:
    e = Engine()
    d = 2
    while len(e.cache) < entries:
        e.mul_basis((d, 1), (0, 1))
        d += 1
    cache = ProductCache()
    cache.merge(dict(list(e.cache.entries.items())[:entries]))
    return cache


def test_store_then_load(tmp_path):
    cache = _filled(100)
    path = tmp_path / "c.jsonl"
    assert store_cache(cache, path) == 100
    loaded = load_cache(path)
    assert loaded.entries == cache.entries


def test_empty_file_is_empty_cache(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    assert len(load_cache(path)) == 0


def test_higher_version_rejected(tmp_path):
    path = tmp_path / "v2.jsonl"
    path.write_text(json.dumps({"format": "skein-cache", "version": 2, "algebra": "f04"}) + "\n")
    with pytest.raises(CacheVersionError):
        load_cache(path)


def test_corrupt_record_index(tmp_path):
    path = tmp_path / "bad.jsonl"
    store_cache(_filled(3), path)
    lines = path.read_text().splitlines()
    lines[2] = '{"key": [1, 0], "value": {}}'
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(CacheFileError, match="record 1"):
        load_cache(path)


def test_merge_keeps_existing(tmp_path):
    cache = _filled(5)
    path = tmp_path / "c.jsonl"
    store_cache(cache, path)
    target = ProductCache()
    key = next(iter(cache.entries))
    sentinel = cache.entries[key] + cache.entries[key]
    target.put(key, sentinel)
    load_cache(path, target)
    assert target.entries[key] is sentinel
    assert len(target) == 5


def test_locked_file_fails(tmp_path):
    path = tmp_path / "c.jsonl"
    store_cache(_filled(2), path)
    with open(path) as fh:
        fcntl.flock(fh.fileno(), fcntl.LOCK_EX)
        with pytest.raises(CacheFileError, match="locked"):
            load_cache(path)


def test_cache_file_warms_engine(tmp_path):
    path = tmp_path / "c.jsonl"
    e = Engine()
    expected = e.mul_basis((7, 3), (0, 2))
    store_cache(e.cache, path)
    warm = Engine(load_cache(path))
    assert warm.mul_basis((7, 3), (0, 2)) == expected
    assert warm.cache.hits == 1
