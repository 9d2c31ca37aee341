"""Append-only result cache: storage, recovery, and damage handling."""

import json
import os

import pytest

from boofdeg.cache import (
    CacheError, ResultCache, cache_lookup, cache_store, default_cache_path,
    open_cache,
)


def test_store_then_lookup_roundtrip(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    cache = ResultCache(path)
    cache.store(2, "8", "approx-ndeg", {"eps": "1/3"}, {"value": 1})
    fresh = ResultCache(path)
    assert fresh.lookup(2, "8", "approx-ndeg", {"eps": "1/3"}) == {"value": 1}


def test_miss_returns_none(tmp_path):
    cache = ResultCache(str(tmp_path / "cache.jsonl"))
    assert cache.lookup(2, "8", "deg", {}) is None


def test_missing_file_is_empty_not_error(tmp_path):
    cache = ResultCache(str(tmp_path / "nowhere.jsonl")).load()
    assert cache.skipped == 0
    assert cache.lookup(1, "2", "deg", {}) is None


def test_newest_entry_wins(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    cache = ResultCache(path)
    cache.store(2, "8", "deg", {}, {"value": 7})
    cache.store(2, "8", "deg", {}, {"value": 2})
    assert ResultCache(path).lookup(2, "8", "deg", {}) == {"value": 2}
    # both lines remain on disk: the file is append-only
    with open(path, "r", encoding="utf-8") as fh:
        assert len(fh.readlines()) == 2


def test_distinct_params_do_not_collide(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    cache = ResultCache(path)
    cache.store(2, "8", "approx-ndeg", {"eps": "1/3"}, {"value": 1})
    cache.store(2, "8", "approx-ndeg", {"eps": "1/4"}, {"value": 2})
    fresh = ResultCache(path)
    assert fresh.lookup(2, "8", "approx-ndeg", {"eps": "1/3"}) == {"value": 1}
    assert fresh.lookup(2, "8", "approx-ndeg", {"eps": "1/4"}) == {"value": 2}


def test_truncated_final_line_skipped_with_count(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    cache = ResultCache(path)
    cache.store(3, "80", "deg", {}, {"value": 3})
    with open(path, "a", encoding="utf-8") as fh:
        fh.write('{"key": {"n": 3, "hex": "80", "measu')
    fresh = ResultCache(path).load()
    assert fresh.skipped == 1
    assert fresh.lookup(3, "80", "deg", {}) == {"value": 3}


def test_damaged_middle_lines_counted(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("not json at all\n")
        fh.write("\n")
        fh.write(json.dumps({"key": {"n": 1}, "value": 1}) + "\n")  # no hex
        fh.write(json.dumps(
            {"key": {"n": 1, "hex": "2", "measure": "deg", "params": {}},
             "value": {"value": 1}}) + "\n")
    cache = ResultCache(path).load()
    assert cache.skipped == 2  # blank lines are not damage
    assert cache.lookup(1, "2", "deg", {}) == {"value": 1}


def test_store_into_missing_directory_raises(tmp_path):
    cache = ResultCache(str(tmp_path / "no" / "such" / "dir" / "c.jsonl"))
    with pytest.raises(CacheError):
        cache.store(1, "2", "deg", {}, {"value": 1})


def test_directory_as_cache_path_raises_on_read(tmp_path):
    with pytest.raises(CacheError):
        ResultCache(str(tmp_path)).load()


def test_pathless_cache_ignores_stores():
    cache = ResultCache(None)
    cache.store(1, "2", "deg", {}, {"value": 1})
    assert cache.lookup(1, "2", "deg", {}) is None


def test_default_path_reads_environment(monkeypatch, tmp_path):
    monkeypatch.delenv("BOOFDEG_CACHE", raising=False)
    assert default_cache_path() is None
    assert open_cache() is None
    target = str(tmp_path / "env.jsonl")
    monkeypatch.setenv("BOOFDEG_CACHE", target)
    assert default_cache_path() == target
    assert open_cache().path == target


def test_explicit_path_overrides_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("BOOFDEG_CACHE", str(tmp_path / "env.jsonl"))
    chosen = str(tmp_path / "explicit.jsonl")
    assert open_cache(chosen).path == chosen


def test_one_shot_helpers(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    key = (2, "6", "ndeg", {})
    assert cache_lookup(path, key) is None
    cache_store(path, key, {"value": 1})
    assert cache_lookup(path, key) == {"value": 1}
