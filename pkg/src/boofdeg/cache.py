"""Append-only JSONL cache for measure results.

One line per stored result: {"key": {...}, "value": {...}}.  The key
identifies a computation by arity, table hex, measure name, and the
exact parameters it ran with, so distinct settings never collide.
Appending is the only write operation; a repeated key simply adds a
newer line, and lookups let the newest line win.  Damaged lines (a
truncated tail after a crash, stray bytes, records missing their
fields) are skipped and counted rather than treated as fatal.
"""

import json
import os


ENV_VAR = "BOOFDEG_CACHE"


class CacheError(OSError):
    """The cache file cannot be read or appended to."""


def default_cache_path():
    """Path named by the BOOFDEG_CACHE variable, or None when unset."""
    path = os.environ.get(ENV_VAR, "").strip()
    return path or None


def _key_dict(n, hex_digits, measure, params):
    return {
        "n": int(n),
        "hex": str(hex_digits),
        "measure": str(measure),
        "params": dict(params or {}),
    }


def _key_string(key):
    return json.dumps(key, sort_keys=True, separators=(",", ":"))


class ResultCache:
    """In-memory view over one cache file, loaded lazily.

    skipped counts the damaged lines encountered by the last load, so a
    caller can surface one warning instead of failing.
    """

    def __init__(self, path):
        self.path = path
        self.skipped = 0
        self._entries = None

    def load(self):
        self._entries = {}
        self.skipped = 0
        if not self.path or not os.path.exists(self.path):
            return self
        try:
            with open(self.path, "r", encoding="utf-8") as fh:
                raw_lines = fh.readlines()
        except OSError as exc:
            raise CacheError("cannot read cache %r: %s" % (self.path, exc))
        for raw in raw_lines:
            line = raw.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                key = _key_dict(
                    rec["key"]["n"], rec["key"]["hex"],
                    rec["key"]["measure"], rec["key"]["params"],
                )
                value = rec["value"]
            except (ValueError, KeyError, TypeError):
                self.skipped += 1
                continue
            # later lines overwrite earlier ones: the newest entry wins
            self._entries[_key_string(key)] = value
        return self

    def lookup(self, n, hex_digits, measure, params=None):
        if self._entries is None:
            self.load()
        key = _key_dict(n, hex_digits, measure, params)
        return self._entries.get(_key_string(key))

    def store(self, n, hex_digits, measure, params, value):
        if not self.path:
            return
        key = _key_dict(n, hex_digits, measure, params)
        line = json.dumps(
            {"key": key, "value": value}, sort_keys=True,
            separators=(",", ":"),
        )
        try:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
        except OSError as exc:
            raise CacheError("cannot append to cache %r: %s" % (self.path, exc))
        if self._entries is not None:
            self._entries[_key_string(key)] = value


def open_cache(path=None):
    """Cache at the given path, else at $BOOFDEG_CACHE, else None."""
    chosen = path or default_cache_path()
    if not chosen:
        return None
    return ResultCache(chosen).load()


def cache_lookup(path, key):
    """One-shot lookup; key is the tuple (n, hex, measure, params)."""
    n, hex_digits, measure, params = key
    return ResultCache(path).lookup(n, hex_digits, measure, params)


def cache_store(path, key, value):
    """One-shot append; key is the tuple (n, hex, measure, params)."""
    n, hex_digits, measure, params = key
    ResultCache(path).store(n, hex_digits, measure, params, value)
