# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""\
==========================================================
:mod:`gspcert.lrucache` -- Least Recently Used (LRU) Cache
==========================================================

The number-theoretic searches factor the same integers ``p^k +- 1`` and
recompute the same ``K_g`` many times over a scan. :func:`memoize` keeps
those results in a size-bounded :class:`LRUCache`.

Example:

    >>> @memoize(size=128)
    ... def factor(n):
    ...     return sympy.factorint(n)
    >>> factor.cache.hits
    0
"""

import functools

default_cachesize = 4096

__all__ = ['LRUCache', 'memoize']

class Entry(object):

    __slots__ = ['key', 'newer', 'older', 'value']

    def __init__(self, key=None, value=None):
        self.key   = key
        self.value = value
        self.older = self.newer = self

class LRUCache(object):

    (   "LRUCache("
            "size:int=-1"
        ")" """

    Entries form a ring through one sentinel: ``root.newer`` is the
    least recently used entry and ``root.older`` the most recent one.
    """)

    __slots__ = ['entries', 'hits', 'misses', 'root', 'size']

    def __init__(self, size=-1):
        self.size    = default_cachesize if -1 == size else size
        self.entries = {}
        self.root    = Entry()
        self.hits    = 0
        self.misses  = 0

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return key in self.entries

    def __setitem__(self, key, value):
        entry = self.entries.get(key)
        if entry is None:
            entry = self.entries[key] = Entry(key, value)
        else:
            entry.value = value
            self._detach(entry)
        self._push(entry)
        while len(self.entries) > self.size:
            oldest = self.root.newer
            self._detach(oldest)
            del self.entries[oldest.key]

    def get(self, key, default=None):
        (   "get("
                "key, "
                "default=None"
            ")" """

        A hit makes `key` the most recently used entry; hits and misses
        are counted.
        """)
        entry = self.entries.get(key)
        if entry is None:
            self.misses += 1
            return default
        self.hits += 1
        self._detach(entry)
        self._push(entry)
        return entry.value

    def _detach(self, entry):
        entry.older.newer = entry.newer
        entry.newer.older = entry.older

    def _push(self, entry):
        root = self.root
        entry.older = root.older
        entry.newer = root
        root.older.newer = entry
        root.older = entry

missing = object()

def memoize(size=-1):
    (   "memoize("
            "size:int=-1"
        ") -> decorator" """

    Cache the results of a function of hashable positional arguments.
    The cache is exposed as ``func.cache``.
    """)
    def decorator(func):
        cache = LRUCache(size)
        @functools.wraps(func)
        def wrapper(*args):
            value = cache.get(args, missing)
            if value is missing:
                value = func(*args)
                cache[args] = value
            return value
        wrapper.cache = cache
        return wrapper
    return decorator
