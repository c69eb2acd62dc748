from gspcert.lrucache import LRUCache, memoize

def test_eviction_order():
    cache = LRUCache(size=2)
    cache['A'] = 1
    cache['B'] = 2
    assert 1 == cache.get('A')
    cache['C'] = 3
    assert 'A' in cache
    assert 'B' not in cache
    assert 2 == len(cache)

def test_overwrite_refreshes_entry():
    cache = LRUCache(size=2)
    cache['A'] = 1
    cache['B'] = 2
    cache['A'] = 3
    cache['C'] = 4
    assert 3 == cache.get('A')
    assert 'B' not in cache
    assert 2 == len(cache)

def test_hit_counters():
    cache = LRUCache(size=4)
    cache['A'] = 1
    cache.get('A')
    cache.get('B')
    assert (1, 1) == (cache.hits, cache.misses)

def test_memoize_calls_once():
    calls = []
    @memoize(size=8)
    def square(n):
        calls.append(n)
        return n * n
    assert [9, 9, 16] == [square(3), square(3), square(4)]
    assert [3, 4] == calls
    assert (3,) in square.cache
