import pytest
import sympy

from gspcert.exceptions import ExceptionalPair, VerificationError
from gspcert.kg import kg_exact
from gspcert.symplectic import similitude_factor
from gspcert.witness import (ZsigmondyHit, build_33_group,
                             exceptional_pairs, exceptional_scan,
                             find_witness, is_admissible,
                             primitive_prime_divisors, prime_count_bounds,
                             require_witness, verify_33_group,
                             witness_table, zsigmondy_scan)

@pytest.mark.parametrize('g, p, d, q', [(2, 5, 2, 13),
                                        (2, 7, 2, 25),
                                        (3, 5, 2, 13),
                                        (7, 2, 4, 17)])
def test_smallest_witness(g, p, d, q):
    w = find_witness(g, p)
    assert not w.exceptional
    assert (d, q) == (w.d, w.q)
    assert is_admissible(g, p, d, q)
    assert {'d': str(d), 'q': str(q), 'exceptional': False,
            'special33': False} == w.to_json()

def test_exceptional_transcript():
    w = find_witness(2, 2)
    assert w.exceptional
    assert {'exceptional': True,
            'transcript': [{'d': '1', 'terms': [['3', True]]},
                           {'d': '2', 'terms': [['5', True]]}]} == \
        w.to_json()

def test_require_witness():
    assert 13 == require_witness(2, 5).q
    with pytest.raises(ExceptionalPair) as info:
        require_witness(3, 2)
    assert (3, 2) == (info.value.g, info.value.p)

def test_witness_arguments():
    with pytest.raises(ValueError):
        find_witness(1, 5)
    with pytest.raises(ValueError):
        find_witness(2, 4)

def test_admissibility():
    assert is_admissible(7, 2, 7, 43)
    assert not is_admissible(7, 2, 1, 43)
    assert not is_admissible(7, 2, 8, 257)
    # 26 is not a prime power
    assert not is_admissible(2, 5, 2, 26, kg=kg_exact(2))
    assert not is_admissible(2, 5, 2, 2)

def test_primitive_prime_divisors():
    assert [11] == primitive_prime_divisors(2, 5)
    assert [17] == primitive_prime_divisors(2, 4)
    assert [] == primitive_prime_divisors(2, 3)

def test_prime_count_bounds():
    assert {'pi': 6, 'at_most_g-1': True,
            'at_most_g-2': None} == prime_count_bounds(7)
    assert 8 == prime_count_bounds(10)['pi']
    assert prime_count_bounds(10)['at_most_g-2']
    assert {'pi': 3, 'at_most_g-1': None,
            'at_most_g-2': None} == prime_count_bounds(3)

def test_zsigmondy_scan():
    # 2^7+1 = 3 * 43
    assert ZsigmondyHit(43, 7) == zsigmondy_scan(7, 2)
    hit = zsigmondy_scan(8, 3)
    assert hit.q > 17 and 0 == (3 ** hit.d + 1) % hit.q
    with pytest.raises(ValueError):
        zsigmondy_scan(6, 2)

def test_exceptional_scan():
    assert exceptional_pairs == exceptional_scan(6, 31)

def test_witness_table_rows():
    rows = witness_table(2, 7)
    assert [(2, 2), (2, 3), (2, 5), (2, 7)] == \
        [(row['g'], row['p']) for row in rows]
    assert [None, None, 13, 25] == [row['q'] for row in rows]

def test_special_group():
    data = build_33_group()
    assert 78 == data.order
    assert data.c in (4, 10)
    assert 2 == similitude_factor(data.Y)
    assert 13 == data.shape.e and 6 == data.shape.mb
    assert 'unique subgroup of order 13' in data.transcript

def test_special_group_rejects_bad_y():
    data = build_33_group()
    data.Y = data.Y * data.Y
    with pytest.raises(VerificationError):
        verify_33_group(data)

@pytest.mark.parametrize('p', [2, 3, 5, 7, 11, 13])
def test_zsigmondy_sweep(p):
    for g in range(7, 61):
        hit = zsigmondy_scan(g, p)
        assert hit.q > 2 * g + 1
        assert 1 <= hit.d <= g
        assert 0 == (p ** hit.d + 1) % hit.q
        assert sympy.isprime(hit.q)

def test_prime_count_bound_sweep():
    for g in range(7, 101):
        bounds = prime_count_bounds(g)
        assert bounds['at_most_g-1']
        assert bounds['pi'] <= g - 1
        if g >= 10:
            assert bounds['at_most_g-2']
