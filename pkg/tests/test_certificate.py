import copy
import itertools
import json

import pytest
from hypothesis import given
import hypothesis.strategies as st

from gspcert.certificate import (Settings, construct_certificate, digest,
                                 dumps, lattice_index, least_solution,
                                 loads, selmer_order, verify_certificate)
from gspcert.exceptions import (CertificateSchemaError, NotPrimeError,
                                SearchCapExceeded)

@pytest.fixture(scope='module')
def certificate():
    return construct_certificate(2, 5)

@pytest.fixture(scope='module')
def special():
    return construct_certificate(3, 3)

def test_standard_certificate(certificate):
    assert 'standard' == certificate['kind']
    assert 1 == certificate['schema']
    assert {'d': '2', 'q': '13', 'exceptional': False,
            'special33': False} == certificate['witness']
    assert {'2': '8', '3': '2', '5': '1'} == certificate['kg']['factors']
    assert ('131', '521') == (certificate['auxiliary']['l'],
                              certificate['auxiliary']['v'])
    assert ['8', '0'] == certificate['twist']['tau']
    assert '13' == certificate['embedding']['instance']['N1']
    assert certificate['group']['splits'] is False
    assert '1' == certificate['selmer']['cyclic_order']
    assert certificate['assumed']
    assert digest(certificate) == certificate['digest']

def test_verify_pass(certificate):
    result = verify_certificate(certificate)
    assert ('pass', None) == (result.status, result.check)
    assert 'pass' == verify_certificate(dumps(certificate)).status

def test_construction_is_deterministic(certificate):
    again = construct_certificate(2, 5)
    assert certificate['digest'] == again['digest']
    assert dumps(certificate) == dumps(again)

def test_certificate_is_plain_json(certificate):
    text = dumps(certificate)
    assert text.endswith('\n')
    assert certificate == json.loads(text) == loads(text)

def test_perturbed_matrix_fails(certificate):
    broken = copy.deepcopy(certificate)
    X = broken['group']['X']
    X[0][0] = (X[0][0] + 1) % 5
    result = verify_certificate(broken)
    assert ('fail', 'tower: X = multiply_by(x)') == \
        (result.status, result.check)

def test_bad_ramified_prime_fails(certificate):
    broken = copy.deepcopy(certificate)
    # 29 = 5 mod 8 but 5 is a square modulo 29
    broken['embedding']['instance']['N1'] = '29'
    result = verify_certificate(broken)
    assert ('fail', 'instance: p non-residue mod N_1') == \
        (result.status, result.check)

def test_tampered_body_fails_digest(certificate):
    broken = copy.deepcopy(certificate)
    broken['assumed'] = broken['assumed'][:1]
    result = verify_certificate(broken)
    assert ('fail', 'digest') == (result.status, result.check)

def test_non_minimal_prime_fails(certificate):
    broken = copy.deepcopy(certificate)
    broken['auxiliary']['v'] = '1171'
    result = verify_certificate(broken)
    assert 'fail' == result.status
    assert result.check.startswith('auxiliary')

def test_malformed_input():
    assert 'schema' == verify_certificate('not json').check
    assert 'schema' == verify_certificate({'schema': 1}).check
    assert 'schema' == verify_certificate([]).check
    with pytest.raises(CertificateSchemaError):
        loads('{')

@pytest.mark.parametrize('g, p', [(2, 2), (2, 3), (3, 2)])
def test_exceptional_certificate(g, p):
    certificate = construct_certificate(g, p)
    assert 'exceptional' == certificate['kind']
    assert certificate['witness']['exceptional']
    assert len(certificate['witness']['transcript']) == g
    assert 'exceptional' == verify_certificate(certificate).status

def test_exceptional_transcript_is_checked():
    certificate = construct_certificate(2, 2)
    certificate['witness']['transcript'][1]['terms'] = []
    result = verify_certificate(certificate)
    assert ('fail', 'exceptional: prime powers of p^d+1') == \
        (result.status, result.check)

def test_special_certificate(special):
    assert 'special33' == special['kind']
    assert '78' == special['group']['order']
    assert ('937', '19') == (special['auxiliary']['l'],
                             special['auxiliary']['v'])
    assert ['1', '0'] == special['twist']['tau']
    assert 'pass' == verify_certificate(special).status

def test_special_certificate_checks_y(special):
    broken = copy.deepcopy(special)
    broken['group']['shape']['c'] = '3'
    result = verify_certificate(broken)
    assert ('fail', 'presentation: c of order 6 mod 13') == \
        (result.status, result.check)

def test_construction_arguments():
    with pytest.raises(ValueError):
        construct_certificate(1, 5)
    with pytest.raises(NotPrimeError):
        construct_certificate(2, 4)
    with pytest.raises(SearchCapExceeded):
        construct_certificate(2, 5, Settings(prime_search_cap=100))

def test_settings():
    settings = Settings(seed=3)
    assert 3 == settings.seed
    assert 10 ** 7 == settings.prime_search_cap
    with pytest.raises(TypeError):
        Settings(prime_cap=10)

@pytest.mark.parametrize('g, p', [(2, 7), (3, 5), (4, 3), (7, 2)])
def test_round_trip(g, p):
    certificate = construct_certificate(g, p, Settings(samples=200))
    assert 'standard' == certificate['kind']
    assert 'pass' == verify_certificate(dumps(certificate)).status

def tampered(certificate, path, value):
    broken = copy.deepcopy(certificate)
    node = broken
    for key in path[:-1]:
        node = node[key]
    node[path[-1]] = value(node[path[-1]]) if callable(value) else value
    broken['digest'] = digest(broken)
    return verify_certificate(broken)

def bumped(M, i, j, p):
    M = copy.deepcopy(M)
    M[i][j] = (int(M[i][j]) + 1) % p
    return M

@pytest.mark.parametrize('path, value, check', [
    (('tower', 'k_modulus'), [0, 0, 1], 'tower: k modulus irreducible'),
    (('tower', 'l_modulus'), [[0, 0], [0, 0], [1, 0]],
     'tower: eta^2 generates k^x'),
    (('tower', 'x'), [0, 0, 0, 0], 'tower: order(x) = e'),
    (('tower', 'alpha'), lambda alpha: [2 * int(c) % 5 for c in alpha],
     'tower: Norm(alpha) = eta^(1-p)'),
    # same norm, opposite Y
    (('tower', 'alpha'), lambda alpha: [-int(c) % 5 for c in alpha],
     'tower: Y = alpha * frobenius'),
    (('group', 'J'), lambda J: bumped(J, 0, 1, 5),
     'tower: J is the trace form'),
    (('group', 'Y'), lambda Y: bumped(Y, 0, 0, 5),
     'tower: Y = alpha * frobenius'),
])
def test_tampered_tower_fails(certificate, path, value, check):
    result = tampered(certificate, path, value)
    assert ('fail', check) == (result.status, result.check)

@pytest.mark.parametrize('path, value', [
    (('tower', 'x'), [0, 0, 0, 0]),
    (('tower', 'alpha'), [1, 2, 3, 4]),
    (('tower', 'l_modulus'), [[0, 0], [0, 0], [1, 0]]),
])
def test_rewritten_tower_with_fresh_digest_fails(certificate, path, value):
    result = tampered(certificate, path, value)
    assert 'fail' == result.status
    assert result.check.startswith('tower: ')

@pytest.fixture(scope='module')
def binary():
    return construct_certificate(4, 2, Settings(samples=200))

@pytest.mark.parametrize('path, value, check', [
    (('tower', 'l_modulus'), lambda l: [l[0], [0, 0, 0, 0], l[2]],
     'tower: tr(eta) = 1'),
    (('tower', 'l_modulus'), lambda l: [[0, 0, 0, 0], l[1], l[2]],
     'tower: l modulus irreducible over k'),
    (('tower', 'alpha'), [0] * 8, 'tower: no alpha for p = 2'),
    (('group', 'Y'), lambda Y: bumped(Y, 1, 0, 2),
     'tower: Y = alpha * frobenius'),
])
def test_tampered_binary_tower_fails(binary, path, value, check):
    assert '4' == binary['witness']['d']
    result = tampered(binary, path, value)
    assert ('fail', check) == (result.status, result.check)

def test_lift_exponent_is_solved_again(certificate):
    path = ('embedding', 'lifts', 'N1', 'lift_exponent')
    k = int(certificate['embedding']['lifts']['N1']['lift_exponent'])
    # k + m solves the same congruence and gives the same words
    for value in (str(k + 26), None):
        result = tampered(certificate, path, value)
        assert ('fail', 'lifts: N1 congruence re-solved') == \
            (result.status, result.check)

def test_lift_words_follow_the_exponent(certificate):
    path = ('embedding', 'lifts', 'p', 'tau')
    result = tampered(certificate, path,
                      lambda tau: [str((int(tau[0]) + 4) % 104), tau[1]])
    assert ('fail', 'lifts: p words from the exponent') == \
        (result.status, result.check)

def test_selmer_orders_are_recounted(certificate):
    result = tampered(certificate, ('selmer', 'cyclic_order'), '2')
    assert ('fail', 'selmer: cyclic conditions') == \
        (result.status, result.check)
    broken = copy.deepcopy(certificate)
    del broken['selmer']['cyclic_order']
    broken['digest'] = digest(broken)
    assert 'selmer: classes counted up to the cap' == \
        verify_certificate(broken).check

def test_enumeration_cap_reaches_cartan_check():
    # e = 104 powers of X for (2, 5)
    certificate = construct_certificate(2, 5, Settings(enumeration_cap=50))
    assert {'enumerated': False} == certificate['group']['cartan']
    assert certificate['group']['presentation']['order'] is None
    assert 'pass' == verify_certificate(certificate).status

def test_least_solution():
    # 4k = -1 (mod 13)
    assert 3 == least_solution(4, -1, 13)
    assert 4 == least_solution(6, 4, 10)
    assert 0 == least_solution(5, 10, 5)
    assert least_solution(2, 1, 4) is None

def test_lattice_index():
    # 2a + b = 0 (mod 4) leaves a free
    assert 4 == lattice_index([(2, 1)], 4, 2)
    assert 8 == lattice_index([(2, 2)], 4, 2)
    assert 27 == lattice_index([], 3, 3)

@given(st.integers(min_value=2, max_value=12),
       st.integers(min_value=1, max_value=3), st.data())
def test_lattice_index_counts_solutions(m, r, data):
    rows = data.draw(st.lists(
        st.lists(st.integers(min_value=0, max_value=m - 1),
                 min_size=r, max_size=r),
        max_size=4))
    expected = sum(
        1 for v in itertools.product(range(m), repeat=r)
        if all(0 == sum(a * b for a, b in zip(w, v)) % m for w in rows)
    )
    assert expected == lattice_index(rows, m, r)

@pytest.mark.parametrize('m', range(3, 101))
def test_selmer_order_dichotomy(m):
    assert (2 if 0 == m % 8 else 1) == selmer_order(m)
    assert 1 == selmer_order(m, with_2_condition=True)
