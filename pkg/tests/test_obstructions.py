import pytest

from gspcert import obstructions
from gspcert.exceptions import (LocalProblemsFailed, SearchCapExceeded,
                                VerificationError)
from gspcert.metacyclic import GroupShape, WordElement
from gspcert.obstructions import (Constraint, EmbeddingInstance,
                                  complex_conjugation, decompose_2d,
                                  eprime_parity, find_ramified_primes,
                                  find_split_prime, frobenius_class,
                                  lift_at_infinity, lift_at_p,
                                  local_twist_data, obstruction_report,
                                  special_split_constraints,
                                  split_constraints)

def test_decompose_2d():
    assert (1, 1) == decompose_2d(1)
    assert (2, 1) == decompose_2d(2)
    assert (1, 3) == decompose_2d(3)
    assert (2, 3) == decompose_2d(6)
    with pytest.raises(ValueError):
        decompose_2d(0)

@pytest.mark.parametrize('p, d, N1, N2', [(3, 1, 7, None),
                                          (7, 1, 11, None),
                                          (5, 2, 13, None),
                                          (3, 3, 43, 7)])
def test_ramified_primes(p, d, N1, N2):
    instance = find_ramified_primes(p, d)
    assert (N1, N2) == (instance.N1, instance.N2)
    instance.check()

def test_ramified_primes_need_odd_p():
    with pytest.raises(ValueError):
        find_ramified_primes(2, 3)

def test_instance_check():
    # 29 = 5 mod 8 but 5 is a square modulo 29
    with pytest.raises(VerificationError) as info:
        EmbeddingInstance(5, 2, 29).check()
    assert 'p is a non-residue mod N_1' == info.value.check
    with pytest.raises(VerificationError) as info:
        EmbeddingInstance(3, 3, 43).check()
    assert 'N_2 prime' == info.value.check
    with pytest.raises(VerificationError):
        EmbeddingInstance(3, 1, 7, 5).check()

def test_frobenius_classes():
    instance = find_ramified_primes(5, 2)
    # 5 = 2^9 modulo 13
    assert (0, 1) == frobenius_class(instance, 'p')[1:]
    # 13 = 3 = 2^3 modulo 5
    assert (3, 0) == frobenius_class(instance, 'N1')[1:]
    assert ('infinity', 2, 2) == complex_conjugation(instance)
    with pytest.raises(ValueError):
        frobenius_class(instance, 'N2')
    with pytest.raises(ValueError):
        frobenius_class(instance, 'l')

def test_frobenius_at_n2():
    instance = find_ramified_primes(3, 3)
    frob = frobenius_class(instance, 'N2')
    assert 0 == frob.y % instance.d1
    assert 1 == frobenius_class(instance, 'p').y % 2

def test_lift_at_infinity():
    shape = GroupShape.for_normalizer(3, 1)
    assert WordElement(shape, 1, 1) == lift_at_infinity(shape)

def test_lift_at_p():
    shape = GroupShape.for_normalizer(3, 1)
    lift = lift_at_p(shape, 1)
    assert lift.solvable and lift.holds()
    assert shape.y == lift.sigma
    unsolvable = lift_at_p(shape, 2)
    assert not unsolvable.solvable
    assert unsolvable.confirmed is True
    assert lift_at_p(shape, 2, cap=1).confirmed is None

def test_eprime_parity():
    shape = GroupShape.for_normalizer(3, 2)
    assert (5, True) == eprime_parity(shape, 3)
    assert (10, True) == eprime_parity(shape, 2)
    with pytest.raises(ValueError):
        eprime_parity(shape, 1)

@pytest.mark.parametrize('p, d', [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2),
                                  (3, 3)])
def test_obstruction_report(p, d):
    report = obstruction_report(p, d)
    assert not report['trivial']
    places = {'infinity', 'p', 'N1'}
    if report['instance']['N2'] is not None:
        places.add('N2')
    assert places == set(report['lifts']) == set(report['frobenius'])

def test_obstruction_report_p_2():
    assert {'p': '2', 'd': '3', 'trivial': True} == obstruction_report(2, 3)

def test_split_primes():
    instance = find_ramified_primes(5, 2)
    l = find_split_prime(split_constraints(5, 2, instance, 13))
    v = find_split_prime(split_constraints(5, 2, instance), exclude=(l,))
    assert (131, 521) == (l, v)
    with pytest.raises(SearchCapExceeded):
        find_split_prime(split_constraints(5, 2, instance, 13), cap=100)
    with pytest.raises(ValueError):
        find_split_prime([Constraint('cube', 1, 7)])

def test_special_split_primes():
    l = find_split_prime(special_split_constraints(13))
    v = find_split_prime(special_split_constraints(13)[:1], exclude=(l,))
    assert (937, 19) == (l, v)

def test_local_twist_data():
    shape = GroupShape.for_normalizer(5, 2)
    datum = local_twist_data(131, 13, shape)
    assert ['8', '0'] == datum.tau.to_json()
    assert datum.sigma.is_identity()
    assert 13 == datum.tau.order()
    with pytest.raises(ValueError):
        local_twist_data(131, 7, shape)

@pytest.mark.parametrize('d', [1, 2, 3])
@pytest.mark.parametrize('p', [3, 5, 7, 11])
def test_lift_at_p_parity(p, d):
    shape = GroupShape.for_normalizer(p, d)
    for a in range(1, 2 * d + 1):
        lift = lift_at_p(shape, a)
        assert lift.solvable == (1 == a % 2)
        if lift.solvable:
            assert lift.holds()
        elif shape.order <= 10000:
            assert lift.confirmed is True
        else:
            assert lift.confirmed is None

@pytest.mark.parametrize('d', [1, 2, 3])
@pytest.mark.parametrize('p', [3, 5, 7, 11])
def test_eprime_parity_sweep(p, d):
    shape = GroupShape.for_normalizer(p, d)
    for a in range(2, 2 * d + 1):
        value, verdict = eprime_parity(shape, a)
        assert verdict
        assert a % 2 == value % 2
        assert 0 == (p ** d + 1) % value

@pytest.mark.parametrize('d', [1, 2, 3])
@pytest.mark.parametrize('p', [3, 5, 7, 11])
def test_obstruction_report_sweep(p, d):
    report = obstruction_report(p, d)
    assert 'infinity' in report['lifts']
    for lift in report['lifts'].values():
        if 'word' not in lift:
            assert lift['lift_exponent'] is not None

def test_local_problems_are_reported_together(monkeypatch):
    def fail(instance, a):
        raise VerificationError('congruence at N_1 solvable', f'a = {a}')
    monkeypatch.setattr(obstructions, 'lift_at_N1', fail)
    with pytest.raises(LocalProblemsFailed) as info:
        obstruction_report(5, 2)
    err = info.value
    assert isinstance(err, VerificationError)
    assert 'local problems' == err.check
    assert ['congruence at N_1 solvable'] == \
        [failure.check for failure in err.failures]
    assert err.detail.startswith('congruence at N_1 solvable: a = ')
