import pytest
from hypothesis import given
import hypothesis.strategies as st

from gspcert.exceptions import ShapeMismatch
from gspcert.fieldtower import (build_tower, cartan_order, check_tower,
                                find_alpha, find_cartan_generator,
                                tower_arith)

def test_modulus_search_order():
    assert (1, 0, 1) == build_tower(3, 2).k_modulus
    assert (1, 1, 1) == build_tower(2, 2).k_modulus
    assert (0, 1) == build_tower(2, 1).k_modulus

def test_eta_generates_for_odd_p():
    tower = build_tower(3, 2)
    assert 16 == tower.eta.order()
    assert not tower.eta.in_k()
    assert 2 == tower.trace_k_to_p(tower.one)

def test_eta_trace_for_p_2(tower):
    check_tower(tower)
    if 2 == tower.p:
        assert tower.one == tower.trace_l_to_k(tower.eta)

def test_element_index_round_trip(tower):
    for index in (0, 1, tower.l_order - 1):
        assert index == tower.element(index).index

def elements(p, d):
    return st.integers(min_value=1, max_value=p ** (2 * d) - 1).map(
        build_tower(p, d).element)

@pytest.mark.parametrize('pd', [(2, 2), (3, 2), (5, 1), (2, 3)])
def test_field_axioms(pd):
    @given(elements(*pd), elements(*pd), elements(*pd))
    def check(x, y, z):
        assert x * y == y * x
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x.tower.one == x * x.inverse()
        assert x == (x / y) * y
    check()

@pytest.mark.parametrize('pd', [(2, 2), (3, 2), (5, 2)])
def test_norm_and_trace(pd):
    tower = build_tower(*pd)
    d = tower.d
    @given(elements(*pd), elements(*pd))
    def check(x, y):
        assert (x * y).norm() == x.norm() * y.norm()
        assert x.norm().in_k()
        assert x.norm() == x * tower.conjugate(x)
        assert tower.conjugate(x) == tower.frobenius_power(x, d)
        assert tower.frobenius_power(x, 2 * d) == x
        assert tower.trace_l_to_p(x) == \
            tower.trace_k_to_p(tower.trace_l_to_k(x))
    check()

def test_power_conventions():
    tower = build_tower(5, 1)
    x = tower.element(7)
    assert tower.one == x ** 0
    assert x.inverse() == x ** -1
    with pytest.raises(ZeroDivisionError):
        tower.zero ** 0
    with pytest.raises(ZeroDivisionError):
        tower.zero.inverse()

def test_cartan_generator(tower):
    x = find_cartan_generator(tower)
    p, d = tower.p, tower.d
    assert cartan_order(p, d) == x.order()
    norm = x.norm()
    assert norm.in_k() and not any(norm.pair[0][1:])
    if p > 2:
        # the norm generates F_p^x
        c = norm.pair[0][0]
        assert p - 1 == len({pow(c, i, p) for i in range(p - 1)})

def test_alpha():
    tower = build_tower(3, 1)
    choice = find_alpha(tower)
    assert choice.alpha.norm() == tower.eta ** (1 - 3)
    with pytest.raises(ValueError):
        find_alpha(build_tower(2, 2))

def test_tower_arith():
    tower = build_tower(3, 2)
    x, y = tower.element(5), tower.element(11)
    assert x * y == tower_arith('mul', x, y)
    assert x ** 4 == tower_arith('pow', x, 4)
    assert tower.frobenius_power(x, 1) == \
        tower_arith('frobenius_power', x, 1)
    with pytest.raises(ValueError):
        tower_arith('sqrt', x)
    with pytest.raises(ShapeMismatch):
        tower_arith('mul', x, build_tower(3, 1).element(2))
    with pytest.raises(ShapeMismatch):
        tower.trace_k_to_p(tower.eta)
