import pytest
import sympy

from gspcert.kg import (class_valuation, gsp_order, kg_exact, kg_sampled,
                        kg_stability, prime_exponent)
from gspcert.exceptions import NotPrimeError

def test_k2():
    kg = kg_exact(2)
    assert {2: 8, 3: 2, 5: 1} == kg.factors
    assert 360 * 32 == kg.value
    assert 8 == kg.exponent(2)
    assert 0 == kg.exponent(7)
    assert kg.divides(9) and not kg.divides(13)

def test_kg_is_cached():
    assert kg_exact(3) is kg_exact(3)

def test_gsp_order():
    # 2 * 3^4 * (3^2-1) * (3^4-1)
    assert 103680 == gsp_order(2, 3)
    assert 0 == gsp_order(3, 7) % kg_exact(3).value
    with pytest.raises(NotPrimeError):
        gsp_order(2, 9)
    with pytest.raises(ValueError):
        gsp_order(0, 3)

def test_sampled_agrees_with_exact():
    for g in (2, 3):
        assert kg_exact(g).value == kg_sampled(g, 10000)
    with pytest.raises(ValueError):
        kg_sampled(2, 6)

def test_class_valuation():
    # modulo 8: 3-1 = 2, while 3^2-1 and 3^4-1 vanish
    assert (7, False) == class_valuation(3, 2, 2, 3)
    # modulo 9: 2-1, 2^2-1 = 3, 2^4-1 = 15
    assert (2, True) == class_valuation(2, 2, 3, 2)

def test_prime_exponent():
    assert 8 == prime_exponent(2, 2)
    assert 2 == prime_exponent(2, 3)
    assert 1 == prime_exponent(2, 5)

@pytest.mark.parametrize('g', [2, 3, 4, 5,
                               pytest.param(6, marks=pytest.mark.slow),
                               pytest.param(7, marks=pytest.mark.slow),
                               pytest.param(8, marks=pytest.mark.slow)])
def test_odd_exponents_below_g_squared(g):
    kg = kg_exact(g)
    assert set(kg.factors) <= set(sympy.primerange(2, 2 * g + 2))
    for q, k in kg.factors.items():
        assert q <= 2 * g + 1
        if q > 2:
            assert k < g * g

def test_stability():
    assert kg_stability(2, 100, 1000)
    with pytest.raises(ValueError):
        kg_stability(2, 100, 50)

def test_to_json():
    assert {'g': '2', 'factors': {'2': '8', '3': '2', '5': '1'},
            'value': '11520'} == kg_exact(2).to_json()

@pytest.mark.parametrize('g', [2, 3, 4, 5,
                               pytest.param(6, marks=pytest.mark.slow)])
def test_sampled_and_stable_up_to_6(g):
    kg = kg_exact(g)
    assert kg.value == kg_sampled(g, 1000) == kg_sampled(g, 10000)
    assert kg_stability(g, 100, 10000)
    assert kg_stability(g, 2 * g + 1, 10000)
