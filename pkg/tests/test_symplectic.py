import numpy
import pytest
from hypothesis import given
import hypothesis.strategies as st

from gspcert.exceptions import (NotSimilitude, ShapeMismatch,
                                VerificationError)
from gspcert.fieldtower import build_tower, find_cartan_generator
from gspcert.symplectic import (GramForm, SympMatrix, alpha_frobenius,
                                embed_gsp, extend_form, gram_matrix,
                                inverse_mod_p, multiply_by,
                                nullspace_mod_p, operator_matrix,
                                rank_mod_p, similitude_factor,
                                wedge_pairing)

def test_linear_algebra():
    A = numpy.array([[1, 2], [3, 4]])
    assert 2 == rank_mod_p(A, 5)
    # det = -2 = 0 mod 2
    assert 1 == rank_mod_p(A, 2)
    inverse = inverse_mod_p(A, 5)
    assert numpy.array_equal(numpy.eye(2), A @ inverse % 5)
    with pytest.raises(ZeroDivisionError):
        inverse_mod_p(A, 2)
    (v,) = nullspace_mod_p(A, 2)
    assert not numpy.any(A @ v % 2)

def test_gram_form_validation():
    with pytest.raises(VerificationError):
        GramForm([[0, 1], [1, 0]], 3)
    with pytest.raises(VerificationError):
        GramForm([[0, 0], [0, 0]], 3)
    with pytest.raises(ShapeMismatch):
        GramForm([[0]], 3)

def test_wedge_pairing(tower):
    form = gram_matrix(tower)
    basis = tower.basis()
    x, y = tower.element(3 % tower.l_order), tower.eta
    assert 0 == wedge_pairing(tower, x, x)
    assert wedge_pairing(tower, x, y) == \
        -wedge_pairing(tower, y, x) % tower.p
    assert form.n == len(basis) == 2 * tower.d

def test_multiplication_similitude(tower):
    x = find_cartan_generator(tower)
    X = multiply_by(tower, x)
    assert x.norm().pair[0][0] == similitude_factor(X)
    if 2 == tower.p:
        assert 1 == similitude_factor(operator_matrix(tower, 'frobenius', 1))

def test_alpha_frobenius_in_sp():
    tower = build_tower(5, 1)
    target = tower.eta ** (1 - 5)
    alpha = next(a for a in tower.elements(start=1) if a.norm() == target)
    Y = alpha_frobenius(tower, alpha)
    assert 1 == similitude_factor(Y)

def test_not_similitude():
    form = gram_matrix(build_tower(3, 1))
    M = SympMatrix([[1, 1], [0, 1]], form)
    assert 1 == similitude_factor(M)
    N = SympMatrix([[1, 0], [0, 0]], form)
    with pytest.raises(NotSimilitude):
        similitude_factor(N)

@given(st.integers(min_value=1, max_value=48),
       st.integers(min_value=-5, max_value=5))
def test_matrix_powers(a, n):
    tower = build_tower(7, 1)
    X = multiply_by(tower, tower.element(a))
    assert X ** n == multiply_by(tower, tower.element(a) ** n)
    assert (X ** n) * (X ** -n) == SympMatrix.identity(X.form)

def test_order():
    tower = build_tower(3, 1)
    X = multiply_by(tower, find_cartan_generator(tower))
    assert 8 == X.order()
    assert 8 == X.order(multiple=16)
    with pytest.raises(VerificationError):
        X.order(multiple=3)

def test_embed_gsp():
    tower = build_tower(5, 1)
    X = multiply_by(tower, find_cartan_generator(tower))
    c = similitude_factor(X)
    big = embed_gsp(X, 3)
    assert (6, 6) == big.A.shape
    assert c == similitude_factor(big)
    assert extend_form(X.form, 3) == big.form
    assert embed_gsp(X, 1) is X
    with pytest.raises(ValueError):
        embed_gsp(embed_gsp(X, 2), 1)

def test_mismatched_forms():
    A = multiply_by(build_tower(3, 1), build_tower(3, 1).eta)
    B = multiply_by(build_tower(3, 2), build_tower(3, 2).eta)
    with pytest.raises(ShapeMismatch):
        A * B

@given(st.integers(min_value=1, max_value=48),
       st.integers(min_value=1, max_value=48),
       st.integers(min_value=1, max_value=4))
def test_embed_gsp_is_a_homomorphism(a, b, g):
    tower = build_tower(7, 1)
    target = tower.eta ** (1 - 7)
    alpha = next(z for z in tower.elements(start=1) if z.norm() == target)
    A = multiply_by(tower, tower.element(a))
    B = multiply_by(tower, tower.element(b)) * alpha_frobenius(tower, alpha)
    assert embed_gsp(A * B, g) == embed_gsp(A, g) * embed_gsp(B, g)
    assert similitude_factor(embed_gsp(A * B, g)) == \
        similitude_factor(A) * similitude_factor(B) % 7

@pytest.mark.parametrize('p, d', [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1),
                                  (7, 1)])
def test_multiplication_is_injective(p, d):
    tower = build_tower(p, d)
    matrices = {multiply_by(tower, z) for z in tower.elements(start=1)}
    assert tower.l_order - 1 == len(matrices)

@pytest.mark.parametrize('p, d', [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2),
                                  (5, 1), (5, 2), (7, 1)])
def test_norm_is_surjective(p, d):
    tower = build_tower(p, d)
    norms = {z.norm() for z in tower.elements(start=1)}
    assert p ** d - 1 == len(norms)
    assert all(n.in_k() and not n.is_zero() for n in norms)
