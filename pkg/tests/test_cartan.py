import pytest

from gspcert.cartan import (NormalizerData, build_normalizer,
                            cartan_subgroup_check,
                            similitude_character_check, verify_presentation)
from gspcert.exceptions import VerificationError
from gspcert.symplectic import SympMatrix, similitude_factor

def test_presentation(normalizer):
    nd = normalizer
    report = verify_presentation(nd)
    assert 'pass' == report['relations']
    assert 2 * nd.d * nd.e == report['order'] == report['expected_order']
    assert 'Y X Y^-1 = X^p' in nd.transcript

def test_presentation_count_skipped_above_cap():
    nd = build_normalizer(3, 2)
    report = verify_presentation(nd, cap=10)
    assert report['order'] is None
    assert 80 == report['expected_order']

def test_orders_for_3_2():
    nd = build_normalizer(3, 2)
    assert (20, 10, 8) == (nd.e, nd.m, nd.Y.order(multiple=16))

def test_y_for_p_2():
    nd = build_normalizer(2, 2)
    assert nd.alpha is None
    assert (nd.Y ** 4).is_identity()
    assert 4 == nd.y_order

def test_similitude_character(normalizer):
    nd = normalizer
    report = similitude_character_check(nd)
    assert 1 == report['similitude_Y']
    assert report['similitude_X'] == nd.norm_x
    assert max(nd.p - 1, 1) == report['image_order']

def test_cartan_subgroup(normalizer):
    nd = normalizer
    report = cartan_subgroup_check(nd)
    assert report['enumerated']
    assert nd.m == report['C1_order']
    assert {'enumerated': False} == cartan_subgroup_check(nd, cap=1)

def test_broken_y_is_reported():
    nd = build_normalizer(3, 1)
    broken = NormalizerData(nd.tower, nd.x, nd.X,
                            SympMatrix.identity(nd.form), nd.alpha)
    with pytest.raises(VerificationError) as info:
        verify_presentation(broken)
    assert 'Y^(2d) = X^(e/2)' == info.value.check

def test_x_powers_leave_sp():
    nd = build_normalizer(5, 1)
    assert 1 != similitude_factor(nd.X)
    assert 1 == similitude_factor(nd.X ** (nd.p - 1))

def test_cartan_cap_bounds_powers_of_x():
    nd = build_normalizer(3, 2)
    assert 20 == nd.e
    assert cartan_subgroup_check(nd, cap=nd.e)['enumerated']
    assert {'enumerated': False} == cartan_subgroup_check(nd, cap=nd.e - 1)
