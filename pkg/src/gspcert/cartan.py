# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""\
================================================================
:mod:`gspcert.cartan` -- The non-split Cartan normalizer N
================================================================

``C`` is the cyclic group of multiplications by elements of ``l'^x``
whose norm to ``k`` lies in ``F_p^x``; it has order
``e = (p^d+1)(p-1)`` and is generated by ``X``. ``N`` is generated by
``C`` and ``Y``, the matrix of Frobenius (``p = 2``) or of
``v -> alpha * v^p`` with ``Norm(alpha) = eta^(1-p)`` (odd ``p``).

Every structural claim is machine-checked; a failed check raises
:class:`~gspcert.exceptions.VerificationError` naming the relation.
"""

import sympy

from . import gvars
from .exceptions import VerificationError
from .fieldtower import build_tower, find_alpha, find_cartan_generator
from .symplectic import (SympMatrix, multiply_by, operator_matrix,
                         alpha_frobenius, similitude_factor)

__all__ = ['NormalizerData',
           'build_normalizer',
           'cartan_subgroup_check',
           'similitude_character_check',
           'verify_presentation']

default_enumeration_cap = 100000

class NormalizerData(object):

    (   "NormalizerData("
            "tower:FieldTower, "
            "x:TowerElement, "
            "X:SympMatrix, "
            "Y:SympMatrix, "
            "alpha:TowerElement=None"
        ")"
    )

    __slots__ = ['X',
                 'Y',
                 'alpha',
                 'tower',
                 'transcript',
                 'x']

    def __init__(self, tower, x, X, Y, alpha=None):
        self.tower = tower
        self.x     = x
        self.X     = X
        self.Y     = Y
        self.alpha = alpha
        self.transcript = []

    @property
    def p(self):
        return self.tower.p

    @property
    def d(self):
        return self.tower.d

    @property
    def m(self):
        return self.p ** self.d + 1

    @property
    def e(self):
        return self.m * (self.p - 1)

    @property
    def t(self):
        return 0 if 2 == self.p else self.e // 2

    @property
    def y_order(self):
        return 2 * self.d if 2 == self.p else 4 * self.d

    @property
    def form(self):
        return self.X.form

    @property
    def norm_x(self):
        return self.x.norm().pair[0][0]

    def require(self, check, condition, detail=''):
        if not condition:
            gvars.logger.error(f'N({self.p}, {self.d}): {check} failed')
            raise VerificationError(check, detail)
        self.transcript.append(check)

    def __repr__(self):
        return f'<NormalizerData p={self.p} d={self.d} e={self.e}>'

def build_normalizer(p, d):
    (   "build_normalizer("
            "p:int, "
            "d:int"
        ") -> NormalizerData" """

    Construct ``X`` and ``Y`` and check ``order(X) = e``, ``Y`` in Sp,
    ``order(Y) = 2d`` (``p = 2``) or ``4d`` (odd ``p``) and
    ``Y X Y^-1 = X^p``.
    """)
    tower = build_tower(p, d)
    x = find_cartan_generator(tower)
    X = multiply_by(tower, x)
    if 2 == p:
        alpha = None
        Y = operator_matrix(tower, 'frobenius', 1)
    else:
        alpha = find_alpha(tower).alpha
        Y = alpha_frobenius(tower, alpha, 1)
    nd = NormalizerData(tower, x, X, Y, alpha)
    e = nd.e
    nd.require('order(X) = e', X.order(multiple=e) == e,
               f'e = {e}')
    nd.require('Y in Sp', 1 == similitude_factor(Y))
    nd.require('order(Y)',
               Y.order(multiple=4 * d) == nd.y_order,
               f'expected {nd.y_order}')
    nd.require('Y X Y^-1 = X^p', Y * X == X ** p * Y)
    gvars.logger.info(f'built N for (p, d) = ({p}, {d}): |C| = {e}, '
                      f'order(Y) = {nd.y_order}')
    return nd

def verify_presentation(nd, cap=-1):
    (   "verify_presentation("
            "nd:NormalizerData, "
            "cap:int=-1"
        ") -> dict" """

    Check the defining relations of ``N`` on the matrices and count the
    distinct normal forms ``X^a Y^b`` (``0 <= a < e``, ``0 <= b < 2d``).
    Counting is skipped (``'order': None``) when ``e*2d`` exceeds `cap`.
    """)
    if -1 == cap:
        cap = default_enumeration_cap
    X, Y, e, d, p = nd.X, nd.Y, nd.e, nd.d, nd.p
    identity = SympMatrix.identity(nd.form)
    nd.require('X^e = I', (X ** e).is_identity())
    if 2 == p:
        nd.require('Y^(2d) = I', (Y ** (2 * d)).is_identity())
    else:
        nd.require('Y^(2d) = X^(e/2)', Y ** (2 * d) == X ** (e // 2))
    nd.require('Y X Y^-1 = X^p', Y * X * Y.inverse() == X ** p)
    expected = 2 * d * e
    order = None
    if expected <= cap:
        x_powers = [identity]
        for _ in range(e - 1):
            x_powers.append(x_powers[-1] * X)
        y_powers = [identity]
        for _ in range(2 * d - 1):
            y_powers.append(y_powers[-1] * Y)
        keys = set()
        for Xa in x_powers:
            for Yb in y_powers:
                keys.add((Xa * Yb).key)
        order = len(keys)
        nd.require('|N| = 2d*e', order == expected,
                   f'counted {order}, expected {expected}')
    return \
        {
                'relations': 'pass',
                    'order': order,
           'expected_order': expected
        }

def similitude_character_check(nd):
    (   "similitude_character_check("
            "nd:NormalizerData"
        ") -> dict" """

    ``similitude(X) = Norm(x)``, ``similitude(Y) = 1`` and the
    similitude character of ``N`` maps onto ``F_p^x``.
    """)
    p = nd.p
    c_x = similitude_factor(nd.X)
    c_y = similitude_factor(nd.Y)
    nd.require('similitude(X) = Norm(x)', c_x == nd.norm_x,
               f'{c_x} != {nd.norm_x}')
    nd.require('similitude(Y) = 1', 1 == c_y)
    if 2 == p:
        image_order = 1
    else:
        image_order = int(sympy.n_order(c_x, p))
    nd.require('similitude surjective', image_order == p - 1,
               f'image of order {image_order}')
    return \
        {
            'similitude_X': c_x,
            'similitude_Y': c_y,
             'image_order': image_order
        }

def cartan_subgroup_check(nd, cap=-1):
    (   "cartan_subgroup_check("
            "nd:NormalizerData, "
            "cap:int=-1"
        ") -> dict" """

    By enumeration of the powers of ``X``: the powers in Sp are exactly
    those of ``X^(p-1)`` (the group ``C_1`` of order ``p^d+1``), and
    conjugation by ``Y`` is the ``p``-power map on ``<X>``. Skipped
    when the ``e`` powers of ``X`` outnumber `cap`.
    """)
    if -1 == cap:
        cap = default_enumeration_cap
    if nd.e > cap:
        return {'enumerated': False}
    X, Y, e, p = nd.X, nd.Y, nd.e, nd.p
    powers = [SympMatrix.identity(nd.form)]
    for _ in range(e - 1):
        powers.append(powers[-1] * X)
    symplectic = [a for a, M in enumerate(powers)
                  if 1 == similitude_factor(M)]
    nd.require('<X> cap Sp = <X^(p-1)>',
               symplectic == list(range(0, e, p - 1)))
    nd.require('|C_1| = p^d+1', len(symplectic) == nd.m)
    for a, M in enumerate(powers):
        if Y * M != powers[a * p % e] * Y:
            nd.require('Y X^a Y^-1 = X^(pa)', False, f'a = {a}')
    nd.transcript.append('Y X^a Y^-1 = X^(pa)')
    return \
        {
            'enumerated': True,
                'C1_order': len(symplectic)
        }
