# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""\
=============================================================
:mod:`gspcert.fieldtower` -- The tower F_p in k in l'
=============================================================

Arithmetic in ``k = F_{p^d} = F_p[s]/(f)`` and in its quadratic
extension ``l' = k[eta]/(eta^2 + b1*eta + b0)``.

* ``f`` is the monic irreducible polynomial of degree ``d`` whose
  coefficient vector, read as a base-``p`` integer (lowest degree as the
  least significant digit), is smallest.
* For odd ``p``, ``b1 = 0`` and ``-b0 = gamma`` is the first primitive
  root of ``k^x`` in basis order, so ``eta^2 = gamma``.
* For ``p = 2``, ``b1 = 1`` and ``b0 = u`` is the first element of ``k``
  with ``tr_{k|F_2}(u) = 1``, so ``tr_{l'|k}(eta) = 1``.

An element ``a + b*eta`` of ``l'`` has the F_p-coordinates
``(a_0, ..., a_{d-1}, b_0, ..., b_{d-1})``. Enumerating coordinates as
base-``p`` digits, ``a_0`` least significant, gives the *basis order*
every search in this package scans.

Example:

    >>> tower = build_tower(3, 2)
    >>> eta = tower.eta
    >>> eta.order()
    16
    >>> tower.trace_k_to_p(tower.one)
    2
"""

import collections

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (gf_gcdex, gf_irreducible_p, gf_mul,
                                     gf_rem, gf_strip)

from . import arith
from . import gvars
from . import lrucache
from .exceptions import ShapeMismatch, VerificationError

__all__ = ['AlphaChoice',
           'FieldTower',
           'TowerElement',
           'build_tower',
           'find_alpha',
           'find_cartan_generator',
           'tower_arith']

class FieldTower(object):

    (   "FieldTower("
            "p:int, "
            "d:int, "
            "k_modulus:tuple, "
            "l_modulus:tuple"
        ")" """

    Use :func:`build_tower` rather than calling this directly.
    `k_modulus` lists the coefficients of ``f`` lowest degree first,
    leading 1 included; `l_modulus` is the pair ``(b0, b1)`` of
    ``k``-coordinate tuples.
    """)

    __slots__ = ['d',
                 'k_modulus',
                 'k_order',
                 'l_modulus',
                 'l_order',
                 'p',
                 '_f']

    def __init__(self, p, d, k_modulus, l_modulus):
        self.p = p
        self.d = d
        self.k_modulus = tuple(k_modulus)
        self.l_modulus = (tuple(l_modulus[0]), tuple(l_modulus[1]))
        self.k_order = p ** d
        self.l_order = p ** (2 * d)
        self._f = gf_strip(list(reversed(self.k_modulus)))

    def __repr__(self):
        return f'<FieldTower p={self.p} d={self.d}>'

    def __eq__(self, other):
        return isinstance(other, FieldTower) and \
               (self.p, self.d, self.k_modulus, self.l_modulus) == \
               (other.p, other.d, other.k_modulus, other.l_modulus)

    def __hash__(self):
        return hash((self.p, self.d, self.k_modulus, self.l_modulus))

    # k = F_p[s]/(f), elements are coordinate tuples of length d

    def k_zero(self):
        return (0,) * self.d

    def k_scalar(self, c):
        return (c % self.p,) + (0,) * (self.d - 1)

    def k_add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def k_sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def k_neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def k_mul(self, a, b):
        p = self.p
        product = \
            gf_rem(
                gf_mul(self._to_gf(a), self._to_gf(b), p, ZZ),
                self._f, p, ZZ
            )
        return self._from_gf(product)

    def k_inv(self, a):
        if not any(a):
            raise ZeroDivisionError('inversion of zero in k')
        s, t, h = gf_gcdex(self._to_gf(a), self._f, self.p, ZZ)
        if [1] != [int(c) for c in h]:
            raise VerificationError('k is a field',
                                    f'{a} is not invertible')
        return self._from_gf(s)

    def k_pow(self, a, n):
        if n < 0:
            a = self.k_inv(a)
            n = -n
        result = self.k_scalar(1)
        while n:
            if n & 1:
                result = self.k_mul(result, a)
            a = self.k_mul(a, a)
            n >>= 1
        return result

    def k_order_of(self, a):
        n = self.k_order - 1
        one = self.k_scalar(1)
        if one != self.k_pow(a, n):
            raise VerificationError('k^x order', f'{a} is not a unit')
        for r in arith.factorize(n):
            while 0 == n % r and one == self.k_pow(a, n // r):
                n //= r
        return n

    def k_element(self, index):
        p = self.p
        coords = []
        for _ in range(self.d):
            index, c = divmod(index, p)
            coords.append(c)
        return tuple(coords)

    def k_trace(self, a):
        (   "k_trace("
                "a:tuple"
            ") -> int" """

        ``tr_{k|F_p}(a) = a + a^p + ... + a^(p^(d-1))``.
        """)
        total = self.k_zero()
        x = a
        for _ in range(self.d):
            total = self.k_add(total, x)
            x = self.k_pow(x, self.p)
        if any(total[1:]):
            raise VerificationError('trace lands in F_p', f'{total}')
        return total[0]

    def _to_gf(self, a):
        return gf_strip([int(c) for c in reversed(a)])

    def _from_gf(self, f):
        coords = [int(c) % self.p for c in reversed(f)]
        return tuple(coords + [0] * (self.d - len(coords)))

    # l' = k[eta]/(eta^2 + b1*eta + b0)

    @property
    def zero(self):
        return TowerElement(self, (0,) * (2 * self.d))

    @property
    def one(self):
        return self.scalar(1)

    @property
    def eta(self):
        return self.from_pair(self.k_zero(), self.k_scalar(1))

    def scalar(self, c):
        return self.from_pair(self.k_scalar(c), self.k_zero())

    def from_pair(self, a, b):
        return TowerElement(self, tuple(a) + tuple(b))

    def from_k(self, a):
        return self.from_pair(a, self.k_zero())

    def element(self, index):
        (   "element("
                "index:int"
            ") -> TowerElement" """

        The element at position `index` of the basis order.
        """)
        p = self.p
        coords = []
        for _ in range(2 * self.d):
            index, c = divmod(index, p)
            coords.append(c)
        return TowerElement(self, tuple(coords))

    def elements(self, start=0):
        for index in range(start, self.l_order):
            yield self.element(index)

    def basis(self):
        (   "basis() -> list" """

        The fixed F_p-basis ``1, s, ..., s^(d-1), eta, s*eta, ...,
        s^(d-1)*eta`` of ``l'``.
        """)
        n = 2 * self.d
        return [TowerElement(self, tuple(int(i == j) for j in range(n)))
                for i in range(n)]

    def mul(self, x, y):
        a, b = x.pair
        c, e = y.pair
        b0, b1 = self.l_modulus
        be = self.k_mul(b, e)
        first  = self.k_sub(self.k_mul(a, c), self.k_mul(b0, be))
        second = \
            self.k_sub(
                self.k_add(self.k_mul(a, e), self.k_mul(b, c)),
                self.k_mul(b1, be)
            )
        return self.from_pair(first, second)

    def conjugate(self, x):
        (   "conjugate("
                "x:TowerElement"
            ") -> TowerElement" """

        The non-trivial automorphism of ``l'`` over ``k``, i.e.
        ``x^(p^d)``.
        """)
        a, b = x.pair
        b1 = self.l_modulus[1]
        return self.from_pair(self.k_sub(a, self.k_mul(b1, b)),
                              self.k_neg(b))

    def norm_l_to_k(self, x):
        a, b = x.pair
        b0, b1 = self.l_modulus
        value = \
            self.k_add(
                self.k_sub(self.k_mul(a, a),
                           self.k_mul(b1, self.k_mul(a, b))),
                self.k_mul(b0, self.k_mul(b, b))
            )
        return self.from_k(value)

    def trace_l_to_k(self, x):
        a, b = x.pair
        b1 = self.l_modulus[1]
        return self.from_k(self.k_sub(self.k_add(a, a),
                                      self.k_mul(b1, b)))

    def trace_k_to_p(self, x):
        a, b = x.pair
        if any(b):
            raise ShapeMismatch(f'{x} does not lie in k')
        return self.k_trace(a)

    def trace_l_to_p(self, x):
        (   "trace_l_to_p("
                "x:TowerElement"
            ") -> int" """

        The absolute trace computed directly as the sum of the ``2d``
        Galois conjugates.
        """)
        total = self.zero
        y = x
        for _ in range(2 * self.d):
            total = total + y
            y = self.frobenius_power(y, 1)
        if not total.in_k() or any(total.pair[0][1:]):
            raise VerificationError('trace lands in F_p', f'{total}')
        return total.pair[0][0]

    def inverse(self, x):
        if x.is_zero():
            raise ZeroDivisionError('inversion of zero in l\'')
        n = self.norm_l_to_k(x).pair[0]
        n_inv = self.from_k(self.k_inv(n))
        return self.mul(self.conjugate(x), n_inv)

    def power(self, x, n):
        if x.is_zero():
            if n <= 0:
                raise ZeroDivisionError('non-positive power of zero')
            return self.zero
        n %= self.l_order - 1
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            n >>= 1
        return result

    def frobenius_power(self, x, i):
        (   "frobenius_power("
                "x:TowerElement, "
                "i:int"
            ") -> TowerElement" """

        ``x -> x^(p^i)``.
        """)
        if x.is_zero():
            return x
        return self.power(x, pow(self.p, i % (2 * self.d),
                                 self.l_order - 1))

    def order(self, x):
        (   "order("
                "x:TowerElement"
            ") -> int" """

        Multiplicative order of a non-zero element.
        """)
        if x.is_zero():
            raise ZeroDivisionError('zero has no multiplicative order')
        n = self.l_order - 1
        one = self.one
        for r in arith.factorize(n):
            while 0 == n % r and one == self.power(x, n // r):
                n //= r
        return n

    def to_json(self):
        b0, b1 = self.l_modulus
        return \
            {
                        'p': str(self.p),
                        'd': str(self.d),
                'k_modulus': list(self.k_modulus),
                'l_modulus': [list(b0), list(b1), list(self.k_scalar(1))]
            }

class TowerElement(object):

    __slots__ = ['coords', 'tower']

    def __init__(self, tower, coords):
        self.tower  = tower
        self.coords = coords

    def __repr__(self):
        return f'TowerElement({list(self.coords)})'

    @property
    def pair(self):
        d = self.tower.d
        return self.coords[:d], self.coords[d:]

    @property
    def index(self):
        p = self.tower.p
        value = 0
        for c in reversed(self.coords):
            value = value * p + c
        return value

    def is_zero(self):
        return not any(self.coords)

    def in_k(self):
        return not any(self.pair[1])

    def _check(self, other):
        if not isinstance(other, TowerElement):
            return NotImplemented
        if other.tower is not self.tower and other.tower != self.tower:
            raise ShapeMismatch('elements of different towers')
        return other

    def __eq__(self, other):
        if not isinstance(other, TowerElement):
            return NotImplemented
        return self.tower == other.tower and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        p = self.tower.p
        return TowerElement(self.tower,
                            tuple((x + y) % p for x, y in
                                  zip(self.coords, other.coords)))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        p = self.tower.p
        return TowerElement(self.tower, tuple(-x % p for x in self.coords))

    def __mul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self.tower.mul(self, other)

    def __truediv__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self.tower.mul(self, self.tower.inverse(other))

    def __pow__(self, n):
        return self.tower.power(self, n)

    def inverse(self):
        return self.tower.inverse(self)

    def norm(self):
        return self.tower.norm_l_to_k(self)

    def order(self):
        return self.tower.order(self)

    def to_json(self):
        return list(self.coords)

###########################################################################
#                              Construction                               #
###########################################################################

@lrucache.memoize(size=64)
def build_tower(p, d):
    (   "build_tower("
            "p:int, "
            "d:int"
        ") -> FieldTower" """

    Deterministic construction of the tower for ``(p, d)``; see the
    module documentation for the search orders.
    """)
    arith.check_prime(p)
    if d < 1:
        raise ValueError(f'd must be a positive integer, got {d}')
    k_modulus = find_k_modulus(p, d)
    tower = FieldTower(p, d, k_modulus, ((0,) * d, (0,) * d))
    if 2 == p:
        u = None
        for index in range(tower.k_order):
            candidate = tower.k_element(index)
            if 1 == tower.k_trace(candidate):
                u = candidate
                break
        l_modulus = (u, tower.k_scalar(1))
        gvars.logger.debug(f'tower ({p}, {d}): eta^2 = eta + {list(u)}')
    else:
        gamma = None
        for index in range(1, tower.k_order):
            candidate = tower.k_element(index)
            if tower.k_order_of(candidate) == tower.k_order - 1:
                gamma = candidate
                break
        l_modulus = (tower.k_neg(gamma), tower.k_zero())
        gvars.logger.debug(f'tower ({p}, {d}): eta^2 = {list(gamma)}')
    tower = FieldTower(p, d, k_modulus, l_modulus)
    check_tower(tower)
    return tower

def find_k_modulus(p, d):
    for code in range(p ** d):
        coeffs = []
        for _ in range(d):
            code, c = divmod(code, p)
            coeffs.append(c)
        coeffs.append(1)
        if gf_irreducible_p(list(reversed(coeffs)), p, ZZ):
            gvars.logger.debug(f'tower ({p}, {d}): f = {coeffs}')
            return tuple(coeffs)
    raise VerificationError('irreducible polynomial search',
                            f'none of degree {d} over F_{p}')

def check_tower(tower):
    (   "check_tower("
            "tower:FieldTower"
        ") -> None" """

    Re-verify the defining invariants; raises
    :class:`VerificationError` naming the first one that fails.
    """)
    p, d = tower.p, tower.d
    if not gf_irreducible_p(list(reversed(tower.k_modulus)), p, ZZ):
        raise VerificationError('k modulus irreducible')
    b0, b1 = tower.l_modulus
    if 2 == p:
        if 1 != tower.k_trace(b0):
            raise VerificationError('eta^2 + eta + u irreducible',
                                    'tr(u) != 1')
        if tower.trace_l_to_k(tower.eta) != tower.one:
            raise VerificationError('tr(eta) = 1')
    else:
        gamma = tower.k_neg(b0)
        if tower.k_order_of(gamma) != tower.k_order - 1:
            raise VerificationError('eta^2 generates k^x')
        # gamma is a non-square, hence t^2 - gamma has no root in k
        if tower.k_scalar(1) == tower.k_pow(gamma, (tower.k_order - 1) // 2):
            raise VerificationError('eta^2 - gamma irreducible')
        if tower.eta ** 2 != tower.from_k(gamma):
            raise VerificationError('eta^2 = gamma')
    if tower.eta.in_k():
        raise VerificationError('eta not in k')
    for x in tower.basis():
        if tower.frobenius_power(x, 2 * d) != x:
            raise VerificationError('frobenius^(2d) = id')

def tower_arith(op, *args):
    (   "tower_arith("
            "op:str, "
            "*args"
        ") -> TowerElement or int" """

    Named access to the tower operations: ``add``, ``sub``, ``mul``,
    ``inv``, ``pow``, ``trace_k_to_p``, ``trace_l_to_k``,
    ``norm_l_to_k`` and ``frobenius_power`` (``args = (x, i)``).
    """)
    if not args or not isinstance(args[0], TowerElement):
        raise ShapeMismatch('tower_arith needs a TowerElement operand')
    tower = args[0].tower
    for arg in args:
        if isinstance(arg, TowerElement) and arg.tower != tower:
            raise ShapeMismatch('elements of different towers')
    try:
        func = tower_ops[op]
    except KeyError:
        raise ValueError(f'unknown tower operation {op!r}') from None
    return func(tower, *args)

tower_ops = \
    {
                    'add': lambda t, x, y: x + y,
                    'sub': lambda t, x, y: x - y,
                    'mul': lambda t, x, y: t.mul(x, y),
                    'inv': lambda t, x: t.inverse(x),
                    'pow': lambda t, x, n: t.power(x, n),
           'trace_k_to_p': lambda t, x: t.trace_k_to_p(x),
           'trace_l_to_k': lambda t, x: t.trace_l_to_k(x),
           'trace_l_to_p': lambda t, x: t.trace_l_to_p(x),
            'norm_l_to_k': lambda t, x: t.norm_l_to_k(x),
        'frobenius_power': lambda t, x, i: t.frobenius_power(x, i)
    }

###########################################################################
#                            Special elements                             #
###########################################################################

def cartan_order(p, d):
    return (p ** d + 1) * (p - 1)

def find_cartan_generator(tower):
    (   "find_cartan_generator("
            "tower:FieldTower"
        ") -> TowerElement" """

    A generator ``x`` of the subgroup ``C`` of ``l'^x`` of elements whose
    norm to ``k`` lies in ``F_p^x``; ``C`` is cyclic of order
    ``e = (p^d+1)(p-1)``.

    ``z -> z^((p^d-1)/(p-1))`` maps ``l'^x`` onto ``C``; the result is
    the image of the first ``z`` in basis order whose image has order
    exactly ``e``.
    """)
    p, d = tower.p, tower.d
    e = cartan_order(p, d)
    exponent = (p ** d - 1) // (p - 1)
    for z in tower.elements(start=1):
        x = z ** exponent
        if x.order() == e:
            norm = x.norm()
            if not norm.in_k() or any(norm.pair[0][1:]):
                raise VerificationError('Norm(x) in F_p^x', f'{norm}')
            gvars.logger.debug(
                f'cartan generator ({p}, {d}): z = {z}, x = {x}'
            )
            return x
    raise VerificationError('cartan generator',
                            f'no element of order {e}')

AlphaChoice = \
    collections.namedtuple(
        'AlphaChoice',
        [
            'alpha',
            'in_k_possible'
        ]
    )

def find_alpha(tower):
    (   "find_alpha("
            "tower:FieldTower"
        ") -> AlphaChoice" """

    The first ``alpha`` in basis order with
    ``Norm_{l'|k}(alpha) = eta^(1-p)``, together with whether the norm
    equation is solvable inside ``k^x``.
    """)
    p = tower.p
    if 2 == p:
        raise ValueError('alpha is only defined for odd p')
    target = tower.eta ** (1 - p)
    if not target.in_k():
        raise VerificationError('eta^(1-p) in k')
    # on k the norm is squaring
    t = target.pair[0]
    in_k_possible = \
        tower.k_scalar(1) == tower.k_pow(t, (tower.k_order - 1) // 2)
    for alpha in tower.elements(start=1):
        if alpha.norm() == target:
            gvars.logger.debug(
                f'alpha ({p}, {tower.d}): {alpha}, '
                f'in k possible: {in_k_possible}'
            )
            return AlphaChoice(alpha, in_k_possible)
    raise VerificationError('norm equation', 'no alpha found')
