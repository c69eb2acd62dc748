# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""\
===============================================================
:mod:`gspcert.metacyclic` -- Word arithmetic in x^a y^b groups
===============================================================

Groups ``<x, y | x^e = 1, y^B = x^t, y x y^-1 = x^c>`` in the normal
form ``x^a y^b`` with ``a`` in ``Z/e`` and ``b`` in ``Z/B``:

    (a1, b1)(a2, b2) = (a1 + a2*c^b1 + t*floor((b1+b2)/B),  b1+b2)

For the normalizer ``N`` of ``(p, d)`` the constants are ``c = p``,
``B = 2d``, ``e = (p^d+1)(p-1)`` and ``t = e/2`` (odd ``p``) or ``0``
(``p = 2``). The group of order 78 used for ``(g, p) = (3, 3)`` has
``e = 13``, ``B = 6``, ``t = 0`` and ``c`` of order 6 modulo 13.

Example:

    >>> shape = GroupShape.for_normalizer(3, 1)
    >>> shape.y * shape.x
    (3, 1)
    >>> shape.y * shape.y
    (4, 0)
"""

import math
import random

import sympy

from . import arith
from .exceptions import ShapeMismatch, VerificationError

__all__ = ['GroupShape',
           'WordElement',
           'abelianization',
           'conjugation_action_check',
           'derived_subgroup_check',
           'extension_splits',
           'matrix_word_consistency',
           'splits_by_cocycle',
           'word_mul']

default_samples       = 1000
default_order_samples = 100
default_cocycle_cap   = 200

class GroupShape(object):

    (   "GroupShape("
            "e:int, "
            "t:int, "
            "c:int, "
            "mb:int, "
            "p:int=None, "
            "d:int=None"
        ")" """

    `mb` is the range of the ``y`` exponent. The relations are checked
    for consistency: ``c`` is a unit modulo ``e``, ``c^mb = 1``, and
    ``x^t`` is fixed by conjugation.
    """)

    __slots__ = ['c', 'd', 'e', 'mb', 'p', 't']

    def __init__(self, e, t, c, mb, p=None, d=None):
        if math.gcd(c, e) != 1:
            raise ShapeMismatch(f'{c} is not a unit modulo {e}')
        if pow(c, mb, e) != 1 % e:
            raise ShapeMismatch(f'{c}^{mb} != 1 modulo {e}')
        if (c - 1) * t % e:
            raise ShapeMismatch(f'x^{t} is not central')
        self.e  = e
        self.t  = t % e
        self.c  = c % e
        self.mb = mb
        self.p  = p
        self.d  = d

    @classmethod
    def for_normalizer(cls, p, d):
        m = p ** d + 1
        e = m * (p - 1)
        t = 0 if 2 == p else e // 2
        return cls(e, t, p, 2 * d, p, d)

    @classmethod
    def special33(cls, c=4):
        if 6 != sympy.n_order(c, 13):
            raise ShapeMismatch(f'{c} does not have order 6 modulo 13')
        return cls(13, 0, c, 6, 3, 3)

    def __eq__(self, other):
        return isinstance(other, GroupShape) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return (f'GroupShape(e={self.e}, t={self.t}, c={self.c}, '
                f'mb={self.mb})')

    @property
    def key(self):
        return (self.e, self.t, self.c, self.mb)

    @property
    def order(self):
        return self.e * self.mb

    @property
    def derived_step(self):
        (   "derived_step -> int" """

        ``[N, N] = <x^derived_step>`` with ``derived_step =
        gcd(c-1, e)``; equals ``p-1`` for the normalizer of ``(p, d)``.
        """)
        return math.gcd(self.c - 1, self.e)

    @property
    def derived_order(self):
        return self.e // self.derived_step

    @property
    def identity(self):
        return WordElement(self, 0, 0)

    @property
    def x(self):
        return WordElement(self, 1 % self.e, 0)

    @property
    def y(self):
        return WordElement(self, 0, 1 % self.mb)

    def element(self, a, b):
        return WordElement(self, a % self.e, b % self.mb)

    def elements(self):
        for a in range(self.e):
            for b in range(self.mb):
                yield WordElement(self, a, b)

    def random_element(self, rng):
        return WordElement(self, rng.randrange(self.e),
                                 rng.randrange(self.mb))

    def to_json(self):
        return \
            {
                 'e': str(self.e),
                 't': str(self.t),
                 'c': str(self.c),
                'mb': str(self.mb)
            }

class WordElement(object):

    __slots__ = ['a', 'b', 'shape']

    def __init__(self, shape, a, b):
        self.shape = shape
        self.a     = a
        self.b     = b

    def __repr__(self):
        return f'({self.a}, {self.b})'

    def __eq__(self, other):
        if not isinstance(other, WordElement):
            return NotImplemented
        return self.shape == other.shape and \
               (self.a, self.b) == (other.a, other.b)

    def __hash__(self):
        return hash((self.a, self.b))

    def __mul__(self, other):
        if not isinstance(other, WordElement):
            return NotImplemented
        return word_mul(self, other)

    def __pow__(self, n):
        base = self
        if n < 0:
            base = self.inverse()
            n = -n
        result = self.shape.identity
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        s = self.shape
        b = -self.b % s.mb
        carry = (self.b + b) // s.mb
        a = -(self.a + s.t * carry) * pow(s.c, s.mb - self.b, s.e) % s.e
        return WordElement(s, a, b)

    def is_identity(self):
        return 0 == self.a and 0 == self.b

    def order(self):
        n = self.shape.order
        for r in arith.factorize(n):
            while 0 == n % r and (self ** (n // r)).is_identity():
                n //= r
        return n

    def to_json(self):
        return [str(self.a), str(self.b)]

def word_mul(u, v):
    (   "word_mul("
            "u:WordElement, "
            "v:WordElement"
        ") -> WordElement"
    )
    s = u.shape
    if v.shape != s:
        raise ShapeMismatch(f'{s!r} and {v.shape!r}')
    b = u.b + v.b
    a = (u.a + v.a * pow(s.c, u.b, s.e) + s.t * (b // s.mb)) % s.e
    return WordElement(s, a, b % s.mb)

def abelianization(u):
    (   "abelianization("
            "u:WordElement"
        ") -> (int, int)" """

    The image of ``x^a y^b`` in ``Z/derived_step x Z/mb``; for the
    normalizer of ``(p, d)`` this is ``(a mod (p-1), b)``.
    """)
    return u.a % u.shape.derived_step, u.b

def derived_subgroup_check(shape, cap=-1):
    (   "derived_subgroup_check("
            "shape:GroupShape, "
            "cap:int=-1"
        ") -> dict" """

    Generate the subgroup spanned by the commutators ``[u, x]`` and
    ``[u, y]`` for every ``u`` (and all ``[u, v]`` when the order is at
    most `cap`) and check that it is ``<x^derived_step>``.
    """)
    if -1 == cap:
        cap = default_cocycle_cap
    elements = list(shape.elements())
    others = elements if shape.order <= cap else [shape.x, shape.y]
    step = shape.e
    for u in elements:
        u_inv = u.inverse()
        for v in others:
            commutator = u * v * u_inv * v.inverse()
            if commutator.b:
                raise VerificationError('commutators lie in <x>',
                                        f'[{u}, {v}] = {commutator}')
            step = math.gcd(step, commutator.a)
    if step != shape.derived_step:
        raise VerificationError('[N, N] = <x^derived_step>',
                                f'generated by x^{step}')
    if shape.p is not None and \
            shape == GroupShape.for_normalizer(shape.p, shape.d):
        if shape.e // step != shape.p ** shape.d + 1:
            raise VerificationError('|[N, N]| = p^d+1')
    return \
        {
            'generator': WordElement(shape, step % shape.e, 0).to_json(),
                'order': shape.e // step
        }

def conjugation_action_check(shape):
    (   "conjugation_action_check("
            "shape:GroupShape"
        ") -> None" """

    ``y`` acts on ``[N, N]`` by raising to the power ``c``.
    """)
    y, y_inv = shape.y, shape.y.inverse()
    step = shape.derived_step
    for k in range(shape.derived_order):
        z = WordElement(shape, k * step % shape.e, 0)
        if y * z * y_inv != z ** shape.c:
            raise VerificationError('y z y^-1 = z^c', f'z = {z}')

def matrix_word_consistency(shape, nd, samples=-1, order_samples=-1,
                            seed=0):
    (   "matrix_word_consistency("
            "shape:GroupShape, "
            "nd:NormalizerData, "
            "samples:int=-1, "
            "order_samples:int=-1, "
            "seed:int=0"
        ") -> dict" """

    Check that ``x -> nd.X``, ``y -> nd.Y`` respects the relations and
    that products and orders of random words agree with their matrix
    images. A mismatch raises with the offending words.
    """)
    if -1 == samples:
        samples = default_samples
    if -1 == order_samples:
        order_samples = default_order_samples
    X, Y = nd.X, nd.Y
    e, mb = shape.e, shape.mb
    if not (X ** e).is_identity():
        raise VerificationError('X^e = I')
    if Y ** mb != X ** shape.t:
        raise VerificationError('Y^mb = X^t')
    if Y * X != X ** shape.c * Y:
        raise VerificationError('Y X Y^-1 = X^c')
    x_powers = [X ** 0]
    for _ in range(e - 1):
        x_powers.append(x_powers[-1] * X)
    y_powers = [Y ** 0]
    for _ in range(mb - 1):
        y_powers.append(y_powers[-1] * Y)
    image = lambda w: x_powers[w.a] * y_powers[w.b]
    rng = random.Random(seed)
    for _ in range(samples):
        u = shape.random_element(rng)
        v = shape.random_element(rng)
        if image(u * v) != image(u) * image(v):
            raise VerificationError('word product = matrix product',
                                    f'u = {u}, v = {v}')
    for _ in range(order_samples):
        u = shape.random_element(rng)
        if u.order() != image(u).order(multiple=shape.order):
            raise VerificationError('word order = matrix order',
                                    f'u = {u}')
    return \
        {
                  'samples': samples,
            'order_samples': order_samples,
                     'seed': seed
        }

def extension_splits(shape):
    (   "extension_splits("
            "shape:GroupShape"
        ") -> (bool, tuple or None)" """

    Whether ``1 -> [N, N] -> N -> N^ab -> 1`` has a homomorphic
    section, searched exhaustively. Returns the witness ``(u, w)``
    (``u = None`` when ``N^ab`` is cyclic) or ``None``.
    """)
    step, mb = shape.derived_step, shape.mb
    identity = shape.identity
    W = [w for w in shape.elements()
         if 1 % mb == w.b and 0 == w.a % step and (w ** mb) == identity]
    if 1 == step:
        if W:
            return True, (None, W[0])
        return False, None
    U = [WordElement(shape, a, 0) for a in range(shape.e)
         if 1 == a % step]
    U = [u for u in U if (u ** step) == identity]
    for u in U:
        for w in W:
            if u * w == w * u:
                return True, (u, w)
    return False, None

def splits_by_cocycle(shape, cap=-1):
    (   "splits_by_cocycle("
            "shape:GroupShape, "
            "cap:int=-1"
        ") -> (bool, tuple or None)" """

    Cohomological form of :func:`extension_splits`: compute the 2-cocycle
    ``f(q1, q2) = s(q1) s(q2) s(q1 q2)^-1`` of the normal-form section
    ``s(i, j) = x^i y^j`` and search all 1-cochains determined by their
    values on the generators of ``N^ab`` for one with
    ``a(q1 q2) = a(q1) + q1.a(q2) + f(q1, q2)``. Only for groups of
    order at most `cap`.
    """)
    if -1 == cap:
        cap = default_cocycle_cap
    if shape.order > cap:
        raise ValueError(f'|N| = {shape.order} exceeds {cap}')
    step, mb, e = shape.derived_step, shape.mb, shape.e
    A = shape.derived_order
    Q = [(i, j) for i in range(step) for j in range(mb)]
    qmul = lambda q1, q2: ((q1[0] + q2[0]) % step, (q1[1] + q2[1]) % mb)
    section = lambda q: WordElement(shape, q[0], q[1])
    act = lambda q, k: k * pow(shape.c, q[1], e) % A
    f = {}
    for q1 in Q:
        for q2 in Q:
            w = section(q1) * section(q2) * section(qmul(q1, q2)).inverse()
            if w.b or w.a % step:
                raise VerificationError('cocycle lands in [N, N]')
            f[q1, q2] = w.a // step % A
    g1, g2 = (1 % step, 0), (0, 1 % mb)
    first_values = range(A) if step > 1 else [0]
    for a1 in first_values:
        for a2 in range(A):
            a = {(0, 0): 0}
            for i in range(step - 1):
                q = (i, 0)
                a[qmul(q, g1)] = (a[q] + act(q, a1) + f[q, g1]) % A
            for i in range(step):
                for j in range(mb - 1):
                    q = (i, j)
                    a[qmul(q, g2)] = (a[q] + act(q, a2) + f[q, g2]) % A
            if all((a[qmul(q1, q2)] - a[q1] - act(q1, a[q2]) - f[q1, q2])
                   % A == 0 for q1 in Q for q2 in Q):
                return True, (a1, a2)
    return False, None
