# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""\
=========================================================
:mod:`gspcert.witness` -- Witness pairs (d, q)
=========================================================

A witness for ``(g, p)`` is a dimension ``1 <= d <= g`` and a prime
power ``q`` with ``q | p^d+1`` and ``q`` not dividing ``K_g``. Up to
``g = 6`` and ``p <= 31`` exactly the four pairs ``(2, 2)``, ``(2, 3)``,
``(3, 2)`` and ``(3, 3)`` have none; from ``g = 7`` on a prime
``q > 2g+1`` always divides some ``p^d+1``.

For ``(3, 3)`` an order 78 subgroup of ``GSp(6, F_3)`` with a unique
cyclic subgroup of order 13 replaces the normalizer, see
:func:`build_33_group`.
"""

import collections

import numpy
import sympy

from . import arith
from . import gvars
from .exceptions import (ExceptionalPair, NotSimilitude, SearchCapExceeded,
                         VerificationError)
from .fieldtower import build_tower
from .kg import kg_exact
from .metacyclic import GroupShape
from .symplectic import (GramForm, SympMatrix, inverse_mod_p,
                         nullspace_mod_p, rank_mod_p, similitude_factor)

__all__ = ['Exceptional',
           'Special33Data',
           'Witness',
           'ZsigmondyHit',
           'build_33_group',
           'exceptional_scan',
           'find_witness',
           'is_admissible',
           'prime_count_bounds',
           'require_witness',
           'primitive_prime_divisors',
           'witness_table',
           'zsigmondy_scan']

exceptional_pairs = [(2, 2), (2, 3), (3, 2), (3, 3)]
default_closure_cap = 10000
default_trial_bound = 100000

class Witness(object):

    (   "Witness("
            "g:int, "
            "p:int, "
            "d:int, "
            "q:int, "
            "special33:Special33Data=None"
        ")"
    )

    __slots__ = ['d', 'g', 'p', 'q', 'special33']

    exceptional = False

    def __init__(self, g, p, d, q, special33=None):
        self.g = g
        self.p = p
        self.d = d
        self.q = q
        self.special33 = special33

    def __repr__(self):
        return f'<Witness (g, p) = ({self.g}, {self.p}): d={self.d} ' \
               f'q={self.q}>'

    def to_json(self):
        return \
            {
                          'd': str(self.d),
                          'q': str(self.q),
                'exceptional': False,
                  'special33': self.special33 is not None
            }

class Exceptional(object):

    (   "Exceptional("
            "g:int, "
            "p:int, "
            "transcript:list"
        ")" """

    `transcript` lists, for every ``d <= g``, the prime powers dividing
    ``p^d+1`` with the verdict whether each divides ``K_g``.
    """)

    __slots__ = ['g', 'p', 'transcript']

    exceptional = True

    def __init__(self, g, p, transcript):
        self.g = g
        self.p = p
        self.transcript = transcript

    def __repr__(self):
        return f'<Exceptional (g, p) = ({self.g}, {self.p})>'

    def to_json(self):
        return \
            {
                'exceptional': True,
                 'transcript':
                     [
                         {
                                'd': str(d),
                            'terms': [[str(q), divides]
                                      for q, divides in terms]
                         }
                         for d, terms in self.transcript
                     ]
            }

def is_admissible(g, p, d, q, kg=None):
    (   "is_admissible("
            "g:int, "
            "p:int, "
            "d:int, "
            "q:int, "
            "kg:KgFactorization=None"
        ") -> bool"
    )
    if kg is None:
        kg = kg_exact(g)
    return 1 <= d <= g and \
           arith.is_prime_power(q) and \
           0 == (p ** d + 1) % q and \
           not kg.divides(q)

def find_witness(g, p, kg=None):
    (   "find_witness("
            "g:int, "
            "p:int, "
            "kg:KgFactorization=None"
        ") -> Witness or Exceptional" """

    The witness with the smallest ``d``, then the smallest ``q``.
    """)
    if g < 2:
        raise ValueError(f'g must be at least 2, got {g}')
    arith.check_prime(p)
    if kg is None:
        kg = kg_exact(g)
    transcript = []
    for d in range(1, g + 1):
        terms = []
        for q in arith.prime_power_divisors(p ** d + 1):
            if not kg.divides(q):
                gvars.logger.debug(f'witness ({g}, {p}): d = {d}, q = {q}')
                return Witness(g, p, d, q)
            terms.append((q, True))
        transcript.append((d, terms))
    gvars.logger.info(f'(g, p) = ({g}, {p}) has no witness')
    return Exceptional(g, p, transcript)

def require_witness(g, p, kg=None):
    (   "require_witness("
            "g:int, "
            "p:int, "
            "kg:KgFactorization=None"
        ") -> Witness" """

    :func:`find_witness` for callers that cannot go on without one;
    raises :class:`ExceptionalPair` instead of returning the transcript.
    """)
    w = find_witness(g, p, kg)
    if w.exceptional:
        raise ExceptionalPair(g, p)
    return w

def primitive_prime_divisors(p, n):
    (   "primitive_prime_divisors("
            "p:int, "
            "n:int"
        ") -> list" """

    Primes dividing ``p^n+1`` and no ``p^j+1`` with ``j < n``.
    """)
    earlier = set()
    for j in range(1, n):
        earlier.update(arith.factorize(p ** j + 1))
    return [r for r in sorted(arith.factorize(p ** n + 1))
            if r not in earlier]

def prime_count_bounds(g):
    (   "prime_count_bounds("
            "g:int"
        ") -> dict" """

    ``pi(2g+1)`` with the bounds ``pi(2g+1) <= g-1`` (``g >= 7``) and
    ``pi(2g+1) <= g-2`` (``g >= 10``); a bound that does not apply to
    `g` is reported as None.
    """)
    count = int(sympy.primepi(2 * g + 1))
    return \
        {
                  'pi': count,
            'at_most_g-1': count <= g - 1 if g >= 7  else None,
            'at_most_g-2': count <= g - 2 if g >= 10 else None
        }

ZsigmondyHit = \
    collections.namedtuple(
        'ZsigmondyHit',
        [
            'q',
            'd'
        ]
    )

def smallest_large_divisor(p, d, bound):
    # trial division first; p^d+1 is only factored when it has no
    # prime factor in (bound, default_trial_bound)
    for r in sympy.primerange(bound + 1, default_trial_bound):
        if pow(p, d, r) == r - 1:
            return int(r)
    large = [r for r in arith.factorize(p ** d + 1) if r > bound]
    return min(large) if large else None

def zsigmondy_scan(g, p):
    (   "zsigmondy_scan("
            "g:int, "
            "p:int"
        ") -> ZsigmondyHit" """

    A prime ``q > 2g+1`` dividing ``p^d+1`` for some ``d <= g``, found by
    factoring ``p^g+1, p^(g-1)+1, ...`` in that order and taking the
    smallest such prime of the first ``d`` that has one. Also asserts
    the prime counting bounds for `g`.
    """)
    if g < 7:
        raise ValueError(f'the scan needs g >= 7, got {g}')
    arith.check_prime(p)
    bounds = prime_count_bounds(g)
    if bounds['at_most_g-1'] is False or bounds['at_most_g-2'] is False:
        raise VerificationError('prime counting bound', f'{bounds}')
    for d in range(g, 0, -1):
        r = smallest_large_divisor(p, d, 2 * g + 1)
        if r is not None:
            gvars.logger.debug(f'zsigmondy ({g}, {p}): {r} | {p}^{d}+1')
            return ZsigmondyHit(r, d)
    gvars.logger.critical(f'zsigmondy ({g}, {p}): no prime above {2*g+1}')
    raise VerificationError('prime q > 2g+1 divides some p^d+1',
                            f'(g, p) = ({g}, {p})')

def exceptional_scan(gmax, pmax):
    (   "exceptional_scan("
            "gmax:int, "
            "pmax:int"
        ") -> list" """

    The pairs ``(g, p)`` with ``2 <= g <= gmax`` and prime ``p <= pmax``
    that admit no witness, sorted.
    """)
    return [(row['g'], row['p']) for row in witness_table(gmax, pmax)
            if row['exceptional']]

def witness_table(gmax, pmax):
    (   "witness_table("
            "gmax:int, "
            "pmax:int"
        ") -> list" """

    One row per ``(g, p)``: ``{'g', 'p', 'd', 'q', 'exceptional'}``
    with ``d`` and ``q`` None for exceptional pairs.
    """)
    rows = []
    for g in range(2, gmax + 1):
        kg = kg_exact(g)
        for p in sympy.primerange(2, pmax + 1):
            p = int(p)
            w = find_witness(g, p, kg)
            rows.append(
                {
                              'g': g,
                              'p': p,
                              'd': None if w.exceptional else w.d,
                              'q': None if w.exceptional else w.q,
                    'exceptional': w.exceptional
                }
            )
    return rows

###########################################################################
#                      The order 78 group for (3, 3)                      #
###########################################################################

class Special33Data(object):

    (   "Special33Data("
            "tower:FieldTower, "
            "zeta:tuple, "
            "c:int, "
            "X:SympMatrix, "
            "Y:SympMatrix"
        ")" """

    ``V = W + W*`` with ``W = F_27``; ``X`` is multiplication by the
    order 13 element `zeta` on ``W`` and its contragredient on ``W*``,
    ``Y`` satisfies ``Y X Y^-1 = X^c`` with ``c`` of order 6 modulo 13.
    """)

    __slots__ = ['X', 'Y', 'c', 'order', 'tower', 'transcript', 'zeta']

    def __init__(self, tower, zeta, c, X, Y):
        self.tower = tower
        self.zeta  = zeta
        self.c     = c
        self.X     = X
        self.Y     = Y
        self.order = None
        self.transcript = []

    @property
    def form(self):
        return self.X.form

    @property
    def shape(self):
        return GroupShape.special33(self.c)

    def require(self, check, condition, detail=''):
        if not condition:
            gvars.logger.error(f'order 78 group: {check} failed')
            raise VerificationError(check, detail)
        self.transcript.append(check)

    def to_json(self):
        return \
            {
                'zeta': list(self.zeta),
                   'c': str(self.c),
                   'J': self.form.to_json(),
                   'X': self.X.to_json(),
                   'Y': self.Y.to_json()
            }

def mulclose(generators, cap):
    elements = set(generators)
    boundary = list(elements)
    while boundary:
        new = []
        for A in generators:
            for B in boundary:
                C = A * B
                if C not in elements:
                    elements.add(C)
                    new.append(C)
                    if len(elements) > cap:
                        raise SearchCapExceeded('group closure', cap)
        boundary = new
    return elements

def doubled_form(n, p):
    J = numpy.zeros((2 * n, 2 * n), dtype=numpy.int64)
    J[:n, n:] = -numpy.eye(n, dtype=numpy.int64)
    J[n:, :n] = numpy.eye(n, dtype=numpy.int64)
    return GramForm(J, p)

def k_multiplication(tower, a):
    columns = [tower.k_mul(a, tower.k_element(tower.p ** j))
               for j in range(tower.d)]
    return numpy.array(columns, dtype=numpy.int64).T

def intertwiners(X, Xc, p):
    (   "intertwiners("
            "X:array, "
            "Xc:array, "
            "p:int"
        ") -> list" """

    A basis of ``{Y : Y X = Xc Y}``; with row-major flattening the
    system reads ``(I (x) X^T - Xc (x) I) vec(Y) = 0``.
    """)
    n = X.shape[0]
    I = numpy.eye(n, dtype=numpy.int64)
    system = (numpy.kron(I, X.T) - numpy.kron(Xc, I)) % p
    return [v.reshape(n, n) for v in nullspace_mod_p(system, p)]

def build_33_group(cap=-1):
    (   "build_33_group("
            "cap:int=-1"
        ") -> Special33Data" """

    Search the solutions ``Y`` of ``Y X = X^c Y`` for ``c = 4`` and then
    ``c = 10`` in the order of their coordinates on the nullspace basis,
    keeping the first invertible similitude with ``Y^6 = I`` and factor
    2. The result is checked to generate a group of order 78 whose
    elements of order 13 are exactly the non-trivial powers of ``X``.
    """)
    if -1 == cap:
        cap = default_closure_cap
    p = 3
    tower = build_tower(3, 3)
    zeta = None
    for index in range(1, tower.k_order):
        a = tower.k_element(index)
        if 13 == tower.k_order_of(a):
            zeta = a
            break
    A = k_multiplication(tower, zeta)
    A_dual = inverse_mod_p(A, p).T
    form = doubled_form(3, p)
    X_array = numpy.zeros((6, 6), dtype=numpy.int64)
    X_array[:3, :3] = A
    X_array[3:, 3:] = A_dual
    X = SympMatrix(X_array, form)
    for c in (4, 10):
        Xc = X ** c
        basis = intertwiners(X.A, Xc.A, p)
        dim = len(basis)
        gvars.logger.debug(f'order 78 group: c = {c}, {dim} intertwiners')
        for index in range(1, p ** dim):
            coeffs = []
            rest = index
            for _ in range(dim):
                rest, t = divmod(rest, p)
                coeffs.append(t)
            Y_array = sum(t * B for t, B in zip(coeffs, basis)) % p
            if rank_mod_p(Y_array, p) != 6:
                continue
            Y = SympMatrix(Y_array, form)
            try:
                factor = similitude_factor(Y)
            except NotSimilitude:
                continue
            if 2 != factor or not (Y ** 6).is_identity():
                continue
            data = Special33Data(tower, zeta, c, X, Y)
            verify_33_group(data, cap)
            gvars.logger.info(f'order 78 group: c = {c}, '
                              f'Y = {Y.to_json()}')
            return data
    raise VerificationError('order 78 subgroup of GSp(6, F_3)',
                            'no qualifying Y')

def verify_33_group(data, cap=-1):
    (   "verify_33_group("
            "data:Special33Data, "
            "cap:int=-1"
        ") -> None"
    )
    if -1 == cap:
        cap = default_closure_cap
    X, Y = data.X, data.Y
    data.require('X in Sp', 1 == similitude_factor(X))
    data.require('order(X) = 13', 13 == X.order(multiple=13))
    data.require('Y^6 = I', (Y ** 6).is_identity())
    data.require('Y X Y^-1 = X^c', Y * X == X ** data.c * Y)
    data.require('c has order 6 mod 13', 6 == sympy.n_order(data.c, 13))
    group = mulclose([X, Y], cap)
    data.order = len(group)
    data.require('|<X, Y>| = 78', 78 == data.order, f'{data.order}')
    factors = {similitude_factor(M) for M in group}
    data.require('similitude surjective', {1, 2} == factors)
    powers = {X ** i for i in range(1, 13)}
    order13 = {M for M in group
               if 1 == similitude_factor(M) and (M ** 13).is_identity()
               and not M.is_identity()}
    data.require('unique subgroup of order 13', order13 == powers)
