# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""\
===================================================================
:mod:`gspcert.kg` -- The constant K_g
===================================================================

``K_g`` is the gcd of ``#GSp(2g, F_r)`` over the odd primes ``r``. It
is computed twice: by sampling primes up to a bound, and exactly by
minimizing, for each prime ``q <= 2g+1``, the ``q``-adic valuation of

    (u-1) * (u^2-1) * (u^4-1) * ... * (u^(2g)-1)

over the unit residue classes ``u`` modulo ``q^B``. The two values are
compared whenever ``g`` is small enough for the sampled gcd to be cheap.

Example:

    >>> kg_exact(2).factors
    {2: 8, 3: 2, 5: 1}
"""

import math

import sympy

from . import arith
from . import gvars
from . import lrucache
from .exceptions import VerificationError

__all__ = ['KgFactorization',
           'gsp_order',
           'kg_exact',
           'kg_sampled',
           'kg_stability']

default_sample_bound      = 10000
default_cross_check_genus = 12

class KgFactorization(object):

    (   "KgFactorization("
            "g:int, "
            "factors:dict"
        ")"
    )

    __slots__ = ['factors', 'g', 'value']

    def __init__(self, g, factors):
        self.g       = g
        self.factors = dict(sorted(factors.items()))
        self.value   = math.prod(q ** k for q, k in self.factors.items())

    def __repr__(self):
        return f'<KgFactorization g={self.g} {self.factors}>'

    def __eq__(self, other):
        return isinstance(other, KgFactorization) and \
               (self.g, self.factors) == (other.g, other.factors)

    def exponent(self, q):
        return self.factors.get(q, 0)

    def divides(self, n):
        return 0 == self.value % n

    def to_json(self):
        return \
            {
                      'g': str(self.g),
                'factors': {str(q): str(k) for q, k in self.factors.items()},
                  'value': str(self.value)
            }

def gsp_order(g, r):
    (   "gsp_order("
            "g:int, "
            "r:int"
        ") -> int" """

    ``#GSp(2g, F_r) = (r-1) * r^(g^2) * prod_{i=1..g} (r^(2i)-1)``.
    """)
    arith.check_prime(r)
    if g < 1:
        raise ValueError(f'g must be a positive integer, got {g}')
    order = (r - 1) * r ** (g * g)
    for i in range(1, g + 1):
        order *= r ** (2 * i) - 1
    return order

def kg_sampled(g, bound):
    (   "kg_sampled("
            "g:int, "
            "bound:int"
        ") -> int" """

    The gcd of :func:`gsp_order` over the odd primes ``r <= bound``.
    """)
    if bound < 7:
        raise ValueError(f'sample bound {bound} is below 7')
    value = 0
    for r in sympy.primerange(3, bound + 1):
        value = math.gcd(value, gsp_order(g, int(r)))
    return value

def class_valuation(u, g, q, B):
    (   "class_valuation("
            "u:int, "
            "g:int, "
            "q:int, "
            "B:int"
        ") -> (int, bool)" """

    The valuation of the product over the class of `u` modulo ``q^B``
    and whether it is exact. A factor ``u^k - 1`` vanishing modulo
    ``q^B`` only shows a valuation of at least `B`; such a factor is
    counted as `B` and the total marked inexact.
    """)
    modulus = q ** B
    total = 0
    exact = True
    for k in [1] + [2 * i for i in range(1, g + 1)]:
        residue = (pow(u, k, modulus) - 1) % modulus
        if 0 == residue:
            total += B
            exact = False
        else:
            total += arith.valuation(residue, q)
    return total, exact

def prime_exponent(g, q):
    (   "prime_exponent("
            "g:int, "
            "q:int"
        ") -> int" """

    ``nu_q(K_g)``. ``B`` grows until some class attaining the minimum
    has an exact valuation; every other class is then bounded below by
    the same minimum.
    """)
    B = 1
    while True:
        modulus = q ** B
        best  = None
        exact = False
        for u in range(1, modulus):
            if 0 == u % q:
                continue
            value, is_exact = class_valuation(u, g, q, B)
            if best is None or value < best:
                best, exact = value, is_exact
            elif value == best:
                exact = exact or is_exact
        if exact:
            gvars.logger.debug(f'K_{g}: nu_{q} = {best} (B = {B})')
            return best
        B += 1

@lrucache.memoize(size=64)
def _kg_exact(g, sample_bound, cross_check_genus):
    if g < 1:
        raise ValueError(f'g must be a positive integer, got {g}')
    factors = {}
    for q in sympy.primerange(2, 2 * g + 2):
        q = int(q)
        k = prime_exponent(g, q)
        if k:
            factors[q] = k
        if g >= 2 and q > 2 and k >= g * g:
            raise VerificationError('nu_q(K_g) < g^2',
                                    f'q = {q}, exponent {k}')
    kg = KgFactorization(g, factors)
    if g <= cross_check_genus:
        sampled = kg_sampled(g, sample_bound)
        if sampled != kg.value:
            gvars.logger.error(f'K_{g}: exact {kg.value} != '
                               f'sampled {sampled}')
            raise VerificationError('K_g exact = K_g sampled',
                                    f'{kg.value} != {sampled}')
    gvars.logger.info(f'K_{g} = {kg.value} = {kg.factors}')
    return kg

def kg_exact(g, sample_bound=-1, cross_check_genus=-1):
    (   "kg_exact("
            "g:int, "
            "sample_bound:int=-1, "
            "cross_check_genus:int=-1"
        ") -> KgFactorization" """

    Exact factorization of ``K_g``. For ``g <= cross_check_genus`` the
    value is compared against ``kg_sampled(g, sample_bound)`` and a
    mismatch raises :class:`VerificationError`.
    """)
    if -1 == sample_bound:
        sample_bound = default_sample_bound
    if -1 == cross_check_genus:
        cross_check_genus = default_cross_check_genus
    return _kg_exact(g, sample_bound, cross_check_genus)

def kg_stability(g, M, bound):
    (   "kg_stability("
            "g:int, "
            "M:int, "
            "bound:int"
        ") -> bool" """

    Whether the gcd of :func:`gsp_order` over the primes in
    ``(M, bound]`` is still ``K_g``.
    """)
    if not 2 < M < bound:
        raise ValueError(f'expected 2 < M < bound, got M = {M}, '
                         f'bound = {bound}')
    value = 0
    for r in sympy.primerange(M + 1, bound + 1):
        value = math.gcd(value, gsp_order(g, int(r)))
    return value == kg_exact(g).value
