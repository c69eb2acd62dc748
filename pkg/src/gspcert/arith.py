# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""\
===================================================
:mod:`gspcert.arith` -- Elementary number theory
===================================================

Thin, deterministic wrappers around :mod:`sympy.ntheory` shared by the
other modules. Factorizations are memoized since the same ``p^k +- 1``
values are factored repeatedly during scans.
"""

import math

import sympy
from sympy.ntheory.modular import crt

from . import lrucache
from .exceptions import NotPrimeError, SearchCapExceeded

__all__ = ['check_prime',
           'crt_residue',
           'discrete_index',
           'factorize',
           'geometric_sum',
           'is_power_residue',
           'is_prime_power',
           'prime_power_divisors',
           'primes_in_progression',
           'smallest_primitive_root',
           'solve_linear_congruence',
           'valuation']

def check_prime(p):
    if not sympy.isprime(p):
        raise NotPrimeError(p)
    return p

@lrucache.memoize(size=8192)
def _factorize(n):
    return tuple(sorted((int(r), int(k))
                        for r, k in sympy.factorint(n).items()))

def factorize(n):
    (   "factorize("
            "n:int"
        ") -> dict" """

    ``{prime: exponent}`` for ``n >= 1``. A fresh dict is returned on
    every call.
    """)
    return dict(_factorize(n))

def valuation(n, q):
    (   "valuation("
            "n:int, "
            "q:int"
        ") -> int" """

    The exponent of the prime ``q`` in the non-zero integer ``n``.
    """)
    if 0 == n:
        raise ValueError('valuation of zero')
    return int(sympy.multiplicity(q, abs(n)))

def is_prime_power(q):
    return q > 1 and 1 == len(factorize(q))

def prime_power_divisors(n):
    (   "prime_power_divisors("
            "n:int"
        ") -> list" """

    All prime powers ``r^i`` (``i >= 1``) dividing ``n``, ascending.
    """)
    result = []
    for r, k in factorize(n).items():
        result.extend(r ** i for i in range(1, k + 1))
    return sorted(result)

def geometric_sum(p, n):
    (   "geometric_sum("
            "p:int, "
            "n:int"
        ") -> int" """

    ``1 + p + ... + p^(n-1)``; zero for ``n = 0``.
    """)
    if n <= 0:
        return 0
    return (p ** n - 1) // (p - 1)

def solve_linear_congruence(a, b, m):
    (   "solve_linear_congruence("
            "a:int, "
            "b:int, "
            "m:int"
        ") -> int or None" """

    The least ``x`` in ``[0, m)`` with ``a*x = b (mod m)``, or None when
    ``gcd(a, m)`` does not divide ``b``.
    """)
    a %= m
    b %= m
    g = math.gcd(a, m)
    if b % g:
        return None
    m_ = m // g
    if 1 == m_:
        return 0
    return (b // g) * pow(a // g, -1, m_) % m_

def is_power_residue(a, k, n):
    (   "is_power_residue("
            "a:int, "
            "k:int, "
            "n:int"
        ") -> bool" """

    Euler-type criterion: for a prime ``n`` and ``k | n-1``, ``a`` is a
    ``k``-th power modulo ``n`` iff ``a^((n-1)/k) = 1``.
    """)
    if (n - 1) % k:
        raise ValueError(f'{k} does not divide {n} - 1')
    if 0 == a % n:
        return False
    return 1 == pow(a, (n - 1) // k, n)

@lrucache.memoize(size=1024)
def smallest_primitive_root(n):
    return int(sympy.primitive_root(check_prime(n)))

def discrete_index(u, n):
    (   "discrete_index("
            "u:int, "
            "n:int"
        ") -> int" """

    The index of the unit ``u`` modulo the prime ``n`` with respect to
    the smallest primitive root, in ``[0, n-1)``.
    """)
    u %= n
    if 0 == u:
        raise ValueError(f'{u} is not a unit modulo {n}')
    if 2 == n:
        return 0
    return int(sympy.discrete_log(n, u, smallest_primitive_root(n)))

def crt_residue(residues, moduli):
    (   "crt_residue("
            "residues:list, "
            "moduli:list"
        ") -> (int, int)" """

    Combine pairwise coprime congruences. Returns ``(x, M)`` with
    ``0 <= x < M``.
    """)
    if not moduli:
        return 0, 1
    x, M = crt(list(moduli), list(residues))
    return int(x), int(M)

def primes_in_progression(residue, modulus, cap, start=2):
    (   "primes_in_progression("
            "residue:int, "
            "modulus:int, "
            "cap:int, "
            "start:int=2"
        ") -> iterator" """

    Primes ``t = residue (mod modulus)`` with ``start <= t <= cap`` in
    ascending order. Raises :class:`SearchCapExceeded` when the caller
    keeps iterating past `cap`.
    """)
    t = residue % modulus
    if t < start:
        t += ((start - t + modulus - 1) // modulus) * modulus
    while t <= cap:
        if sympy.isprime(t):
            yield t
        t += modulus
    raise SearchCapExceeded(
        f'prime = {residue} mod {modulus}', cap
    )
