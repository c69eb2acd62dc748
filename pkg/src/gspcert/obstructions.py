# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""\
================================================================
:mod:`gspcert.obstructions` -- Local lifting problems
================================================================

For odd ``p`` the abelianization ``Z/(p-1) x Z/2d`` of ``N`` is realized
by ``Q(zeta_p)`` and a field ``F = F_1 F_2`` with ``F_1`` the degree
``2^n`` subfield of ``Q(zeta_N1)`` and ``F_2`` the degree ``d_1``
subfield of ``Q(zeta_N2)``, where ``2d = 2^n d_1``. The embedding
problem into ``N`` is checked at every ramified place:

* at infinity the lift of complex conjugation has order 2,
* at ``p``, ``N_1`` and ``N_2`` a pair ``(sigma~, tau~)`` of words is
  solved for with ``sigma~ tau~ sigma~^-1 = tau~^t`` (``t`` the
  residue characteristic).

Each lift is computed from a linear congruence and then verified by
word arithmetic in :class:`~gspcert.metacyclic.GroupShape`.

Auxiliary split primes and the local twist datum at the chosen prime
``l`` are computed here as well.
"""

import collections
import math

import sympy

from . import arith
from . import gvars
from .exceptions import (LocalProblemsFailed, SearchCapExceeded,
                         VerificationError)
from .metacyclic import GroupShape, WordElement, abelianization

__all__ = ['Constraint',
           'EmbeddingInstance',
           'FrobeniusClass',
           'TameLift',
           'TwistDatum',
           'Unsolvable',
           'complex_conjugation',
           'decompose_2d',
           'eprime_parity',
           'find_ramified_primes',
           'find_split_prime',
           'frobenius_class',
           'lift_at_N1',
           'lift_at_N2',
           'lift_at_infinity',
           'lift_at_p',
           'local_twist_data',
           'obstruction_report',
           'special_split_constraints',
           'split_constraints']

default_prime_search_cap = 10000000
default_brute_force_cap  = 10000

###########################################################################
#                          The embedding instance                         #
###########################################################################

def decompose_2d(d):
    (   "decompose_2d("
            "d:int"
        ") -> (int, int)" """

    ``(n, d_1)`` with ``2d = 2^n * d_1`` and ``d_1`` odd.
    """)
    if d < 1:
        raise ValueError(f'd must be a positive integer, got {d}')
    n = arith.valuation(2 * d, 2)
    return n, (2 * d) >> n

class EmbeddingInstance(object):

    (   "EmbeddingInstance("
            "p:int, "
            "d:int, "
            "N1:int, "
            "N2:int=None"
        ")"
    )

    __slots__ = ['N1', 'N2', 'd', 'd1', 'n', 'p', 'shape']

    def __init__(self, p, d, N1, N2=None):
        self.p  = p
        self.d  = d
        self.n, self.d1 = decompose_2d(d)
        self.N1 = N1
        self.N2 = N2
        self.shape = GroupShape.for_normalizer(p, d)

    def __repr__(self):
        return f'<EmbeddingInstance p={self.p} d={self.d} ' \
               f'N1={self.N1} N2={self.N2}>'

    @property
    def m(self):
        return self.p ** self.d + 1

    @property
    def alphaN2(self):
        if self.N2 is None:
            return None
        return (self.N2 - 1) // (2 * self.d1)

    def check(self):
        (   "check() -> None" """

        Re-verify the conditions on ``N_1`` and ``N_2``; raises
        :class:`VerificationError` naming the first that fails.
        """)
        p, n, d1, N1, N2 = self.p, self.n, self.d1, self.N1, self.N2
        if not sympy.isprime(N1):
            raise VerificationError('N_1 prime', f'{N1}')
        if N1 % 2 ** (n + 1) != 2 ** n + 1:
            raise VerificationError('N_1 = 2^n+1 mod 2^(n+1)', f'{N1}')
        if pow(p, (N1 - 1) // 2, N1) != N1 - 1:
            raise VerificationError('p is a non-residue mod N_1',
                                    f'p = {p}, N_1 = {N1}')
        if 1 == d1:
            if N2 is not None:
                raise VerificationError('N_2 absent when d_1 = 1')
            distinct = [p, N1]
        else:
            if N2 is None or not sympy.isprime(N2):
                raise VerificationError('N_2 prime', f'{N2}')
            if N2 % d1 != 1:
                raise VerificationError('N_2 = 1 mod d_1', f'{N2}')
            if N1 % N2 != 1:
                raise VerificationError('N_1 = 1 mod N_2',
                                        f'N_1 = {N1}, N_2 = {N2}')
            distinct = [p, N1, N2]
        if len(set(distinct)) != len(distinct):
            raise VerificationError('p, N_1, N_2 distinct', f'{distinct}')

    def to_json(self):
        return \
            {
                 'p': str(self.p),
                 'd': str(self.d),
                 'n': str(self.n),
                'd1': str(self.d1),
                'N1': str(self.N1),
                'N2': None if self.N2 is None else str(self.N2)
            }

def find_ramified_primes(p, d, cap=-1):
    (   "find_ramified_primes("
            "p:int, "
            "d:int, "
            "cap:int=-1"
        ") -> EmbeddingInstance" """

    ``N_2`` is the smallest prime ``= 1 (mod d_1)`` other than ``p``
    (absent when ``d_1 = 1``); ``N_1`` is the smallest prime with
    ``N_1 = 2^n+1 (mod 2^(n+1))``, ``N_1 = 1 (mod N_2)`` and ``p`` a
    quadratic non-residue modulo ``N_1``, other than ``p`` and ``N_2``.
    """)
    if -1 == cap:
        cap = default_prime_search_cap
    arith.check_prime(p)
    if 2 == p:
        raise ValueError('ramified primes are only needed for odd p')
    n, d1 = decompose_2d(d)
    N2 = None
    residues = [2 ** n + 1]
    moduli   = [2 ** (n + 1)]
    if d1 > 1:
        for t in arith.primes_in_progression(1, d1, cap):
            if t != p:
                N2 = t
                break
        residues.append(1)
        moduli.append(N2)
    residue, modulus = arith.crt_residue(residues, moduli)
    for t in arith.primes_in_progression(residue, modulus, cap):
        if t in (p, N2):
            continue
        if pow(p, (t - 1) // 2, t) == t - 1:
            N1 = t
            break
    gvars.logger.debug(f'ramified primes ({p}, {d}): N_1 = {N1}, '
                       f'N_2 = {N2}')
    instance = EmbeddingInstance(p, d, N1, N2)
    instance.check()
    return instance

###########################################################################
#                            Frobenius classes                            #
###########################################################################

FrobeniusClass = \
    collections.namedtuple(
        'FrobeniusClass',
        [
            'place',
            'x',
            'y'
        ]
    )

def quotient_index(u, N, order):
    # image of u in the cyclic quotient of order `order` of (Z/N)^x
    return arith.discrete_index(u, N) % order

def field_component(instance, t):
    (   "field_component("
            "instance:EmbeddingInstance, "
            "t:int"
        ") -> int" """

    The Frobenius of the prime `t` in ``Gal(F|Q) = Z/2d``, the CRT
    combination of its classes in ``Gal(F_1|Q) = Z/2^n`` and
    ``Gal(F_2|Q) = Z/d_1``. A prime ramified in ``F_2`` contributes 0
    there.
    """)
    n, d1 = instance.n, instance.d1
    first = quotient_index(t, instance.N1, 2 ** n)
    if 1 == d1 or t == instance.N2:
        second = 0
    else:
        second = quotient_index(t, instance.N2, d1)
    value, _ = arith.crt_residue([first, second], [2 ** n, d1])
    return value

def frobenius_class(instance, place):
    (   "frobenius_class("
            "instance:EmbeddingInstance, "
            "place:str"
        ") -> FrobeniusClass" """

    The image in ``Z/(p-1) x Z/2d`` attached to `place`:

    * ``'p'``: ``(0, a)``, ``a`` the Frobenius of ``p`` in ``Gal(F|Q)``,
      odd because ``p`` is a non-residue modulo ``N_1``;
    * ``'N1'``: ``(a, 0)``, ``a`` the index of ``N_1`` modulo ``p``
      with ``(p^d+1)/2 + a`` even;
    * ``'N2'``: ``(a, b*d_1)`` with ``a`` the index of ``N_2`` modulo
      ``p``.
    """)
    p, d = instance.p, instance.d
    if 'p' == place:
        a = field_component(instance, p)
        if 0 == a % 2:
            raise VerificationError('Frobenius at p is odd', f'a = {a}')
        return FrobeniusClass('p', 0, a)
    if 'N1' == place:
        a = arith.discrete_index(instance.N1, p)
        if (instance.m // 2 + a) % 2:
            raise VerificationError('(p^d+1)/2 + a even at N_1',
                                    f'a = {a}')
        return FrobeniusClass('N1', a, 0)
    if 'N2' == place:
        if instance.N2 is None:
            raise ValueError('N_2 is absent for d_1 = 1')
        a = arith.discrete_index(instance.N2, p)
        bd1 = field_component(instance, instance.N2)
        if bd1 % instance.d1:
            raise VerificationError('Frobenius at N_2 lies in Z/2^n',
                                    f'{bd1}')
        return FrobeniusClass('N2', a, bd1)
    raise ValueError(f'unknown place {place!r}')

def complex_conjugation(instance):
    (   "complex_conjugation("
            "instance:EmbeddingInstance"
        ") -> FrobeniusClass" """

    The image of complex conjugation, ``-1`` in every cyclotomic
    quotient; equal to ``((p-1)/2, d)``.
    """)
    p, d = instance.p, instance.d
    x = arith.discrete_index(p - 1, p)
    first = quotient_index(-1, instance.N1, 2 ** instance.n)
    if 1 == instance.d1:
        second = 0
    else:
        second = quotient_index(-1, instance.N2, instance.d1)
    y, _ = arith.crt_residue([first, second], [2 ** instance.n, instance.d1])
    if (x, y) != ((p - 1) // 2, d):
        raise VerificationError('complex conjugation = ((p-1)/2, d)',
                                f'({x}, {y})')
    return FrobeniusClass('infinity', x, y)

###########################################################################
#                                  Lifts                                  #
###########################################################################

class TameLift(object):

    (   "TameLift("
            "place:str, "
            "sigma:WordElement, "
            "tau:WordElement, "
            "twist:int, "
            "lift_exponent:int=None"
        ")" """

    Words with ``sigma tau sigma^-1 = tau^twist``.
    """)

    __slots__ = ['lift_exponent', 'place', 'sigma', 'tau', 'twist']

    solvable = True

    def __init__(self, place, sigma, tau, twist, lift_exponent=None):
        self.place = place
        self.sigma = sigma
        self.tau   = tau
        self.twist = twist
        self.lift_exponent = lift_exponent

    def __repr__(self):
        return f'<TameLift {self.place}: sigma={self.sigma} ' \
               f'tau={self.tau}>'

    def holds(self):
        return self.sigma * self.tau * self.sigma.inverse() == \
               self.tau ** self.twist

    def verify(self):
        if not self.holds():
            raise VerificationError(
                f'tame relation at {self.place}',
                f'sigma = {self.sigma}, tau = {self.tau}, '
                f'twist = {self.twist}'
            )
        return self

    def to_json(self):
        return \
            {
                        'place': self.place,
                        'sigma': self.sigma.to_json(),
                          'tau': self.tau.to_json(),
                        'twist': str(self.twist),
                'lift_exponent': None if self.lift_exponent is None
                                 else str(self.lift_exponent)
            }

class Unsolvable(object):

    (   "Unsolvable("
            "place:str, "
            "a:int, "
            "confirmed:bool=None"
        ")" """

    `confirmed` is True when a brute-force search over all candidate
    lifts found none, None when the search was skipped.
    """)

    __slots__ = ['a', 'confirmed', 'place']

    solvable = False

    def __init__(self, place, a, confirmed=None):
        self.place     = place
        self.a         = a
        self.confirmed = confirmed

    def __repr__(self):
        return f'<Unsolvable {self.place}: a={self.a}>'

    def to_json(self):
        return \
            {
                    'place': self.place,
                        'a': str(self.a),
                'confirmed': self.confirmed
            }

def lift_at_infinity(shape):
    (   "lift_at_infinity("
            "shape:GroupShape"
        ") -> WordElement" """

    ``x^((p-1)/2) y^d``, an element of order 2 over complex conjugation.
    """)
    p, d = shape.p, shape.d
    w = WordElement(shape, (p - 1) // 2, d)
    if not (w * w).is_identity() or w.is_identity():
        raise VerificationError('lift at infinity has order 2', f'{w}')
    if abelianization(w) != ((p - 1) // 2 % (p - 1), d):
        raise VerificationError('lift at infinity maps to ((p-1)/2, d)')
    return w

def eprime(shape, a):
    m = shape.p ** shape.d + 1
    return m // math.gcd(m, arith.geometric_sum(shape.p, a - 1))

def eprime_parity(shape, a):
    (   "eprime_parity("
            "shape:GroupShape, "
            "a:int"
        ") -> (int, bool)" """

    ``e' = (p^d+1) / gcd(p^d+1, 1 + p + ... + p^(a-2))`` and the verdict
    that ``e'`` is odd exactly when ``a`` is.
    """)
    if a < 2:
        raise ValueError(f'a must be at least 2, got {a}')
    value = eprime(shape, a)
    verdict = (value % 2 == 1) == (a % 2 == 1)
    if not verdict:
        raise VerificationError('e\' odd iff a odd', f'a = {a}, '
                                f'e\' = {value}')
    return value, verdict

def lift_at_p(shape, a, cap=-1):
    (   "lift_at_p("
            "shape:GroupShape, "
            "a:int, "
            "cap:int=-1"
        ") -> TameLift or Unsolvable" """

    Solve ``k(p-1) = -1 (mod e')`` and lift to ``sigma~ = y^a``,
    ``tau~ = x^(1+k(p-1))``. Even `a` has no lift; when ``|N| <= cap``
    this is confirmed over every ``sigma~ = x^(l(p-1)) y^a`` and
    ``tau~ = x^(1+k(p-1))``.
    """)
    if -1 == cap:
        cap = default_brute_force_cap
    p, e = shape.p, shape.e
    a %= shape.mb
    if 0 == a % 2:
        confirmed = None
        if shape.order <= cap:
            confirmed = not any(
                candidate_lift(shape, a, l, k).holds()
                for l in range(e // (p - 1))
                for k in range(e // (p - 1))
            )
            if not confirmed:
                raise VerificationError('no lift at p for even a',
                                        f'a = {a}')
        gvars.logger.debug(f'lift at p: a = {a} is unsolvable')
        return Unsolvable('p', a, confirmed)
    modulus = eprime(shape, a)
    k = arith.solve_linear_congruence(p - 1, -1, modulus)
    if k is None:
        raise VerificationError('k(p-1) = -1 mod e\' solvable',
                                f'e\' = {modulus}')
    return candidate_lift(shape, a, 0, k).verify()

def candidate_lift(shape, a, l, k):
    p = shape.p
    return \
        TameLift(
            'p',
            WordElement(shape, l * (p - 1) % shape.e, a),
            WordElement(shape, (1 + k * (p - 1)) % shape.e, 0),
            p,
            k
        )

def lift_at_N1(instance, a):
    (   "lift_at_N1("
            "instance:EmbeddingInstance, "
            "a:int"
        ") -> TameLift" """

    Solve ``k(1-p^d_1) = (p^d+1)/2 + a(1+p+...+p^(d_1-1)) (mod p^d+1)``
    and lift to ``sigma~ = x^(a+k(p-1))``, ``tau~ = y^d_1``, checked
    against the actual ``N_1``.
    """)
    shape, p, d1, m = instance.shape, instance.p, instance.d1, instance.m
    if (m // 2 + a) % 2:
        raise VerificationError('(p^d+1)/2 + a even', f'a = {a}')
    k = arith.solve_linear_congruence(
        1 - p ** d1, m // 2 + a * arith.geometric_sum(p, d1), m
    )
    if k is None:
        raise VerificationError('congruence at N_1 solvable', f'a = {a}')
    lift = \
        TameLift(
            'N1',
            WordElement(shape, (a + k * (p - 1)) % shape.e, 0),
            WordElement(shape, 0, d1),
            instance.N1,
            k
        )
    if lift.tau ** instance.N1 != \
            WordElement(shape, shape.t, d1):
        raise VerificationError('tau~^N_1 = x^(e/2) y^d_1')
    return lift.verify()

def lift_at_N2(instance, a, bd1):
    (   "lift_at_N2("
            "instance:EmbeddingInstance, "
            "a:int, "
            "bd1:int"
        ") -> TameLift" """

    With ``h = 2^(n-1)`` and ``M = (p^d+1)/(p^h+1)``, solve
    ``k(1-p^h) = a(1+p+...+p^(h-1)) (mod M)`` and lift to
    ``sigma~ = x^(a+k(p-1)) y^(b*d_1)``, ``tau~ = y^(2^n)``.
    """)
    if instance.N2 is None:
        raise ValueError('N_2 is absent for d_1 = 1')
    shape, p, n, m = instance.shape, instance.p, instance.n, instance.m
    h = 2 ** (n - 1)
    M = m // (p ** h + 1)
    if 1 != math.gcd(1 - p ** h, M):
        raise VerificationError('gcd(1-p^h, M) = 1', f'M = {M}')
    k = arith.solve_linear_congruence(
        1 - p ** h, a * arith.geometric_sum(p, h), M
    )
    lift = \
        TameLift(
            'N2',
            WordElement(shape, (a + k * (p - 1)) % shape.e,
                        bd1 % shape.mb),
            WordElement(shape, 0, 2 ** n % shape.mb),
            instance.N2,
            k
        )
    if lift.tau ** instance.N2 != lift.tau:
        raise VerificationError('tau~^N_2 = y^(2^n)')
    return lift.verify()

def obstruction_report(p, d, cap=-1, brute_force_cap=-1):
    (   "obstruction_report("
            "p:int, "
            "d:int, "
            "cap:int=-1, "
            "brute_force_cap:int=-1"
        ") -> dict" """

    Solve every local problem for ``(p, d)``. The failures of the
    independent places are collected and raised together as
    :class:`~gspcert.exceptions.LocalProblemsFailed`. For ``p = 2`` the
    embedding problem is a semidirect product and the report is trivial.
    """)
    if 2 == p:
        return {'p': '2', 'd': str(d), 'trivial': True}
    instance = find_ramified_primes(p, d, cap)
    shape = instance.shape
    report = \
        {
                   'p': str(p),
                   'd': str(d),
             'trivial': False,
            'instance': instance.to_json(),
           'frobenius': {},
               'lifts': {}
        }
    failures = []
    def place(name, func):
        try:
            report['lifts'][name] = func()
        except VerificationError as err:
            gvars.logger.error(f'local problem at {name}: {err}')
            failures.append(err)
    def at_infinity():
        conj = complex_conjugation(instance)
        report['frobenius']['infinity'] = [str(conj.x), str(conj.y)]
        return {'place': 'infinity',
                'word': lift_at_infinity(shape).to_json()}
    def at_p():
        frob = frobenius_class(instance, 'p')
        report['frobenius']['p'] = [str(frob.x), str(frob.y)]
        lift = lift_at_p(shape, frob.y, brute_force_cap)
        if not lift.solvable:
            raise VerificationError('lift at p', f'a = {frob.y}')
        return lift.to_json()
    def at_N1():
        frob = frobenius_class(instance, 'N1')
        report['frobenius']['N1'] = [str(frob.x), str(frob.y)]
        return lift_at_N1(instance, frob.x).to_json()
    def at_N2():
        frob = frobenius_class(instance, 'N2')
        report['frobenius']['N2'] = [str(frob.x), str(frob.y)]
        return lift_at_N2(instance, frob.x, frob.y).to_json()
    place('infinity', at_infinity)
    place('p', at_p)
    place('N1', at_N1)
    if instance.N2 is not None:
        place('N2', at_N2)
    if failures:
        raise LocalProblemsFailed(failures)
    gvars.logger.info(f'local problems ({p}, {d}): solved at '
                      f'{", ".join(report["lifts"])}')
    return report

###########################################################################
#                       Split primes and local twist                      #
###########################################################################

Constraint = \
    collections.namedtuple(
        'Constraint',
        [
            'kind',
            'k',
            'modulus'
        ]
    )

def split_constraints(p, d, instance=None, q=None):
    (   "split_constraints("
            "p:int, "
            "d:int, "
            "instance:EmbeddingInstance=None, "
            "q:int=None"
        ") -> list" """

    ``t = 1`` modulo ``p``, ``p^d+1`` and (when given) `q`; for odd ``p``
    also a ``2^n``-th power residue modulo ``N_1`` and a ``d_1``-th power
    residue modulo ``N_2``, so that ``t`` splits completely in ``F``.
    """)
    constraints = [Constraint('congruence', 1, p),
                   Constraint('congruence', 1, p ** d + 1)]
    if q is not None:
        constraints.append(Constraint('congruence', 1, q))
    if instance is not None:
        constraints.append(
            Constraint('power_residue', 2 ** instance.n, instance.N1)
        )
        if instance.N2 is not None:
            constraints.append(
                Constraint('power_residue', instance.d1, instance.N2)
            )
    return constraints

def special_split_constraints(q=13):
    (   "special_split_constraints("
            "q:int=13"
        ") -> list" """

    The conditions for the order 78 group of ``(g, p) = (3, 3)``:
    ``t = 1`` modulo 9 and modulo `q`.
    """)
    return [Constraint('congruence', 1, 9),
            Constraint('congruence', 1, q)]

def find_split_prime(constraints, cap=-1, exclude=()):
    (   "find_split_prime("
            "constraints:list, "
            "cap:int=-1, "
            "exclude:tuple=()"
        ") -> int" """

    The smallest prime satisfying every constraint and not in `exclude`.
    Power residues are tested with the Euler-type criterion.
    """)
    if -1 == cap:
        cap = default_prime_search_cap
    modulus = 1
    for c in constraints:
        if 'congruence' == c.kind:
            modulus = math.lcm(modulus, c.modulus)
        elif 'power_residue' != c.kind:
            raise ValueError(f'unknown constraint kind {c.kind!r}')
    residues = [c for c in constraints if 'power_residue' == c.kind]
    for t in arith.primes_in_progression(1, modulus, cap, start=3):
        if t in exclude:
            continue
        if all(arith.is_power_residue(t, c.k, c.modulus)
               for c in residues):
            gvars.logger.debug(f'split prime: {t} (modulus {modulus})')
            return t
    raise SearchCapExceeded('split prime', cap)

TwistDatum = \
    collections.namedtuple(
        'TwistDatum',
        [
            'l',
            'q',
            'sigma',
            'tau'
        ]
    )

def local_twist_data(l, q, shape):
    (   "local_twist_data("
            "l:int, "
            "q:int, "
            "shape:GroupShape"
        ") -> TwistDatum" """

    The prescribed local homomorphism at ``l`` into ``[N, N]``: Frobenius
    goes to 1 and tame inertia to the element of order `q`,
    ``x^(s*|A|/q)`` with ``[N, N] = A = <x^s>``.
    """)
    if (l - 1) % q:
        raise ValueError(f'{q} does not divide {l} - 1')
    A = shape.derived_order
    if A % q:
        raise ValueError(f'{q} does not divide |[N, N]| = {A}')
    tau = WordElement(shape, shape.derived_step * (A // q) % shape.e, 0)
    if tau.order() != q:
        raise VerificationError('twist image has order q', f'{tau}')
    if not (tau ** (l - 1)).is_identity():
        raise VerificationError('(l-1) c(tau) = 0')
    return TwistDatum(l, q, shape.identity, tau)
