# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""\
=====================================================================
:mod:`gspcert.selmer` -- Cohomology of (Z/m)^x acting on Z/m
=====================================================================

``G = (Z/m)^x`` acts on ``A = Z/m`` by multiplication. Crossed
homomorphisms ``f(gh) = f(g) + g*f(h)`` are stored by their values on a
fixed CRT generating set of ``G``; classes are taken modulo the
coboundaries ``g -> (g-1)c``.

The local conditions are class-level: a class survives when its
restriction to every cyclic subgroup ``<h>`` is a coboundary, i.e.
``f(h)`` lies in ``(h-1)A``, and (optionally) when its restriction to
``H = {u = 1 (mod m_1)}``, ``m = 2^r m_1``, is a coboundary of ``H``.
Exactly for ``8 | m`` a non-trivial class passes the cyclic conditions
and is killed by the condition on ``H``.

Example:

    >>> selmer_dim(8)
    2
    >>> selmer_dim(8, use_2_condition=True)
    1
"""

import itertools
import math
import random

import sympy

from . import arith
from . import gvars
from .exceptions import VerificationError

__all__ = ['CocycleSpace',
           'UnitGroup',
           'crossed_hom_space',
           'dual_transfer',
           'selmer_dim',
           'special_class_check',
           'transfer_check']

default_samples       = 1000
default_transfer_cap  = 20000

class UnitGroup(object):

    (   "UnitGroup("
            "m:int"
        ")" """

    ``(Z/m)^x`` as a product of cyclic groups: one generator per odd
    prime power of ``m``, ``-1`` for ``4 || m`` and ``-1, 5`` for
    ``2^k | m`` with ``k >= 3``. Every generator is lifted by CRT to be
    ``1`` on the other components.
    """)

    __slots__ = ['components', 'generators', 'logs', 'm', 'orders']

    def __init__(self, m):
        if m < 2:
            raise ValueError(f'm must be at least 2, got {m}')
        self.m = m
        self.components = []
        self.generators = []
        self.orders     = []
        self.logs       = {}
        for r, k in sorted(arith.factorize(m).items()):
            modulus = r ** k
            if 2 == r:
                if 1 == k:
                    local = []
                elif 2 == k:
                    local = [(modulus - 1, 2)]
                else:
                    local = [(modulus - 1, 2), (5, 2 ** (k - 2))]
            else:
                local = [(int(sympy.primitive_root(modulus)),
                          (r - 1) * r ** (k - 1))]
            for g, order in local:
                self.components.append((modulus, g))
                self.generators.append(self._lift(g, modulus))
                self.orders.append(order)

    def _lift(self, g, modulus):
        rest = self.m // modulus
        value, _ = arith.crt_residue([g, 1], [modulus, rest])
        return value

    def __len__(self):
        return math.prod(self.orders)

    def __repr__(self):
        return f'<UnitGroup m={self.m} generators={self.generators}>'

    def element(self, exponents):
        u = 1
        for g, e in zip(self.generators, exponents):
            u = u * pow(g, e, self.m) % self.m
        return u % self.m

    def elements(self):
        for exponents in itertools.product(*(range(n)
                                             for n in self.orders)):
            yield self.element(exponents)

    def log(self, u):
        (   "log("
                "u:int"
            ") -> tuple" """

        The exponent vector of the unit `u` on the generators.
        """)
        u %= self.m
        if u in self.logs:
            return self.logs[u]
        if math.gcd(u, self.m) != 1:
            raise ValueError(f'{u} is not a unit modulo {self.m}')
        exponents = []
        for modulus, g in self.components:
            v = u % modulus
            if modulus % 8 == 0 and g == modulus - 1:
                # the sign part of (Z/2^k)^x
                exponents.append(0 if 1 == v % 4 else 1)
            elif modulus % 8 == 0:
                if 3 == v % 4:
                    v = -v % modulus
                exponents.append(int(sympy.discrete_log(modulus, v, 5)))
            else:
                exponents.append(int(sympy.discrete_log(modulus, v, g)))
        self.logs[u] = tuple(exponents)
        return self.logs[u]

class CocycleSpace(object):

    (   "CocycleSpace("
            "group:UnitGroup, "
            "cocycles:list"
        ")" """

    All crossed homomorphisms as value vectors on ``group.generators``
    together with the coboundary vectors.
    """)

    __slots__ = ['cocycles', 'coboundaries', 'group']

    def __init__(self, group, cocycles):
        m = group.m
        self.group    = group
        self.cocycles = cocycles
        self.coboundaries = \
            {tuple((g - 1) * c % m for g in group.generators)
             for c in range(m)}

    @property
    def m(self):
        return self.group.m

    @property
    def h1_order(self):
        return len(self.cocycles) // len(self.coboundaries)

    def evaluate(self, values, u):
        (   "evaluate("
                "values:tuple, "
                "u:int"
            ") -> int" """

        ``f(u)`` along the decomposition ``u = g_1^e_1 ... g_r^e_r``.
        """)
        m = self.m
        prefix = 1
        total  = 0
        for g, v, e in zip(self.group.generators, values,
                           self.group.log(u)):
            total = (total + prefix * geometric_residue(g, e, m) * v) % m
            prefix = prefix * pow(g, e, m) % m
        return total

    def is_coboundary(self, values):
        return tuple(values) in self.coboundaries

def geometric_residue(g, e, m):
    # 1 + g + ... + g^(e-1) modulo m
    total, term = 0, 1
    for _ in range(e):
        total = (total + term) % m
        term  = term * g % m
    return total

def crossed_hom_space(m, samples=-1, seed=0):
    (   "crossed_hom_space("
            "m:int, "
            "samples:int=-1, "
            "seed:int=0"
        ") -> CocycleSpace" """

    Solve ``N_i f(g_i) = 0`` (``N_i`` the norm element of ``<g_i>``) and
    ``(1-g_j) f(g_i) = (1-g_i) f(g_j)`` over ``Z/m``, then check the
    cocycle law on `samples` random triples ``(f, g, h)``.
    """)
    if -1 == samples:
        samples = default_samples
    group = UnitGroup(m)
    gens = group.generators
    candidates = []
    for g, order in zip(gens, group.orders):
        norm = geometric_residue(g, order, m)
        step = m // math.gcd(norm, m)
        candidates.append(range(0, m, step))
    cocycles = []
    def search(prefix):
        i = len(prefix)
        if i == len(gens):
            cocycles.append(tuple(prefix))
            return
        for v in candidates[i]:
            if all(((1 - gens[i]) * w - (1 - gens[j]) * v) % m == 0
                   for j, w in enumerate(prefix)):
                search(prefix + [v])
    search([])
    space = CocycleSpace(group, cocycles)
    rng = random.Random(seed)
    units = list(group.elements())
    for _ in range(samples):
        f = rng.choice(cocycles)
        g = rng.choice(units)
        h = rng.choice(units)
        if space.evaluate(f, g * h % m) != \
                (space.evaluate(f, g) + g * space.evaluate(f, h)) % m:
            raise VerificationError('cocycle law', f'f = {f}, g = {g}, '
                                    f'h = {h}')
    gvars.logger.debug(f'Z^1 for m = {m}: {len(cocycles)} cocycles, '
                       f'H^1 of order {space.h1_order}')
    return space

def passes_cyclic(space, values, units):
    m = space.m
    return all(space.evaluate(values, h) % math.gcd(h - 1, m) == 0
               for h in units)

def two_part(m):
    r = arith.valuation(m, 2) if 0 == m % 2 else 0
    return r, m >> r

def passes_flag(space, values, H):
    m = space.m
    images = [(h, space.evaluate(values, h)) for h in H]
    return any(all((f - (h - 1) * c) % m == 0 for h, f in images)
               for c in range(m))

def selmer_dim(m, use_2_condition=False):
    (   "selmer_dim("
            "m:int, "
            "use_2_condition:bool=False"
        ") -> int" """

    The order of the group of classes satisfying the cyclic conditions,
    and with `use_2_condition` also the condition on ``H``.
    """)
    space = crossed_hom_space(m)
    units = list(space.group.elements())
    _, m1 = two_part(m)
    H = [u for u in units if 0 == (u - 1) % m1]
    passing = 0
    for values in space.cocycles:
        if not passes_cyclic(space, values, units):
            continue
        if use_2_condition and not passes_flag(space, values, H):
            continue
        passing += 1
    return passing // len(space.coboundaries)

def special_character(m, g):
    return 0 if g % 8 in (1, 3) else m // 2

def special_class_check(m):
    (   "special_class_check("
            "m:int"
        ") -> dict" """

    For ``8 | m``: ``chi(g) = 0`` for ``g = 1, 3 (mod 8)`` and ``m/2``
    otherwise is a cocycle whose class is non-zero, trivial on every
    cyclic subgroup and non-trivial on ``H``.
    """)
    if m % 8:
        raise ValueError(f'8 does not divide {m}')
    group = UnitGroup(m)
    space = CocycleSpace(group, [])
    units = list(group.elements())
    chi = {g: special_character(m, g) for g in units}
    for g in units:
        for h in units:
            if chi[g * h % m] != (chi[g] + g * chi[h]) % m:
                raise VerificationError('chi is a cocycle',
                                        f'g = {g}, h = {h}')
    values = tuple(chi[g] for g in group.generators)
    if space.is_coboundary(values):
        raise VerificationError('class of chi is non-zero')
    for h in units:
        if chi[h] % math.gcd(h - 1, m):
            raise VerificationError('chi trivial on cyclic subgroups',
                                    f'h = {h}')
    _, m1 = two_part(m)
    H = [u for u in units if 0 == (u - 1) % m1]
    if any(all((chi[h] - (h - 1) * c) % m == 0 for h in H)
           for c in range(m)):
        raise VerificationError('chi non-trivial on H')
    return \
        {
                 'm': str(m),
            'values': {str(g): str(chi[g]) for g in group.generators},
            'cyclic': 'trivial',
                 'H': 'non-trivial'
        }

def dual_transfer(a, b, p, m):
    (   "dual_transfer("
            "a:int, "
            "b:int, "
            "p:int, "
            "m:int"
        ") -> int" """

    ``(a, b) -> p^(-a) * b`` from ``Z/2d x (Z/m)^x`` to ``(Z/m)^x``.
    """)
    if math.gcd(p, m) != 1:
        raise ValueError(f'{p} is not invertible modulo {m}')
    return pow(p, -a, m) * b % m

def transfer_check(p, d, cap=-1, seed=0):
    (   "transfer_check("
            "p:int, "
            "d:int, "
            "cap:int=-1, "
            "seed:int=0"
        ") -> dict" """

    :func:`dual_transfer` for ``m = p^d+1`` is a surjective homomorphism
    with kernel ``{(a, p^a)}`` of order ``2d``. Homomorphy is checked on
    all pairs when there are at most `cap` of them, else on `cap`
    random pairs.
    """)
    if -1 == cap:
        cap = default_transfer_cap
    m = p ** d + 1
    if pow(p, 2 * d, m) != 1:
        raise VerificationError('p^(2d) = 1 mod m')
    units = list(UnitGroup(m).elements())
    domain = [(a, b) for a in range(2 * d) for b in units]
    image  = {dual_transfer(a, b, p, m) for a, b in domain}
    if image != set(units):
        raise VerificationError('transfer surjective')
    kernel = [(a, b) for a, b in domain if 1 == dual_transfer(a, b, p, m)]
    if sorted(kernel) != sorted((a, pow(p, a, m)) for a in range(2 * d)):
        raise VerificationError('transfer kernel = {(a, p^a)}')
    if len(domain) ** 2 <= cap:
        pairs = itertools.product(domain, repeat=2)
    else:
        rng = random.Random(seed)
        pairs = ((rng.choice(domain), rng.choice(domain))
                 for _ in range(cap))
    for (a1, b1), (a2, b2) in pairs:
        lhs = dual_transfer((a1 + a2) % (2 * d), b1 * b2 % m, p, m)
        rhs = dual_transfer(a1, b1, p, m) * dual_transfer(a2, b2, p, m) % m
        if lhs != rhs:
            raise VerificationError('transfer homomorphism',
                                    f'({a1}, {b1}), ({a2}, {b2})')
    return \
        {
                  'm': str(m),
             'kernel': str(len(kernel)),
            'image': str(len(image))
        }
