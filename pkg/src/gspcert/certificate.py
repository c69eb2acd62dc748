# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""\
==============================================================
:mod:`gspcert.certificate` -- Construction and verification
==============================================================

:func:`construct_certificate` runs the whole pipeline for ``(g, p)`` and
returns a JSON-ready dict; :func:`verify_certificate` re-checks such a
dict from its raw data only. The verifier has its own word arithmetic,
matrix arithmetic and prime searches, so that a bug on the construction
side cannot vouch for itself.

Certificates carry ``"schema": 1``, decimal strings for all primes,
exponents and big integers, row-major integer matrices, the list of
ingredients that are cited rather than computed, and an ``xxh64`` digest
of the canonical JSON body.

Example:

    >>> certificate = construct_certificate(2, 5)
    >>> certificate['witness']['q']
    '13'
    >>> verify_certificate(certificate).status
    'pass'
"""

import collections
import json
import math
import random

import numpy
import sympy
import xxhash
try:
    from sympy.core.intfunc import igcdex
except ImportError:
    from sympy.core.numbers import igcdex
from sympy.polys.domains import ZZ
from sympy.ntheory.modular import crt
from sympy.polys.galoistools import (gf_add, gf_irreducible_p, gf_mul,
                                     gf_neg, gf_pow_mod, gf_rem, gf_strip,
                                     gf_sub)

from . import arith
from . import gvars
from .cartan import (build_normalizer, cartan_subgroup_check,
                     similitude_character_check, verify_presentation)
from .exceptions import (CertificateSchemaError, GspcertError,
                         VerificationError)
from .kg import kg_exact
from .metacyclic import (GroupShape, derived_subgroup_check,
                         extension_splits, matrix_word_consistency)
from .obstructions import (Constraint, find_ramified_primes,
                           find_split_prime, local_twist_data,
                           obstruction_report, special_split_constraints,
                           split_constraints)
from .selmer import selmer_dim, special_class_check, transfer_check
from .witness import build_33_group, exceptional_pairs, find_witness

__all__ = ['Settings',
           'VerifyResult',
           'construct_certificate',
           'dumps',
           'loads',
           'verify_certificate']

schema_version     = 1
default_selmer_cap = 1000
default_verify_samples = 100

assumed_ingredients = \
    [
        'Grothendieck and Raynaud inertia criteria: a prime-to-p inertia '
        'image at l of order q not dividing K_g excludes p-torsion of '
        'g-dimensional abelian varieties',
        'vanishing of the global obstruction to the embedding problem '
        '(Poitou-Tate duality)',
        'surjectivity of H^1(Q, A) -> H^1(Q_v, A) used to twist by the '
        'prescribed local class'
    ]

exceptional_ingredients = \
    [
        'unirationality of the moduli of principally polarized abelian '
        'surfaces and threefolds with full level structure: every '
        'representation with cyclotomic similitude character arises'
    ]

class Settings(object):

    (   "Settings("
            "**kwargs"
        ")" """

    Bounds shared by every stage of the pipeline; unknown keywords
    raise TypeError.
    """)

    __slots__ = ['brute_force_cap',
                 'enumeration_cap',
                 'kg_cross_check_genus',
                 'kg_sample_bound',
                 'prime_search_cap',
                 'samples',
                 'seed']

    defaults = \
        {
                 'kg_sample_bound': 10000,
            'kg_cross_check_genus': 12,
                'prime_search_cap': 10000000,
                 'enumeration_cap': 100000,
                 'brute_force_cap': 10000,
                         'samples': 1000,
                            'seed': 0
        }

    def __init__(self, **kwargs):
        for key in kwargs:
            if key not in self.defaults:
                raise TypeError(f'unknown setting {key!r}')
        for key, value in self.defaults.items():
            setattr(self, key, kwargs.get(key, value))

    @classmethod
    def from_config(cls, cfg):
        return cls(**{key: getattr(cfg, key) for key in cls.defaults
                      if getattr(cfg, key, None) is not None})

    def __repr__(self):
        fields = ', '.join(f'{key}={getattr(self, key)}'
                           for key in self.defaults)
        return f'Settings({fields})'

def stringify(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, numpy.integer)):
        return str(int(obj))
    if isinstance(obj, dict):
        return {str(key): stringify(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [stringify(value) for value in obj]
    raise TypeError(f'cannot serialize {obj!r}')

def canonical(body):
    return json.dumps(body, sort_keys=True, separators=(',', ':'))

def digest(body):
    body = {key: value for key, value in body.items() if 'digest' != key}
    return xxhash.xxh64_hexdigest(canonical(body).encode('utf-8'))

def dumps(certificate):
    return json.dumps(certificate, sort_keys=True, indent=1) + '\n'

def loads(data):
    try:
        return json.loads(data)
    except ValueError as err:
        raise CertificateSchemaError(f'not JSON: {err}') from None

###########################################################################
#                               Construction                              #
###########################################################################

def construct_certificate(g, p, config=None):
    (   "construct_certificate("
            "g:int, "
            "p:int, "
            "config:Settings=None"
        ") -> dict" """

    Run K_g, the witness search, the group construction and checks, the
    local problems, the cohomology checks and the prime searches. Any
    failed check raises :class:`VerificationError`; the pairs
    ``(2, 2)``, ``(2, 3)`` and ``(3, 2)`` give an exceptional
    certificate.
    """)
    if config is None:
        config = Settings()
    if g < 2:
        raise ValueError(f'g must be at least 2, got {g}')
    arith.check_prime(p)
    gvars.logger.info(f'constructing the certificate for (g, p) = '
                      f'({g}, {p})')
    kg = kg_exact(g, config.kg_sample_bound, config.kg_cross_check_genus)
    certificate = \
        {
            'schema': schema_version,
             'input': {'g': str(g), 'p': str(p)},
                'kg': kg.to_json()
        }
    if (g, p) == (3, 3):
        certificate.update(special_body(kg, config))
    else:
        witness = find_witness(g, p, kg)
        if witness.exceptional:
            certificate['kind']     = 'exceptional'
            certificate['witness']  = witness.to_json()
            certificate['assumed']  = list(exceptional_ingredients)
        else:
            certificate.update(standard_body(g, p, witness, config))
    certificate['digest'] = digest(certificate)
    gvars.logger.info(f'certificate ({g}, {p}) {certificate["kind"]}, '
                      f'digest {certificate["digest"]}')
    return certificate

def standard_body(g, p, witness, config):
    d, q = witness.d, witness.q
    nd = build_normalizer(p, d)
    shape = GroupShape.for_normalizer(p, d)
    presentation = verify_presentation(nd, config.enumeration_cap)
    similitude   = similitude_character_check(nd)
    cartan       = cartan_subgroup_check(nd, config.enumeration_cap)
    derived      = derived_subgroup_check(shape)
    consistency  = \
        matrix_word_consistency(shape, nd, config.samples,
                                seed=config.seed)
    splits = None
    if shape.order <= config.brute_force_cap:
        splits, _ = extension_splits(shape)
        if splits != (2 == p):
            raise VerificationError('N -> N^ab splits exactly for p = 2')
    embedding = obstruction_report(p, d, config.prime_search_cap,
                                   config.brute_force_cap)
    instance = None
    if 2 != p:
        instance = find_ramified_primes(p, d, config.prime_search_cap)
    constraints_l = split_constraints(p, d, instance, q)
    constraints_v = split_constraints(p, d, instance)
    l = find_split_prime(constraints_l, config.prime_search_cap)
    v = find_split_prime(constraints_v, config.prime_search_cap,
                         exclude=(l,))
    twist = local_twist_data(l, q, shape)
    tower = nd.tower
    return \
        {
                 'kind': 'standard',
              'witness': witness.to_json(),
                'tower': dict(tower.to_json(),
                              x=nd.x.to_json(),
                              alpha=None if nd.alpha is None
                                    else nd.alpha.to_json()),
                'group':
                    {
                               'shape': shape.to_json(),
                                   'J': nd.form.to_json(),
                                   'X': nd.X.to_json(),
                                   'Y': nd.Y.to_json(),
                          'transcript': list(nd.transcript),
                        'presentation': stringify(presentation),
                          'similitude': stringify(similitude),
                              'cartan': stringify(cartan),
                             'derived': stringify(derived),
                         'consistency': stringify(consistency),
                              'splits': splits
                    },
            'embedding': embedding,
               'selmer': selmer_body(p, d),
            'auxiliary': auxiliary_body(l, v, constraints_l, constraints_v,
                                        config),
                'twist': twist_body(twist),
              'assumed': list(assumed_ingredients)
        }

def special_body(kg, config):
    q = 13
    if kg.divides(q):
        raise VerificationError('13 does not divide K_3')
    data = build_33_group(config.enumeration_cap)
    shape = data.shape
    consistency = \
        matrix_word_consistency(shape, data, config.samples,
                                seed=config.seed)
    derived = derived_subgroup_check(shape)
    splits, _ = extension_splits(shape)
    constraints_l = special_split_constraints(q)
    constraints_v = special_split_constraints(q)[:1]
    l = find_split_prime(constraints_l, config.prime_search_cap)
    v = find_split_prime(constraints_v, config.prime_search_cap,
                         exclude=(l,))
    twist = local_twist_data(l, q, shape)
    return \
        {
                 'kind': 'special33',
              'witness': {'d': '3', 'q': str(q), 'exceptional': False,
                          'special33': True},
                'group':
                    {
                               'shape': shape.to_json(),
                                'zeta': list(data.zeta),
                                   'J': data.form.to_json(),
                                   'X': data.X.to_json(),
                                   'Y': data.Y.to_json(),
                          'transcript': list(data.transcript),
                               'order': str(data.order),
                             'derived': stringify(derived),
                         'consistency': stringify(consistency),
                              'splits': splits
                    },
            'embedding': {'p': '3', 'd': '3', 'trivial': True},
            'auxiliary': auxiliary_body(l, v, constraints_l, constraints_v,
                                        config),
                'twist': twist_body(twist),
              'assumed': list(assumed_ingredients)
        }

def selmer_body(p, d):
    m = p ** d + 1
    body = {'m': str(m), 'transfer': transfer_check(p, d)}
    if m <= default_selmer_cap:
        body['cyclic_order'] = str(selmer_dim(m))
        if 0 == m % 8:
            flag_order = selmer_dim(m, use_2_condition=True)
            if 1 != flag_order:
                raise VerificationError('condition at 2 kills the class',
                                        f'order {flag_order}')
            body['flag_order'] = str(flag_order)
            body['special']    = special_class_check(m)
    return body

def auxiliary_body(l, v, constraints_l, constraints_v, config):
    return \
        {
                        'l': str(l),
                        'v': str(v),
            'constraints_l': [[c.kind, str(c.k), str(c.modulus)]
                              for c in constraints_l],
            'constraints_v': [[c.kind, str(c.k), str(c.modulus)]
                              for c in constraints_v],
                      'cap': str(config.prime_search_cap)
        }

def twist_body(twist):
    return \
        {
                'l': str(twist.l),
                'q': str(twist.q),
            'sigma': twist.sigma.to_json(),
              'tau': twist.tau.to_json(),
            'inertia_generator': twist.tau.to_json()
        }

###########################################################################
#                               Verification                              #
###########################################################################

VerifyResult = \
    collections.namedtuple(
        'VerifyResult',
        [
            'status',
            'check',
            'detail'
        ]
    )

def verify_certificate(certificate, enumeration_cap=-1):
    (   "verify_certificate("
            "certificate:dict or str, "
            "enumeration_cap:int=-1"
        ") -> VerifyResult" """

    Recompute every check of `certificate` (a dict or its JSON text).
    ``status`` is ``'pass'``, ``'exceptional'`` or ``'fail'``; on failure
    ``check`` names the first failing check. The digest is checked last.
    """)
    if -1 == enumeration_cap:
        enumeration_cap = Settings.defaults['enumeration_cap']
    try:
        if isinstance(certificate, str):
            certificate = loads(certificate)
        verifier = Verifier(certificate, enumeration_cap)
        status = verifier.run()
    except VerificationError as err:
        gvars.logger.error(f'verification failed: {err}')
        return VerifyResult('fail', err.check, err.detail)
    except (GspcertError, KeyError, TypeError, ValueError, IndexError) \
            as err:
        gvars.logger.error(f'verification failed: {err!r}')
        return VerifyResult('fail', 'schema', repr(err))
    return VerifyResult(status, None, '')

class Verifier(object):

    __slots__ = ['cert', 'enumeration_cap', 'g', 'kg', 'p']

    def __init__(self, cert, enumeration_cap):
        self.cert = cert
        self.enumeration_cap = enumeration_cap

    def require(self, check, condition, detail=''):
        if not condition:
            raise VerificationError(check, detail)

    def run(self):
        cert = self.cert
        self.check_schema()
        self.check_kg()
        kind = cert['kind']
        if 'exceptional' == kind:
            self.check_exceptional()
        elif 'standard' == kind:
            self.check_standard_witness()
            self.check_tower()
            self.check_standard_group()
            self.check_embedding()
            self.check_selmer()
            self.check_auxiliary()
            self.check_twist()
        else:
            self.check_special_group()
            self.check_auxiliary()
            self.check_twist()
        self.require('digest', cert['digest'] == digest(cert),
                     f'{cert["digest"]} != {digest(cert)}')
        return 'exceptional' if 'exceptional' == kind else 'pass'

    # schema and K_g

    def check_schema(self):
        cert = self.cert
        if not isinstance(cert, dict):
            raise CertificateSchemaError('top level is not an object')
        for key in ('schema', 'input', 'kg', 'kind', 'witness', 'assumed',
                    'digest'):
            if key not in cert:
                raise CertificateSchemaError(f'missing {key!r}')
        if schema_version != cert['schema']:
            raise CertificateSchemaError(f'schema {cert["schema"]!r}')
        if cert['kind'] not in ('standard', 'special33', 'exceptional'):
            raise CertificateSchemaError(f'kind {cert["kind"]!r}')
        self.g = int(cert['input']['g'])
        self.p = int(cert['input']['p'])
        self.require('input: p prime', sympy.isprime(self.p))
        self.require('input: g >= 2', self.g >= 2)
        self.require('assumed ingredients listed', bool(cert['assumed']))

    def check_kg(self):
        g = self.g
        kg = self.cert['kg']
        factors = {int(q): int(k) for q, k in kg['factors'].items()}
        value = math.prod(q ** k for q, k in factors.items())
        self.kg = value
        self.require('kg: g', int(kg['g']) == g)
        self.require('kg: value = product of factors',
                     int(kg['value']) == value)
        for q, k in factors.items():
            self.require('kg: support in primes <= 2g+1',
                         sympy.isprime(q) and q <= 2 * g + 1, f'{q}')
            if q > 2:
                self.require('kg: odd exponents below g^2', k < g * g)
        sampled = 0
        for r in sympy.primerange(3, 10001):
            r = int(r)
            order = (r - 1) * r ** (g * g)
            for i in range(1, g + 1):
                order *= r ** (2 * i) - 1
            sampled = math.gcd(sampled, order)
        self.require('kg: gcd over odd primes <= 10^4', sampled == value,
                     f'{sampled} != {value}')
        for q in sympy.primerange(2, 2 * g + 2):
            q = int(q)
            self.require('kg: residue class lower bound',
                         class_lower_bound(g, q, factors.get(q, 0)),
                         f'q = {q}')

    # witnesses

    def check_exceptional(self):
        g, p = self.g, self.p
        self.require('exceptional: pair', (g, p) in exceptional_pairs
                     and (g, p) != (3, 3), f'({g}, {p})')
        transcript = self.cert['witness']['transcript']
        self.require('exceptional: one entry per d', len(transcript) == g)
        for entry in transcript:
            d = int(entry['d'])
            listed = sorted(int(q) for q, _ in entry['terms'])
            self.require('exceptional: prime powers of p^d+1',
                         listed == prime_powers_of(p ** d + 1), f'd = {d}')
            for q in listed:
                self.require('exceptional: q divides K_g',
                             0 == self.kg % q, f'q = {q}')

    def check_standard_witness(self):
        g, p = self.g, self.p
        w = self.cert['witness']
        d, q = int(w['d']), int(w['q'])
        self.require('witness: 1 <= d <= g', 1 <= d <= g)
        self.require('witness: q prime power',
                     q > 1 and 1 == len(sympy.factorint(q)))
        self.require('witness: q | p^d+1', 0 == (p ** d + 1) % q)
        self.require('witness: q does not divide K_g', 0 != self.kg % q)

    # tower and group

    def check_tower(self):
        tower = self.cert['tower']
        group = self.cert['group']
        p = self.p
        d = int(self.cert['witness']['d'])
        self.require('tower: (p, d)',
                     (int(tower['p']), int(tower['d'])) == (p, d))
        f = [int(c) for c in tower['k_modulus']]
        self.require('tower: k modulus monic of degree d',
                     len(f) == d + 1 and 1 == f[-1])
        self.require('tower: k modulus irreducible',
                     gf_irreducible_p(list(reversed(f)), p, ZZ))
        b0, b1, lead = ([int(c) for c in t] for t in tower['l_modulus'])
        self.require('tower: l modulus monic over k',
                     len(b0) == len(b1) == d and
                     lead == [1] + [0] * (d - 1))
        K = LocalTower(p, f, b0, b1)
        if 2 == p:
            # tr(eta) = -b1, and t^2 + t + u is irreducible iff tr(u) = 1
            self.require('tower: tr(eta) = 1', [1] == K.b1)
            self.require('tower: l modulus irreducible over k',
                         1 == K.k_trace(K.b0))
        else:
            gamma = gf_neg(K.b0, p, ZZ)
            self.require('tower: eta^2 in k', not K.b1)
            self.require('tower: eta^2 generates k^x',
                         K.k_is_primitive(gamma))
            self.require('tower: l modulus irreducible over k',
                         [p - 1] == K.k_pow(gamma, (p ** d - 1) // 2))
        self.require('tower: J is the trace form', numpy.array_equal(
            K.gram(), numpy.array(group['J'], dtype=numpy.int64) % p))
        e = (p ** d + 1) * (p - 1)
        self.require('tower: x in l\'', 2 * d == len(tower['x']))
        x = K.element(tower['x'])
        self.require('tower: order(x) = e', K.has_order(x, e), f'e = {e}')
        self.require('tower: Norm(x) in F_p^x', 1 == len(K.norm(x)))
        self.require('tower: X = multiply_by(x)', numpy.array_equal(
            K.matrix(lambda v: K.mul(x, v)),
            numpy.array(group['X'], dtype=numpy.int64) % p))
        if 2 == p:
            self.require('tower: no alpha for p = 2',
                         tower['alpha'] is None)
            Y = K.matrix(lambda v: K.pow(v, 2))
        else:
            self.require('tower: alpha in l\'',
                         2 * d == len(tower['alpha']))
            alpha = K.element(tower['alpha'])
            target = K.pow(K.eta, (1 - p) % (p ** (2 * d) - 1))
            self.require('tower: Norm(alpha) = eta^(1-p)',
                         (K.norm(alpha), []) == target)
            Y = K.matrix(lambda v: K.mul(alpha, K.pow(v, p)))
        self.require('tower: Y = alpha * frobenius', numpy.array_equal(
            Y, numpy.array(group['Y'], dtype=numpy.int64) % p))

    def check_standard_group(self):
        p = self.p
        d = int(self.cert['witness']['d'])
        group = self.cert['group']
        m = p ** d + 1
        e = m * (p - 1)
        t = 0 if 2 == p else e // 2
        shape = group['shape']
        self.require('presentation: shape',
                     [int(shape[k]) for k in ('e', 't', 'c', 'mb')] ==
                     [e, t, p % e, 2 * d])
        J, X, Y = (numpy.array(group[k], dtype=numpy.int64) % p
                   for k in ('J', 'X', 'Y'))
        self.require('presentation: J alternating',
                     not numpy.any((J + J.T) % p) and
                     not numpy.any(numpy.diag(J)))
        self.require('presentation: J non-degenerate',
                     0 != int(sympy.Matrix(J.tolist()).det()) % p)
        c_x = similitude(X, J, p)
        self.require('presentation: X similitude', c_x is not None)
        self.require('presentation: Y in Sp', 1 == similitude(Y, J, p))
        self.require('presentation: similitude surjective',
                     2 == p or (p - 1) == int(sympy.n_order(c_x, p)))
        self.require('presentation: order(X) = e',
                     exact_order(X, e, p))
        Xt = mpow(X, t, p)
        self.require('presentation: Y^(2d) = X^t',
                     numpy.array_equal(mpow(Y, 2 * d, p), Xt))
        self.require('presentation: Y X = X^p Y',
                     numpy.array_equal(Y @ X % p, mpow(X, p, p) @ Y % p))
        if 2 * d * e <= self.enumeration_cap:
            self.require('presentation: |N| = 2d*e',
                         count_normal_forms(X, Y, e, 2 * d, p) == 2 * d * e)
        self.check_words(X, Y, (e, t, p % e, 2 * d), p)

    def check_words(self, X, Y, shape, p):
        e, t, c, mb = shape
        rng = random.Random(0)
        image = lambda w: mpow(X, w[0], p) @ mpow(Y, w[1], p) % p
        for _ in range(default_verify_samples):
            u = (rng.randrange(e), rng.randrange(mb))
            v = (rng.randrange(e), rng.randrange(mb))
            self.require('presentation: words match matrices',
                         numpy.array_equal(
                             image(word_mul(u, v, shape)),
                             image(u) @ image(v) % p
                         ), f'{u}, {v}')

    def check_special_group(self):
        g, p = self.g, self.p
        self.require('special: (g, p) = (3, 3)', (g, p) == (3, 3))
        self.require('special: 13 does not divide K_3', 0 != self.kg % 13)
        group = self.cert['group']
        c = int(group['shape']['c'])
        self.require('presentation: shape',
                     [int(group['shape'][k]) for k in ('e', 't', 'mb')] ==
                     [13, 0, 6])
        self.require('presentation: c of order 6 mod 13',
                     6 == int(sympy.n_order(c, 13)))
        J, X, Y = (numpy.array(group[k], dtype=numpy.int64) % p
                   for k in ('J', 'X', 'Y'))
        self.require('presentation: J non-degenerate',
                     0 != int(sympy.Matrix(J.tolist()).det()) % p)
        self.require('presentation: X in Sp', 1 == similitude(X, J, p))
        self.require('presentation: order(X) = 13', exact_order(X, 13, p))
        self.require('presentation: Y similitude 2',
                     2 == similitude(Y, J, p))
        self.require('presentation: Y^6 = I', numpy.array_equal(
            mpow(Y, 6, p), numpy.eye(6, dtype=numpy.int64)))
        self.require('presentation: Y X = X^c Y',
                     numpy.array_equal(Y @ X % p, mpow(X, c, p) @ Y % p))
        self.require('presentation: |<X, Y>| = 78',
                     78 == count_normal_forms(X, Y, 13, 6, p))
        self.check_words(X, Y, (13, 0, c, 6), p)

    # local problems

    def check_embedding(self):
        p = self.p
        report = self.cert['embedding']
        if 2 == p:
            self.require('instance: trivial for p = 2', report['trivial'])
            return
        d = int(self.cert['witness']['d'])
        inst = report['instance']
        N1 = int(inst['N1'])
        N2 = None if inst['N2'] is None else int(inst['N2'])
        n = arith.valuation(2 * d, 2)
        d1 = (2 * d) >> n
        self.require('instance: n, d_1',
                     (int(inst['n']), int(inst['d1'])) == (n, d1))
        self.require('instance: N_1 prime', sympy.isprime(N1))
        self.require('instance: N_1 = 2^n+1 mod 2^(n+1)',
                     N1 % 2 ** (n + 1) == 2 ** n + 1)
        self.require('instance: p non-residue mod N_1',
                     pow(p, (N1 - 1) // 2, N1) == N1 - 1)
        if d1 > 1:
            self.require('instance: N_2 prime',
                         N2 is not None and sympy.isprime(N2))
            self.require('instance: N_2 = 1 mod d_1', 1 == N2 % d1)
            self.require('instance: N_1 = 1 mod N_2', 1 == N1 % N2)
            places = [p, N1, N2]
        else:
            self.require('instance: N_2 absent', N2 is None)
            places = [p, N1]
        self.require('instance: distinct primes',
                     len(set(places)) == len(places))
        m = p ** d + 1
        e = m * (p - 1)
        shape = (e, e // 2, p, 2 * d)
        def index(u, N):
            return int(sympy.discrete_log(N, u % N,
                                          int(sympy.primitive_root(N))))
        def field(u, ramified_in_f2=False):
            first = index(u, N1) % 2 ** n
            second = 0 if 1 == d1 or ramified_in_f2 else index(u, N2) % d1
            return int(crt(
                [2 ** n, d1], [first, second])[0])
        frob = report['frobenius']
        lifts = report['lifts']
        self.require('lifts: every place present',
                     set(lifts) == {'infinity', 'p', 'N1'} |
                                   ({'N2'} if d1 > 1 else set()))
        w = tuple(int(c) for c in lifts['infinity']['word'])
        self.require('lifts: infinity word', w == ((p - 1) // 2, d))
        self.require('lifts: infinity order 2',
                     word_mul(w, w, shape) == (0, 0))
        geometric = lambda k: (p ** k - 1) // (p - 1)
        a = field(p)
        self.require('frobenius: p', [0, a] ==
                     [int(c) for c in frob['p']] and 1 == a % 2)
        k = self.solve('p', p - 1, -1, m // math.gcd(m, geometric(a - 1)))
        self.check_lift(lifts['p'], shape, p, (None, a),
                        (k, (0, a), ((1 + k * (p - 1)) % e, 0)))
        a = index(N1, p) if p > 2 else 0
        self.require('frobenius: N_1', [a, 0] ==
                     [int(c) for c in frob['N1']])
        k = self.solve('N1', 1 - p ** d1, m // 2 + a * geometric(d1), m)
        self.check_lift(lifts['N1'], shape, N1, (a, 0),
                        (k, ((a + k * (p - 1)) % e, 0), (0, d1)))
        if d1 > 1:
            a = index(N2, p)
            bd1 = field(N2, ramified_in_f2=True)
            self.require('frobenius: N_2', [a, bd1] ==
                         [int(c) for c in frob['N2']])
            h = 2 ** (n - 1)
            k = self.solve('N2', 1 - p ** h, a * geometric(h),
                           m // (p ** h + 1))
            self.check_lift(lifts['N2'], shape, N2, (a, bd1),
                            (k, ((a + k * (p - 1)) % e, bd1 % (2 * d)),
                             (0, 2 ** n % (2 * d))))

    def solve(self, place, a, b, n):
        k = least_solution(a, b, n)
        self.require(f'lifts: {place} congruence solvable', k is not None,
                     f'{a} k = {b} mod {n}')
        return k

    def check_lift(self, lift, shape, twist, image, solution):
        place = lift['place']
        sigma = tuple(int(c) for c in lift['sigma'])
        tau   = tuple(int(c) for c in lift['tau'])
        self.require(f'lifts: {place} twist', int(lift['twist']) == twist)
        x_image, y_image = image
        if x_image is not None:
            self.require(f'lifts: {place} sigma over Frobenius',
                         sigma[0] % (self.p - 1) == x_image % (self.p - 1))
        self.require(f'lifts: {place} sigma over Frobenius',
                     sigma[1] == y_image % shape[3])
        k, expected_sigma, expected_tau = solution
        recorded = lift['lift_exponent']
        self.require(f'lifts: {place} congruence re-solved',
                     recorded is not None and int(recorded) == k,
                     f'{recorded} != {k}')
        self.require(f'lifts: {place} words from the exponent',
                     (sigma, tau) == (expected_sigma, expected_tau),
                     f'{sigma}, {tau}')
        lhs = word_mul(word_mul(sigma, tau, shape),
                       word_inverse(sigma, shape), shape)
        self.require(f'lifts: {place} tame relation',
                     lhs == word_pow(tau, twist, shape))

    # cohomology, primes and twist

    def check_selmer(self):
        p = self.p
        d = int(self.cert['witness']['d'])
        body = self.cert['selmer']
        m = p ** d + 1
        self.require('selmer: m', int(body['m']) == m)
        units = [b for b in range(1, m) if 1 == math.gcd(b, m)]
        kernel = [(a, b) for a in range(2 * d) for b in units
                  if 1 == pow(p, -a, m) * b % m]
        self.require('selmer: transfer kernel of order 2d',
                     len(kernel) == 2 * d ==
                     int(body['transfer']['kernel']))
        self.require('selmer: classes counted up to the cap',
                     ('cyclic_order' in body) == (m <= default_selmer_cap))
        if 'cyclic_order' in body:
            self.require('selmer: cyclic conditions',
                         int(body['cyclic_order']) == selmer_order(m))
            if 0 == m % 8:
                self.require('selmer: condition at 2',
                             1 == int(body['flag_order']) ==
                             selmer_order(m, with_2_condition=True))

    def check_auxiliary(self):
        aux = self.cert['auxiliary']
        l, v = int(aux['l']), int(aux['v'])
        self.require('auxiliary: l != v', l != v)
        cap = int(aux['cap'])
        for name, t, key, exclude in (('l', l, 'constraints_l', None),
                                      ('v', v, 'constraints_v', l)):
            constraints = [Constraint(kind, int(k), int(modulus))
                           for kind, k, modulus in aux[key]]
            self.require(f'auxiliary: {name} prime', sympy.isprime(t))
            self.require(f'auxiliary: {name} constraints',
                         satisfies(t, constraints), f'{t}')
            step = 1
            for c in constraints:
                if 'congruence' == c.kind:
                    step = math.lcm(step, c.modulus)
            self.require(f'auxiliary: {name} minimal',
                         not any(sympy.isprime(s) and s != exclude and
                                 satisfies(s, constraints)
                                 for s in range(1 + step, t, step)),
                         f'{t}')
            self.require(f'auxiliary: {name} within cap', t <= cap)
        if 'standard' == self.cert['kind']:
            p = self.p
            d = int(self.cert['witness']['d'])
            q = int(self.cert['witness']['q'])
            self.require('auxiliary: l = 1 mod lcm(p, p^d+1, q)',
                         1 == l % math.lcm(p, p ** d + 1, q))
            self.require('auxiliary: v = 1 mod lcm(p, p^d+1)',
                         1 == v % math.lcm(p, p ** d + 1))

    def check_twist(self):
        twist = self.cert['twist']
        shape = self.cert['group']['shape']
        e, c = int(shape['e']), int(shape['c'])
        l, q = int(twist['l']), int(twist['q'])
        self.require('twist: l', l == int(self.cert['auxiliary']['l']))
        self.require('twist: q', q == int(self.cert['witness']['q']))
        self.require('twist: q | l-1', 0 == (l - 1) % q)
        step = math.gcd(c - 1, e)
        a, b = (int(t) for t in twist['tau'])
        self.require('twist: image in [N, N]', 0 == b and 0 == a % step)
        self.require('twist: image of order q',
                     e // math.gcd(a, e) == q, f'x^{a}')
        self.require('twist: (l-1) c(tau) = 0', 0 == a * (l - 1) % e)
        self.require('twist: sigma trivial',
                     [0, 0] == [int(t) for t in twist['sigma']])

def class_lower_bound(g, q, exponent):
    (   "class_lower_bound("
            "g:int, "
            "q:int, "
            "exponent:int"
        ") -> bool" """

    Whether every unit class modulo ``q^B`` has
    ``nu_q((u-1) prod (u^(2i)-1)) >= exponent`` for some ``B``; factors
    vanishing modulo ``q^B`` count as ``B``, a lower bound.
    """)
    for B in range(1, exponent + 2):
        modulus = q ** B
        bound = None
        for u in range(1, modulus):
            if 0 == u % q:
                continue
            total = 0
            for k in [1] + [2 * i for i in range(1, g + 1)]:
                r = (pow(u, k, modulus) - 1) % modulus
                total += B if 0 == r else int(sympy.multiplicity(q, r))
            bound = total if bound is None else min(bound, total)
        if bound >= exponent:
            return True
    return False

def prime_powers_of(n):
    return sorted(r ** i for r, k in sympy.factorint(n).items()
                  for i in range(1, k + 1))

def satisfies(t, constraints):
    for c in constraints:
        if 'congruence' == c.kind:
            if 1 != t % c.modulus:
                return False
        elif 0 == t % c.modulus or \
                1 != pow(t, (c.modulus - 1) // c.k, c.modulus):
            return False
    return True

class LocalTower(object):

    (   "LocalTower("
            "p:int, "
            "f:list, "
            "b0:list, "
            "b1:list"
        ")" """

    The tower ``k = F_p[s]/(f)``, ``l' = k[eta]/(eta^2 + b1*eta + b0)``
    rebuilt from the moduli recorded in a certificate (coefficients
    lowest degree first). Elements of ``k`` are sympy's dense ``gf``
    polynomials, highest degree first; elements of ``l'`` are pairs
    ``(a, b)`` for ``a + b*eta``.
    """)

    __slots__ = ['b0', 'b1', 'd', 'f', 'p']

    def __init__(self, p, f, b0, b1):
        self.p  = p
        self.d  = len(f) - 1
        self.f  = self.k(f)
        self.b0 = self.k(b0)
        self.b1 = self.k(b1)

    def k(self, coeffs):
        return gf_strip([int(c) % self.p for c in reversed(coeffs)])

    def k_mul(self, a, b):
        return gf_rem(gf_mul(a, b, self.p, ZZ), self.f, self.p, ZZ)

    def k_pow(self, a, n):
        return gf_pow_mod(a, n, self.f, self.p, ZZ)

    def k_trace(self, a):
        total = []
        for i in range(self.d):
            total = gf_add(total, self.k_pow(a, self.p ** i), self.p, ZZ)
        if len(total) > 1:
            raise VerificationError('tower: trace lands in F_p',
                                    f'{total}')
        return int(total[0]) if total else 0

    def k_is_primitive(self, a):
        n = self.p ** self.d - 1
        return [1] == self.k_pow(a, n) and \
               all([1] != self.k_pow(a, n // r)
                   for r in sympy.primefactors(n))

    @property
    def one(self):
        return [1], []

    @property
    def eta(self):
        return [], [1]

    def element(self, coords):
        d = self.d
        return self.k(coords[:d]), self.k(coords[d:])

    def coords(self, x):
        result = []
        for a in x:
            c = [int(t) for t in reversed(a)]
            result.extend(c + [0] * (self.d - len(c)))
        return result

    def basis(self):
        n = 2 * self.d
        return [self.element([int(i == j) for j in range(n)])
                for i in range(n)]

    def mul(self, x, y):
        (a, b), (c, e) = x, y
        p = self.p
        be = self.k_mul(b, e)
        return \
            (
                gf_sub(self.k_mul(a, c), self.k_mul(self.b0, be), p, ZZ),
                gf_sub(gf_add(self.k_mul(a, e), self.k_mul(b, c), p, ZZ),
                       self.k_mul(self.b1, be), p, ZZ)
            )

    def pow(self, x, n):
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            n >>= 1
        return result

    def norm(self, x):
        a, b = x
        p = self.p
        return gf_add(gf_sub(self.k_mul(a, a),
                             self.k_mul(self.b1, self.k_mul(a, b)), p, ZZ),
                      self.k_mul(self.b0, self.k_mul(b, b)), p, ZZ)

    def has_order(self, x, n):
        one = self.one
        return one == self.pow(x, n) and \
               all(one != self.pow(x, n // r) for r in sympy.primefactors(n))

    def matrix(self, func):
        columns = [self.coords(func(v)) for v in self.basis()]
        return numpy.array(columns, dtype=numpy.int64).T

    def gram(self):
        # (a, b) ^ (c, e) = tr_{k|F_p}(a*e - b*c)
        basis = self.basis()
        pairing = lambda x, y: self.k_trace(
            gf_sub(self.k_mul(x[0], y[1]), self.k_mul(x[1], y[0]),
                   self.p, ZZ))
        return numpy.array([[pairing(x, y) for y in basis] for x in basis],
                           dtype=numpy.int64)

def mpow(A, n, p):
    result = numpy.eye(A.shape[0], dtype=numpy.int64)
    base = A % p
    while n:
        if n & 1:
            result = result @ base % p
        base = base @ base % p
        n >>= 1
    return result

def similitude(A, J, p):
    S = A.T @ J @ A % p
    for c in range(1, p):
        if numpy.array_equal(S, c * J % p):
            return c
    return None

def exact_order(A, n, p):
    identity = numpy.eye(A.shape[0], dtype=numpy.int64)
    if not numpy.array_equal(mpow(A, n, p), identity):
        return False
    return not any(numpy.array_equal(mpow(A, n // r, p), identity)
                   for r in sympy.primefactors(n))

def count_normal_forms(X, Y, e, mb, p):
    keys = set()
    Xa = numpy.eye(X.shape[0], dtype=numpy.int64)
    for _ in range(e):
        Yb = Xa
        for _ in range(mb):
            keys.add(Yb.tobytes())
            Yb = Yb @ Y % p
        Xa = Xa @ X % p
    return len(keys)

def word_mul(u, v, shape):
    e, t, c, mb = shape
    b = u[1] + v[1]
    return (u[0] + v[0] * pow(c, u[1], e) + t * (b // mb)) % e, b % mb

def word_pow(u, n, shape):
    result = (0, 0)
    while n:
        if n & 1:
            result = word_mul(result, u, shape)
        u = word_mul(u, u, shape)
        n >>= 1
    return result

def word_inverse(u, shape):
    e, _, _, mb = shape
    return word_pow(u, e * mb - 1, shape)

def least_solution(a, b, n):
    # the least k >= 0 with a*k = b (mod n)
    s, _, g = igcdex(a % n, n)
    if b % g:
        return None
    return s * (b // g) % (n // g)

def lattice_index(rows, m, r):
    (   "lattice_index("
            "rows:iterable, "
            "m:int, "
            "r:int"
        ") -> int" """

    The number of ``v`` in ``(Z/m)^r`` with ``w.v = 0 (mod m)`` for every
    row ``w``. The rows are brought to a triangular basis over ``Z/m``
    whose diagonal entries divide `m`; the count is their product. The
    multiple of a new basis row that vanishes in its pivot column goes
    back in as one more row.
    """)
    basis = [[m * (i == j) for j in range(r)] for i in range(r)]
    pending = list(rows)
    while pending:
        w = [c % m for c in pending.pop()]
        for j in range(r):
            if 0 == w[j]:
                continue
            b = basis[j]
            if 0 == w[j] % b[j]:
                q = w[j] // b[j]
                w = [(y - q * x) % m for x, y in zip(b, w)]
                continue
            s, t, g = igcdex(b[j], w[j])
            u, v = b[j] // g, w[j] // g
            basis[j] = [(s * x + t * y) % m for x, y in zip(b, w)]
            pending.append([m // g * c for c in basis[j]])
            w = [(u * y - v * x) % m for x, y in zip(b, w)]
    return math.prod(basis[i][i] for i in range(r))

def unit_generators(m, units):
    # greedy, in increasing order
    generators, span = [], {1}
    for u in units:
        if u in span:
            continue
        generators.append(u)
        coset = set(span)
        while True:
            coset = {s * u % m for s in coset}
            if 1 in coset:
                break
            span |= coset
    return generators

def cocycle_relations(m, generators):
    (   "cocycle_relations("
            "m:int, "
            "generators:list"
        ") -> (dict, set)" """

    Walk the Cayley graph of ``(Z/m)^x`` from 1 with
    ``f(g u) = f(g) + g f(u)``. Returns ``f(u)`` as a coefficient vector
    over the values ``f(g_i)`` for every unit ``u``, and the rows closing
    every cycle; a vector of values is a crossed homomorphism exactly
    when it satisfies all rows.
    """)
    r = len(generators)
    coeffs = {1: (0,) * r}
    rows = set()
    queue = [1]
    for u in queue:
        for i, g in enumerate(generators):
            w = g * u % m
            vec = tuple((g * c + (i == j)) % m
                        for j, c in enumerate(coeffs[u]))
            if w in coeffs:
                rows.add(tuple((a - b) % m for a, b in zip(vec, coeffs[w])))
            else:
                coeffs[w] = vec
                queue.append(w)
    return coeffs, rows

def selmer_order(m, with_2_condition=False):
    (   "selmer_order("
            "m:int, "
            "with_2_condition:bool=False"
        ") -> int" """

    The number of classes of crossed homomorphisms
    ``(Z/m)^x -> Z/m`` that are coboundaries on every cyclic subgroup,
    and with `with_2_condition` also on ``H = {u = 1 (mod m_1)}``,
    ``m_1`` the odd part of ``m``. Every condition is linear in the
    values on the generators; the condition on ``H`` adds the
    trivializing constant as one more unknown.
    """)
    units = [u for u in range(1, m) if 1 == math.gcd(u, m)]
    generators = unit_generators(m, units)
    r = len(generators)
    coeffs, rows = cocycle_relations(m, generators)
    rows |= {tuple(m // math.gcd(h - 1, m) * c % m for c in coeffs[h])
             for h in units}
    coboundaries = len({tuple((g - 1) * c % m for g in generators)
                        for c in range(m)})
    if not with_2_condition:
        return lattice_index(rows, m, r) // coboundaries
    odd = m
    while 0 == odd % 2:
        odd //= 2
    H = [h for h in units if 0 == (h - 1) % odd]
    rows = {row + (0,) for row in rows} | \
           {coeffs[h] + (-(h - 1) % m,) for h in H}
    constants = sum(1 for c in range(m)
                    if all(0 == (h - 1) * c % m for h in H))
    return lattice_index(rows, m, r + 1) // constants // coboundaries
