# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""\
=====================================================
:mod:`gspcert.symplectic` -- Matrices in GSp over F_p
=====================================================

The pairing ``(a, b) ^ (c, e) = tr_{k|F_p}(a*e - b*c)`` on
``l' = k + k*eta`` as a Gram matrix, F_p-linear operators of the tower
as matrices, similitude factors and the inclusion
``GSp(2d) -> GSp(2g)``.

Matrices act on column vectors of coordinates: column ``j`` of the
matrix of an operator is the image of basis vector ``j``.

Example:

    >>> tower = build_tower(3, 1)
    >>> form  = gram_matrix(tower)
    >>> X     = multiply_by(tower, tower.eta)
    >>> similitude_factor(X)
    1
"""

import numpy

from . import arith
from . import lrucache
from .exceptions import NotSimilitude, ShapeMismatch, VerificationError
from .fieldtower import TowerElement

__all__ = ['GramForm',
           'SympMatrix',
           'alpha_frobenius',
           'embed_gsp',
           'extend_form',
           'gram_matrix',
           'inverse_mod_p',
           'multiply_by',
           'nullspace_mod_p',
           'operator_matrix',
           'rank_mod_p',
           'row_reduce',
           'similitude_factor',
           'wedge_pairing']

###########################################################################
#                         Linear algebra over F_p                         #
###########################################################################

def row_reduce(A, p):
    (   "row_reduce("
            "A:array, "
            "p:int"
        ") -> (array, list)" """

    Reduced row echelon form of `A` over F_p and its pivot columns.
    """)
    A = numpy.array(A, dtype=numpy.int64) % p
    m, n = A.shape
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        nonzero = numpy.nonzero(A[row:, col])[0]
        if 0 == len(nonzero):
            continue
        i = row + int(nonzero[0])
        if i != row:
            A[[row, i]] = A[[i, row]]
        A[row] = A[row] * pow(int(A[row, col]), -1, p) % p
        for j in range(m):
            if j != row and A[j, col]:
                A[j] = (A[j] - A[j, col] * A[row]) % p
        pivots.append(col)
        row += 1
    return A, pivots

def rank_mod_p(A, p):
    return len(row_reduce(A, p)[1])

def inverse_mod_p(A, p):
    A = numpy.array(A, dtype=numpy.int64) % p
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeMismatch(f'cannot invert a {A.shape} matrix')
    R, pivots = \
        row_reduce(
            numpy.concatenate([A, numpy.eye(n, dtype=numpy.int64)],
                              axis=1),
            p
        )
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError('singular matrix')
    return R[:, n:]

def nullspace_mod_p(A, p):
    (   "nullspace_mod_p("
            "A:array, "
            "p:int"
        ") -> list" """

    A basis of ``{v : A v = 0}`` over F_p, one vector per free column.
    """)
    R, pivots = row_reduce(A, p)
    n = R.shape[1]
    free = [col for col in range(n) if col not in pivots]
    basis = []
    for f in free:
        v = numpy.zeros(n, dtype=numpy.int64)
        v[f] = 1
        for i, col in enumerate(pivots):
            v[col] = -R[i, f] % p
        basis.append(v)
    return basis

###########################################################################
#                                  Forms                                  #
###########################################################################

class GramForm(object):

    (   "GramForm("
            "J:array, "
            "p:int"
        ")" """

    A non-degenerate alternating form over F_p. Construction checks
    ``J^T = -J``, zero diagonal and full rank.
    """)

    __slots__ = ['J', 'key', 'p']

    def __init__(self, J, p):
        J = numpy.array(J, dtype=numpy.int64) % p
        n = J.shape[0]
        if J.shape != (n, n) or n % 2:
            raise ShapeMismatch(f'Gram matrix of shape {J.shape}')
        if numpy.any((J + J.T) % p) or numpy.any(numpy.diag(J)):
            raise VerificationError('Gram matrix alternating')
        if rank_mod_p(J, p) != n:
            raise VerificationError('Gram matrix non-degenerate')
        J.setflags(write=False)
        self.J   = J
        self.p   = p
        self.key = (p, n, J.tobytes())

    @property
    def n(self):
        return self.J.shape[0]

    def __eq__(self, other):
        return isinstance(other, GramForm) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def pair(self, v1, v2):
        v1 = numpy.asarray(v1, dtype=numpy.int64)
        v2 = numpy.asarray(v2, dtype=numpy.int64)
        return int(v1 @ self.J @ v2 % self.p)

    def to_json(self):
        return self.J.tolist()

def extend_form(form, g):
    (   "extend_form("
            "form:GramForm, "
            "g:int"
        ") -> GramForm" """

    Orthogonal sum of `form` with ``g - n/2`` hyperbolic planes
    ``[[0, 1], [-1, 0]]``.
    """)
    n = form.n
    if 2 * g < n:
        raise ValueError(f'cannot extend a {n}-dimensional form to '
                         f'genus {g}')
    J = numpy.zeros((2 * g, 2 * g), dtype=numpy.int64)
    J[:n, :n] = form.J
    for i in range(n, 2 * g, 2):
        J[i, i + 1] = 1
        J[i + 1, i] = form.p - 1
    return GramForm(J, form.p)

###########################################################################
#                                Matrices                                 #
###########################################################################

class SympMatrix(object):

    (   "SympMatrix("
            "A:array, "
            "form:GramForm"
        ")" """

    A square matrix over F_p together with the form it is measured
    against. Instances are immutable and hashable.
    """)

    __slots__ = ['A', 'form', 'key']

    def __init__(self, A, form):
        A = numpy.array(A, dtype=numpy.int64) % form.p
        if A.shape != (form.n, form.n):
            raise ShapeMismatch(f'{A.shape} matrix against a '
                                f'{form.n}-dimensional form')
        A.setflags(write=False)
        self.A    = A
        self.form = form
        self.key  = A.tobytes()

    @classmethod
    def identity(cls, form):
        return cls(numpy.eye(form.n, dtype=numpy.int64), form)

    @property
    def p(self):
        return self.form.p

    @property
    def n(self):
        return self.form.n

    def __repr__(self):
        return f'SympMatrix({self.A.tolist()}, p={self.p})'

    def __eq__(self, other):
        return isinstance(other, SympMatrix) and \
               self.form == other.form and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __mul__(self, other):
        if not isinstance(other, SympMatrix):
            return NotImplemented
        if self.form != other.form:
            raise ShapeMismatch('matrices against different forms')
        return SympMatrix(self.A @ other.A % self.p, self.form)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        p = self.p
        result = numpy.eye(self.n, dtype=numpy.int64)
        base = self.A
        while n:
            if n & 1:
                result = result @ base % p
            base = base @ base % p
            n >>= 1
        return SympMatrix(result, self.form)

    def inverse(self):
        return SympMatrix(inverse_mod_p(self.A, self.p), self.form)

    def is_identity(self):
        return bool(numpy.array_equal(self.A,
                                      numpy.eye(self.n, dtype=numpy.int64)))

    def order(self, multiple=None, cap=100000):
        (   "order("
                "multiple:int=None, "
                "cap:int=100000"
            ") -> int" """

        The multiplicative order. With `multiple` (a known multiple of
        the order) the order is found by stripping prime factors;
        otherwise by repeated multiplication up to `cap`.
        """)
        if multiple is not None:
            if not (self ** multiple).is_identity():
                raise VerificationError(
                    'matrix order', f'M^{multiple} != I'
                )
            n = multiple
            for r in arith.factorize(multiple):
                while 0 == n % r and (self ** (n // r)).is_identity():
                    n //= r
            return n
        power = self
        for n in range(1, cap + 1):
            if power.is_identity():
                return n
            power = power * self
        raise VerificationError('matrix order', f'exceeds {cap}')

    def similitude(self):
        return similitude_factor(self)

    def to_json(self):
        return self.A.tolist()

def similitude_factor(M):
    (   "similitude_factor("
            "M:SympMatrix"
        ") -> int" """

    The scalar ``c`` in F_p^x with ``M^T J M = c J``. Raises
    :class:`NotSimilitude` when there is none.
    """)
    p = M.p
    J = M.form.J
    S = M.A.T @ J @ M.A % p
    i, j = (int(t[0]) for t in numpy.nonzero(J))
    c = int(S[i, j]) * pow(int(J[i, j]), -1, p) % p
    if 0 == c or numpy.any((S - c * J) % p):
        raise NotSimilitude(f'{M!r} is not a similitude')
    return c

def embed_gsp(M, g):
    (   "embed_gsp("
            "M:SympMatrix, "
            "g:int"
        ") -> SympMatrix" """

    ``M`` on the first ``2d`` coordinates and ``diag(1, c)`` on each
    appended hyperbolic plane, ``c`` the similitude factor of ``M``.
    The form is extended by :func:`extend_form`.
    """)
    n = M.n
    if n > 2 * g:
        raise ValueError(f'd = {n // 2} exceeds g = {g}')
    c = similitude_factor(M)
    if n == 2 * g:
        return M
    form = extend_form(M.form, g)
    A = numpy.zeros((2 * g, 2 * g), dtype=numpy.int64)
    A[:n, :n] = M.A
    for i in range(n, 2 * g, 2):
        A[i, i] = 1
        A[i + 1, i + 1] = c
    return SympMatrix(A, form)

###########################################################################
#                           Tower to matrices                             #
###########################################################################

def as_element(tower, v):
    if isinstance(v, TowerElement):
        if v.tower != tower:
            raise ShapeMismatch('element of a different tower')
        return v
    v = list(v)
    d = tower.d
    if 2 == len(v) and d > 1:
        a, b = (as_k(tower, t) for t in v)
        return tower.from_pair(a, b)
    if len(v) != 2 * d:
        raise ShapeMismatch(f'vector of length {len(v)} in a '
                            f'{2 * d}-dimensional space')
    return TowerElement(tower, tuple(int(c) % tower.p for c in v))

def as_k(tower, t):
    if isinstance(t, TowerElement):
        if not t.in_k():
            raise ShapeMismatch(f'{t} does not lie in k')
        return t.pair[0]
    return tower.k_scalar(int(t))

def wedge_pairing(tower, v1, v2):
    (   "wedge_pairing("
            "tower:FieldTower, "
            "v1, "
            "v2"
        ") -> int" """

    ``tr_{k|F_p}(a*e - b*c)`` for ``v1 = (a, b)`` and ``v2 = (c, e)``.
    Vectors may be tower elements ``a + b*eta``, pairs of elements of
    ``k`` (or integers) or F_p-coordinate sequences of length ``2d``.
    """)
    x = as_element(tower, v1)
    y = as_element(tower, v2)
    a, b = x.pair
    c, e = y.pair
    return tower.k_trace(tower.k_sub(tower.k_mul(a, e), tower.k_mul(b, c)))

@lrucache.memoize(size=64)
def gram_matrix(tower):
    basis = tower.basis()
    n = len(basis)
    J = [[wedge_pairing(tower, basis[i], basis[j]) for j in range(n)]
         for i in range(n)]
    return GramForm(J, tower.p)

def operator_matrix(tower, kind, *args):
    (   "operator_matrix("
            "tower:FieldTower, "
            "kind:str, "
            "*args"
        ") -> SympMatrix" """

    ``kind`` is ``'multiply_by'`` with ``args = (beta,)``,
    ``'alpha_frobenius'`` with ``args = (alpha, i)`` for
    ``v -> alpha * v^(p^i)``, or ``'frobenius'`` with ``args = (i,)``.
    """)
    if 'multiply_by' == kind:
        (multiplier,) = args
        i = 0
    elif 'alpha_frobenius' == kind:
        multiplier, i = args
    elif 'frobenius' == kind:
        (i,) = args
        multiplier = tower.one
    else:
        raise ValueError(f'unknown operator kind {kind!r}')
    multiplier = as_element(tower, multiplier)
    if multiplier.is_zero():
        raise ZeroDivisionError('zero multiplier')
    image = lambda v: multiplier * tower.frobenius_power(v, i)
    columns = [image(v).coords for v in tower.basis()]
    A = numpy.array(columns, dtype=numpy.int64).T
    return SympMatrix(A, gram_matrix(tower))

def multiply_by(tower, beta):
    return operator_matrix(tower, 'multiply_by', beta)

def alpha_frobenius(tower, alpha, i=1):
    return operator_matrix(tower, 'alpha_frobenius', alpha, i)
