# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""\
=======================================
:mod:`gspcert.exceptions` -- Exceptions
=======================================
"""

__all__ = ['CertificateSchemaError',
           'ExceptionalPair',
           'GspcertError',
           'LocalProblemsFailed',
           'NotPrimeError',
           'NotSimilitude',
           'SearchCapExceeded',
           'ShapeMismatch',
           'VerificationError']

class GspcertError(Exception):

    """
    Base class of every domain error raised by this package.
    """

class VerificationError(GspcertError):

    (   "VerificationError("
            "check:str, "
            "detail:str=''"
        ")" """

    An identity that must hold did not. `check` names the failed
    relation, e.g. ``'presentation: X^e = I'``.
    """)

    def __init__(self, check, detail=''):
        self.check  = check
        self.detail = detail
        if detail:
            super().__init__(f'{check}: {detail}')
        else:
            super().__init__(check)

class LocalProblemsFailed(VerificationError):

    (   "LocalProblemsFailed("
            "failures:list"
        ")" """

    The local embedding problems are solved place by place; every place
    that failed is kept in `failures`, one :class:`VerificationError`
    each, and reported together.
    """)

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__('local problems',
                         '; '.join(str(err) for err in self.failures))

class CertificateSchemaError(VerificationError):

    """
    The certificate does not have the expected shape.
    """

    def __init__(self, detail):
        super().__init__('schema', detail)

class NotSimilitude(GspcertError):

    """
    Raised by :func:`gspcert.symplectic.similitude_factor` when no scalar
    ``c`` satisfies ``M^T J M = c J``.
    """

class ShapeMismatch(GspcertError, ValueError):

    """
    Operands belong to different towers, forms or group shapes.
    """

class NotPrimeError(GspcertError, ValueError):

    def __init__(self, n):
        self.n = n
        super().__init__(f'{n} is not a prime')

class SearchCapExceeded(GspcertError):

    (   "SearchCapExceeded("
            "what:str, "
            "cap:int"
        ")" """

    A deterministic search ran past its configured bound.
    """)

    def __init__(self, what, cap):
        self.what = what
        self.cap  = cap
        super().__init__(f'{what}: search cap {cap} exceeded')

class ExceptionalPair(GspcertError):

    def __init__(self, g, p):
        self.g = g
        self.p = p
        super().__init__(f'(g, p) = ({g}, {p}) admits no witness')
