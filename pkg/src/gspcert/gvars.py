# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""\
==========================================
:mod:`gspcert.gvars` -- Process-wide state
==========================================

The shared logger, silent until the command line raises its level, and
the exit codes of the ``gspcert`` command.
"""

from . import logging

__all__ = ['exit_codes', 'logger', 'verbosity']

#: one ``-v`` per step
verbosity = [logging.DISABLED, logging.INFO, logging.DEBUG]
logger    = logging.Logger(level=logging.DISABLED)

exit_codes = \
    {
               'pass': 0,
            'failure': 1,
        'exceptional': 2,
                'cap': 3
    }
