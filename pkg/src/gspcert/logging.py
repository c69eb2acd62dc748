# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""\
=======================================
:mod:`gspcert.logging` -- Plain logging
=======================================

A small leveled logger for the command line tools. Searches log the
choices they make at DEBUG level so a certificate run can be replayed
from its log; :meth:`Logger.scope` tags every line written inside it
with the pair being processed, which keeps the output of a scan over
many ``(g, p)`` readable.

Example:

    >>> logger = Logger(File('/tmp/gspcert.log'), level=DEBUG)
    >>> with logger.scope('g=2 p=5'):
    ...     logger.debug('eta = (0, 1)')
    >>> logger.file.close()
"""

import contextlib
import sys
import time

from logging import CRITICAL, DEBUG, ERROR, INFO, NOTSET, WARNING

__all__ = ['File', 'Logger']

DISABLED  = 0xffff
levelname = \
    {
        DISABLED: 'DISABLED',
        CRITICAL: 'CRITICAL',
           ERROR: 'ERROR',
         WARNING: 'WARNING',
            INFO: 'INFO',
           DEBUG: 'DEBUG',
          NOTSET: 'NOTSET'
    }
default_strftime_fmt = '%Y-%m-%d %H:%M:%S'
default_errorlog_fmt = '{time} {level} {scope}{msg}'

class Logger(object):

    (   "Logger("
            "file:File=None, "
            "level:int=NOTSET, "
            "errorlog_fmt:str=None, "
            "strftime_fmt:str=None"
        ")" """

    Writes to `file`, or to stderr when it is None, so that certificates
    printed on stdout are never mixed with log lines.
    """)

    __slots__ = ['errorlog_fmt',
                 'file',
                 'level',
                 'scopes',
                 'strftime_fmt']

    def __init__(self, file=None, level=NOTSET, errorlog_fmt=None,
                 strftime_fmt=None):
        self.file   = sys.stderr if file is None else file
        self.level  = level
        self.scopes = []
        fmt = default_errorlog_fmt if errorlog_fmt is None else errorlog_fmt
        self.errorlog_fmt = fmt if fmt.endswith('\n') else fmt + '\n'
        self.strftime_fmt = strftime_fmt or default_strftime_fmt

    def enabled_for(self, level):
        (   "enabled_for("
                "level:int"
            ") -> bool" """

        True if a message of severity `level` would be written. Used to
        skip building expensive debug messages.
        """)
        return level >= self.level

    @contextlib.contextmanager
    def scope(self, name):
        (   "scope("
                "name:str"
            ") -> context manager"
        )
        self.scopes.append(name)
        try:
            yield self
        finally:
            self.scopes.pop()

    def log(self, level, msg):
        if level < self.level:
            return
        scope = ''.join(f'[{name}] ' for name in self.scopes)
        self.file.write(
            self.errorlog_fmt.format(
                 time=time.strftime(self.strftime_fmt),
                level=levelname.get(level, str(level)),
                scope=scope,
                  msg=msg
            )
        )
        self.file.flush()

    def critical(self, msg):
        self.log(CRITICAL, msg)

    fatal = critical

    def error(self, msg):
        self.log(ERROR, msg)

    def warning(self, msg):
        self.log(WARNING, msg)

    def info(self, msg):
        self.log(INFO, msg)

    def debug(self, msg):
        self.log(DEBUG, msg)

class File(object):

    (   "File("
            "filename:str"
        ")" """

    Append-only UTF-8 log file; a run never truncates the log of an
    earlier one.
    """)

    __slots__ = ['file', 'filename']

    def __init__(self, filename):
        self.filename = filename
        self.file     = open(filename, 'a', encoding='utf-8')

    def __repr__(self):
        return f'<File {self.filename!r}>'

    @property
    def closed(self):
        return self.file.closed

    def write(self, data):
        self.file.write(data)

    def flush(self):
        self.file.flush()

    def close(self):
        self.file.close()
