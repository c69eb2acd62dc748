# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""\
====================================================================
:mod:`gspcert.__main__` -- The implementation of the startup script
====================================================================

This module contains the configuration schema and the command line
interface::

    usage: gspcert [-h] [-f FILE] [-v[v] | -q]
                   {construct,verify,kg,witness,selmer,scan} ...

Exit codes: 0 pass, 1 verification failure, 2 exceptional pair, 3 search
cap exceeded.

Examples:

::

    # Read the arguments from the command line
    gspcert.__main__.main()

    # Pass the arguments explicitly
    gspcert.__main__.main(
        arguments=['construct', '--g', '2', '--p', '5', '--out', 'c.json']
    )

::

    # Use a string instead of a config file.
    gspcert.__main__.main(
        arguments=['construct', '--g', '4', '--p', '3'],
        config='''
            verbose          2
            logfile          /PATH/TO/gspcert.log
            prime-search-cap 100000
            seed             7
        '''
    )
"""

import sys

sys.dont_write_bytecode = True

import argparse
import collections
import io
import json
import ZConfig.loader

from . import gvars
from . import logging
from . import   __doc__   as package__doc__
from . import __version__
from .certificate import (Settings, construct_certificate, dumps,
                          verify_certificate)
from .exceptions import (ExceptionalPair, GspcertError,
                         SearchCapExceeded)
from .kg import kg_exact
from .selmer import selmer_dim
from .witness import require_witness, witness_table

__all__ = ['main', 'parse']

EXIT_PASS        = gvars.exit_codes['pass']
EXIT_FAILURE     = gvars.exit_codes['failure']
EXIT_EXCEPTIONAL = gvars.exit_codes['exceptional']
EXIT_CAP         = gvars.exit_codes['cap']

def main(**kwargs):
    (   "main("
            "arguments:list=None, "
            "config:str=None, "
            "verbose:int=1"
        ") -> None"
    )
    try:
        result = parse(**kwargs)
        setup_logger(result.opts)
        code = run(result)
    except SystemExit as err:
        sys.exit(err.code)
    except SearchCapExceeded as err:
        print (err, file=sys.stderr)
        sys.exit(EXIT_CAP)
    except ExceptionalPair as err:
        print (err, file=sys.stderr)
        sys.exit(EXIT_EXCEPTIONAL)
    except GspcertError as err:
        print (f'FAIL: {err}', file=sys.stderr)
        sys.exit(EXIT_FAILURE)
    sys.exit(code)

def run(result):
    try:
        return dispatch(result)
    except ValueError as err:
        result.parser.error(str(err))

def dispatch(result):
    args, opts = result.args, result.opts
    if 'construct' == args.command:
        with gvars.logger.scope(f'g={args.g} p={args.p}'):
            certificate = \
                construct_certificate(args.g, args.p, opts.settings)
        data = dumps(certificate)
        if args.out is None:
            sys.stdout.write(data)
        else:
            with open(args.out, 'w', encoding='utf-8') as file:
                file.write(data)
        if 'exceptional' == certificate['kind']:
            return EXIT_EXCEPTIONAL
        return EXIT_PASS
    if 'verify' == args.command:
        try:
            with open(args.certificate, 'r', encoding='utf-8') as file:
                data = file.read()
        except OSError as err:
            result.parser.error(f'cannot read {args.certificate}: {err}')
        with gvars.logger.scope(args.certificate):
            outcome = verify_certificate(data, opts.settings.enumeration_cap)
        if 'fail' == outcome.status:
            print (f'FAIL: {outcome.check}: {outcome.detail}')
            return EXIT_FAILURE
        print (outcome.status)
        if 'exceptional' == outcome.status:
            return EXIT_EXCEPTIONAL
        return EXIT_PASS
    if 'kg' == args.command:
        kg = kg_exact(args.g, opts.settings.kg_sample_bound,
                      opts.settings.kg_cross_check_genus)
        print (json.dumps(kg.to_json(), sort_keys=True))
        return EXIT_PASS
    if 'witness' == args.command:
        w = require_witness(args.g, args.p)
        print (json.dumps(w.to_json(), sort_keys=True))
        return EXIT_PASS
    if 'selmer' == args.command:
        print (selmer_dim(args.m, use_2_condition=args.with_2_condition))
        return EXIT_PASS
    if 'scan' == args.command:
        for row in witness_table(args.gmax, args.pmax):
            if row['exceptional']:
                print (f'{row["g"]:>3} {row["p"]:>5}  exceptional')
            else:
                print (f'{row["g"]:>3} {row["p"]:>5}  '
                       f'd={row["d"]} q={row["q"]}')
        return EXIT_PASS
    result.parser.error('a command is required')

def setup_logger(opts):
    gvars.logger.level = gvars.verbosity[opts.verbose]
    if opts.logfile is not None:
        gvars.logger.file = logging.File(opts.logfile)

###########################################################################
#                         Command line interface                          #
###########################################################################

def parse(**kwargs):
    arguments = kwargs.get('arguments')
    config    = kwargs.get('config')
    parser = ParserFactory(**kwargs)
    args = parser.parse_args(arguments)
    if config is None:
        if args.file is None:
            cfg, nil = loadConfig(loadSchema(), '')
        else:
            try:
                cfg, nil = \
                    ZConfig.loader.loadConfig(
                        loadSchema(),
                        args.file
                    )
            except ZConfig.ConfigurationError as err:
                parser.error(
                    f'configuration error occurs in {args.file}: '
                    f'{err.message} (line {err.lineno})'
                )
    else:
        if not isinstance(config, str):
            raise TypeError('keyword argument "config" must be a string '
                            f'but got {repr(config)}')
        try:
            cfg, nil = loadConfig(loadSchema(), config)
        except ZConfig.ConfigurationError as err:
            parser.error(f'configuration error: {err.message}')
    opts = Options()
    opts.file    = args.file if config is None else None
    opts.logfile = cfg.logfile
    if   args.quiet:
        opts.verbose = 0
    elif args.verbose is None:
        opts.verbose = kwargs.get('verbose', cfg.verbose)
    else:
        opts.verbose = args.verbose
    max_verbose = len(gvars.verbosity) - 1
    if opts.verbose >= max_verbose:
        opts.verbose = max_verbose
    elif opts.verbose < 0:
        parser.error('verbose must be greater than -1')
    opts.settings = Settings.from_config(cfg)
    if getattr(args, 'cap', None) is not None:
        opts.settings.prime_search_cap = args.cap
    return ParseResult(args, cfg, opts, parser)

def ParserFactory(**kwargs):
    parser = \
        argparse.ArgumentParser(
                   prog='gspcert',
            description=package__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter
        )
    parser.add_argument(
                '--version',
         action='version',
        version=f'%(prog)s {__version__}'
    )
    if kwargs.get('config') is None:
        parser.add_argument(
                    '-f',
                    '--file',
               dest='file',
               help='read the configuration from FILE',
            default=None
        )
    else:
        parser.set_defaults(file=None)
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
                '-v',
                '--verbose',
           dest='verbose',
         action='count',
           help='print debug messages, "-v" for INFO, "-vv" for DEBUG'
    )
    group.add_argument(
                '-q',
                '--quiet',
           dest='quiet',
         action='store_true',
           help='do not print log messages',
        default=False
    )
    commands = parser.add_subparsers(dest='command', metavar='command')
    construct = \
        commands.add_parser(
            'construct',
            help='build a certificate for (g, p)'
        )
    construct.add_argument('--g', type=positive, required=True)
    construct.add_argument('--p', type=positive, required=True)
    construct.add_argument(
                '--out',
           dest='out',
           help='write the certificate to OUT instead of stdout',
        default=None
    )
    construct.add_argument(
                '--cap',
           dest='cap',
           type=positive,
           help='override prime-search-cap',
        default=None
    )
    verify = \
        commands.add_parser(
            'verify',
            help='re-check a certificate file'
        )
    verify.add_argument('certificate', metavar='FILE')
    kg = commands.add_parser('kg', help='print the factorization of K_g')
    kg.add_argument('--g', type=positive, required=True)
    witness = \
        commands.add_parser(
            'witness',
            help='print the witness (d, q) of (g, p)'
        )
    witness.add_argument('--g', type=positive, required=True)
    witness.add_argument('--p', type=positive, required=True)
    selmer = \
        commands.add_parser(
            'selmer',
            help='order of the classes passing the local conditions'
        )
    selmer.add_argument('--m', type=positive, required=True)
    selmer.add_argument(
                '--with-2-condition',
           dest='with_2_condition',
         action='store_true',
        default=False
    )
    scan = \
        commands.add_parser(
            'scan',
            help='tabulate witnesses for 2 <= g <= GMAX, p <= PMAX'
        )
    scan.add_argument('--gmax', type=positive, required=True)
    scan.add_argument('--pmax', type=positive, required=True)
    return parser

def positive(value):
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f'{value!r} is not an integer') \
            from None
    if n < 1:
        raise argparse.ArgumentTypeError(f'{value} is not positive')
    return n

class Options(object):

    __slots__ = ['file', 'logfile', 'settings', 'verbose']

ParseResult = \
    collections.namedtuple(
        'ParseResult',
        [
            'args',
            'cfg',
            'opts',
            'parser'
        ]
    )

###########################################################################
#                              Configuration                              #
###########################################################################

def loadSchema(*args):
    loader = ZConfig.loader.SchemaLoader()
    file   = \
        io.StringIO(
            f'<schema>{"".join([schema] + list(args))}</schema>'
        )
    with loader.createResource(file, '<string>') as r:
        return loader.loadResource(r)

def loadConfig(schema, data):
    loader = ZConfig.loader.ConfigLoader(schema)
    file   = io.StringIO(data)
    with loader.createResource(file, '<string>') as r:
        return loader.loadResource(r)

#: built-in schema
schema = '''
<key name="verbose" datatype="integer" default="1" required="no" />
<key name="logfile" datatype="string" required="no" />
<key name="kg-sample-bound" datatype="integer" default="10000"
     required="no" />
<key name="kg-cross-check-genus" datatype="integer" default="12"
     required="no" />
<key name="prime-search-cap" datatype="integer" default="10000000"
     required="no" />
<key name="enumeration-cap" datatype="integer" default="100000"
     required="no" />
<key name="brute-force-cap" datatype="integer" default="10000"
     required="no" />
<key name="samples" datatype="integer" default="1000" required="no" />
<key name="seed" datatype="integer" default="0" required="no" />
'''

if '__main__' == __name__:
    main()
