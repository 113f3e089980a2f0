"""
CLI argument parsing for mixedideals.
"""

import argparse
import sys
from typing import List

from . import settings
from .exceptions import InvalidField, UsageError
from .homology import FieldSpec, parse_field

GLOBAL_FLAGS = ('--debug', '-v', '--verbose', '-q', '--quiet')


def _add_target(parser: argparse.ArgumentParser, gens: bool = True):
    parser.add_argument('--n', type=int, required=True, help='Number of x variables')
    parser.add_argument('--m', type=int, required=True, help='Number of y variables')
    parser.add_argument('--terms', help="Mixed product terms, e.g. '1,2+2,1' for I_1J_2 + I_2J_1")
    if gens:
        parser.add_argument('--gens', help="Explicit square-free generators, e.g. 'x1y1,x2y2'")


def _add_output(parser: argparse.ArgumentParser):
    parser.add_argument('--format', choices=('table', 'json'), help='Output encoding')
    parser.add_argument('--out', help='Write the result to a file instead of stdout')


def parse_args(argv=None):
    """Parse command-line arguments and set global settings."""
    if argv is None:
        argv = sys.argv[1:]

    # global flags are honoured wherever they appear
    settings.DEBUG = '--debug' in argv
    settings.VERBOSE = '-v' in argv or '--verbose' in argv
    settings.QUIET = '-q' in argv or '--quiet' in argv

    parser = argparse.ArgumentParser(
        prog='mixedideals',
        description='Invariants of mixed product ideals: closed formulas checked against a Hochster oracle'
    )
    parser.add_argument('-q', '--quiet', action='store_true', help='Suppress the sweep summary line')
    parser.add_argument('-v', '--verbose', action='store_true', help='Diagnostics on stderr')
    parser.add_argument('--debug', action='store_true', help='Full diagnostics, tracebacks on errors')

    subparsers = parser.add_subparsers(dest='command', help='Commands')

    # invariants
    inv = subparsers.add_parser('invariants', help='dim, depth, pd, reg and CM status')
    _add_target(inv)
    inv.add_argument('--method', choices=('formula', 'oracle', 'both'), help='Closed formula, Hochster oracle, or both')
    inv.add_argument('--field', help="Coefficient field: 'q' or 'gf<p>'")
    _add_output(inv)

    # betti
    betti = subparsers.add_parser('betti', help='Graded Betti table via Hochster\'s formula')
    _add_target(betti)
    betti.add_argument('--field', help="Coefficient field: 'q' or 'gf<p>'")
    betti.add_argument('--multigraded', action='store_true', help='Also list the multigraded Betti numbers')
    _add_output(betti)

    # sweep
    sweep = subparsers.add_parser('sweep', help='Exhaustive formula-vs-oracle sweep')
    sweep.add_argument('--max-n', type=int, dest='max_n', help='Largest x-block size')
    sweep.add_argument('--max-m', type=int, dest='max_m', help='Largest y-block size')
    sweep.add_argument('--fields', help="Comma-separated fields, e.g. 'q,gf2'")
    sweep.add_argument('--jobs', type=int, help='Worker processes')
    sweep.add_argument('--no-witness', action='store_true', dest='no_witness', help='Skip syzygy and Koszul witness checks')
    _add_output(sweep)

    # witness
    witness = subparsers.add_parser('witness', help='Print and verify the syzygy and Koszul witnesses')
    _add_target(witness, gens=False)
    _add_output(witness)

    # dual
    dual = subparsers.add_parser('dual', help='Alexander dual and minimal primes')
    _add_target(dual)
    _add_output(dual)

    known_argv = [a for a in argv if a not in GLOBAL_FLAGS]
    args = parser.parse_args(known_argv)

    if not args.command:
        parser.print_help()
        sys.exit(2)

    return args


def field_from_flag(text: str, flag: str = '--field') -> FieldSpec:
    try:
        return parse_field(text)
    except InvalidField as e:
        raise UsageError(flag, str(e))


def fields_from_flag(text: str) -> List[FieldSpec]:
    labels = [chunk.strip() for chunk in text.split(',') if chunk.strip()]
    if not labels:
        raise UsageError('--fields', 'no fields given')
    # repeats collapse, first occurrence keeps its place
    return list(dict.fromkeys(field_from_flag(label, '--fields') for label in labels))
