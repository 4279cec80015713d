"""Command line interface to eigenfib.

:copyright: Copyright 2026 eigenfib developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import argparse
import logging
import sys

import eigenfib
import eigenfib.tools.curvature
import eigenfib.tools.duality
import eigenfib.tools.fiber
import eigenfib.tools.spaces
import eigenfib.tools.verify
from eigenfib.catalog import ConditionError
from eigenfib.config import ConfigError, RunConfig
from eigenfib.fiber import ConvergenceError
from eigenfib.geometry import VerificationError
from eigenfib.matrix import ShapeError
from eigenfib.spaces import SpaceError

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

USAGE_ERRORS = (ConditionError, ConfigError, ShapeError, SpaceError)


def _args():
    """Argument specifications shared by the subcommands."""
    def opt(flags, **parameters):
        return {'flags': flags, 'parameters': parameters}

    return {
        'space': opt(('--space',), type=str, metavar='family[:n]',
                     help='Symmetric space, e.g. slr-so:3'),
        'n': opt(('--n',), type=int, help='Size parameter n'),
        'a': opt(('--a',), type=str, metavar='vec',
                 help='Parameter a, e.g. "1,1i,0"'),
        'b': opt(('--b',), type=str, metavar='vec', help='Parameter b'),
        'seed': opt(('--seed',), type=int, help='Random seed'),
        'points': opt(('--points',), type=int,
                      help='Random points per sweep'),
        'steps': opt(('--steps',), type=int, help='Fibre samples'),
        'step_size': opt(('--step-size',), type=float, dest='step_size',
                         help='Fibre walk step length'),
        'h': opt(('--h',), type=float, help='Curvature stencil width'),
        'tol': opt(('--tol',), action='append', dest='tolerances',
                   metavar='name=value', help='Tolerance override'),
        'out': opt(('--out', '-o'), type=str, help='Output file'),
        'config': opt(('--config',), type=str,
                      help='JSON configuration file'),
        'level': opt(('--level',), type=float,
                     help='Level set phi = c (negative control)'),
        'verbose': opt(('--verbose', '-v'), action='count', default=0,
                       help='Log progress (repeat for debug output)'),
    }


COMMANDS = [
    ('verify', eigenfib.tools.verify.verify_spec,
     'Eigen residual and duality sweep'),
    ('fiber', eigenfib.tools.fiber.sample_fiber,
     'Constructive zero and fibre walk'),
    ('curvature', eigenfib.tools.curvature.curvature_report,
     'Mean curvature of sampled fibre points'),
    ('duality', eigenfib.tools.duality.compare_duals,
     'Fitted eigenvalues on the compact dual'),
    ('list-spaces', eigenfib.tools.spaces.list_spaces,
     'Supported spaces and their dimensions'),
]

COMMON = ('space', 'n', 'a', 'b', 'seed', 'tol', 'out', 'config', 'verbose')
EXTRA = {
    'verify': ('points',),
    'fiber': ('steps', 'step_size'),
    'curvature': ('step_size', 'h', 'level'),
    'duality': ('points',),
    'list-spaces': (),
}


def build_parser():
    parser = argparse.ArgumentParser(prog='eigenfib')
    parser.add_argument(
        '--version',
        action='version',
        version='eigenfib {0}'.format(eigenfib.__version__)
    )

    subparsers = parser.add_subparsers()
    args = _args()

    for name, run_cmd, help_text in COMMANDS:
        cmd = subparsers.add_parser(name, help=help_text)
        cmd.set_defaults(run_cmd=run_cmd)
        for key in COMMON + EXTRA[name]:
            cmd.add_argument(*args[key]['flags'], **args[key]['parameters'])

    return parser


def run(argv):
    """Execute the subcommand in ``argv`` and return the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, 'run_cmd'):
        parser.print_help()
        return EXIT_USAGE

    run_args = vars(args)
    run_cmd = run_args.pop('run_cmd')
    verbose = run_args.pop('verbose')
    config_path = run_args.pop('config')

    level = logging.WARNING - 10 * min(verbose, 2)
    logging.basicConfig(level=level,
                        format='%(levelname)s %(name)s: %(message)s')

    try:
        if config_path:
            config = RunConfig.from_file(config_path)
        else:
            config = RunConfig()
        config.update(run_args)
        config.validate()
        return run_cmd(config)
    except USAGE_ERRORS as exc:
        parser.print_usage(sys.stderr)
        print('eigenfib: error: {}'.format(exc), file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, VerificationError) as exc:
        print('eigenfib: verification failed: {}'.format(exc),
              file=sys.stderr)
        return EXIT_FAIL


def parse():
    """Parse the command line inputs and execute the subcommand."""

    # If no argument given, then print the help page
    if len(sys.argv) == 1:
        build_parser().print_help()
        sys.exit()

    sys.exit(run(sys.argv[1:]))
