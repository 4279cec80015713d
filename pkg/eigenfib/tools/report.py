"""eigenfib console summaries

Summary lines go to stdout when the data itself is written to a file,
and to stderr when the data is written to stdout.

:copyright: Copyright 2026 eigenfib developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import sys

from eigenfib.export import dumps, write_json

PASS = 'PASS'
FAIL = 'FAIL'


def summary_stream(out):
    """Stream for summary lines of a command writing its data to ``out``."""
    return sys.stdout if out else sys.stderr


def _status(passed, stream):
    label = PASS if passed else FAIL
    if stream.isatty():
        colour = '\033[32m' if passed else '\033[41m'
        return colour + label + '\033[0m'
    return label


def print_line(name, where, mesg, passed=None, stream=None):
    """Print ``name(where): mesg`` with an optional PASS/FAIL tag."""
    stream = sys.stdout if stream is None else stream
    if passed is not None:
        mesg = '{} {}'.format(_status(passed, stream), mesg)
    print('{}({}): {}'.format(name, where, mesg), file=stream)


def print_verification(report, stream=None):
    where = str(report.spec.space)
    print_line('tau', where,
               'max residual {:.3e}'.format(report.max_tau_residual),
               stream=stream)
    print_line('kappa', where,
               'max residual {:.3e}'.format(report.max_kappa_residual),
               stream=stream)
    print_line('lambda', where, 'fitted {!r}, expected {}'.format(
        report.fitted_lambda, list(report.spec.expected_lambda)),
        stream=stream)
    print_line('mu', where, 'fitted {!r}, expected {!r}'.format(
        report.fitted_mu, report.spec.expected_mu), stream=stream)
    if report.dual_lambda is not None:
        print_line('dual', where, '(lambda*, mu*) = ({!r}, {!r})'.format(
            report.dual_lambda, report.dual_mu), stream=stream)
    if report.regular_count is not None:
        print_line('fibre', where, '{} regular, max |H| {:.3e}'.format(
            report.regular_count, max(report.mean_curvature)),
            stream=stream)
    for mesg in report.failures:
        print_line('failure', where, mesg, stream=stream)
    print_line('verify', where, '', report.passed, stream=stream)


def emit(data, out):
    """Write ``data`` as JSON to ``out``, or to stdout when ``out`` is None."""
    if out:
        write_json(out, data)
    else:
        sys.stdout.write(dumps(data))
