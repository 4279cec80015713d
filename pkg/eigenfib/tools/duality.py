"""eigenfib duality command

:copyright: Copyright 2026 eigenfib developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
from eigenfib.catalog import compact_table
from eigenfib.geometry import check_duality, eigen_sweep
from eigenfib.spaces import dual_space
from eigenfib.tools.report import emit, print_line, summary_stream


def compare_duals(config):
    spec = config.spec()
    tols = config.tolerances
    report = eigen_sweep(spec, int(config.points), int(config.seed),
                         tol=tols['eigen'])
    check_duality(report, tol=tols['dual'])

    dual = dual_space(spec.space)
    table_lambda, table_mu = compact_table(dual)
    tol = tols['dual']
    lam_err = abs(report.dual_lambda - table_lambda)
    mu_err = abs(report.dual_mu - table_mu)
    table_match = (lam_err <= tol * (1. + abs(table_lambda))
                   and mu_err <= tol * (1. + abs(table_mu)))
    passed = report.passed and table_match

    where = str(dual)
    stream = summary_stream(config.out)
    print_line('dual', where, 'fitted ({!r}, {!r})'.format(
        report.dual_lambda, report.dual_mu), stream=stream)
    print_line('negated', where, '({!r}, {!r})'.format(
        -report.fitted_lambda, -report.fitted_mu), stream=stream)
    print_line('table', where, '({!r}, {!r})'.format(table_lambda, table_mu),
               table_match, stream=stream)
    for mesg in report.failures:
        print_line('failure', where, mesg, stream=stream)

    emit({
        'space': dual.tag,
        'n': dual.n,
        'dual_lambda': report.dual_lambda,
        'dual_mu': report.dual_mu,
        'fitted_lambda': report.fitted_lambda,
        'fitted_mu': report.fitted_mu,
        'table_lambda': table_lambda,
        'table_mu': table_mu,
        'table_match': table_match,
        'failures': report.failures,
        'passed': passed,
        'config': config.to_dict(),
    }, config.out)
    return 0 if passed else 1
