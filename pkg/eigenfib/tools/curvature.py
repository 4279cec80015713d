"""eigenfib curvature command

:copyright: Copyright 2026 eigenfib developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
from eigenfib.fiber import constructive_zero, fiber_walk
from eigenfib.geometry import curvature_table
from eigenfib.tools.report import emit, print_line, summary_stream

# Successive halvings of h in the convergence table
HALVINGS = 3


def curvature_report(config):
    spec = config.spec()
    tols = config.tolerances
    level = float(config.level)
    h = float(config.h)
    hs = [h / 2 ** k for k in range(HALVINGS)]

    start = constructive_zero(spec, tol=tols['zero'])
    points = [start] + fiber_walk(spec, start,
                                  int(config.curvature_points) - 1,
                                  float(config.step_size), int(config.seed),
                                  tol=tols['zero'])
    table = curvature_table(spec, points, hs, level)

    where = str(spec.space)
    stream = summary_stream(config.out)
    for row in table['rows']:
        print_line('H', where, 'h = {:.3e}: max |H| = {:.3e}'.format(
            row['h'], row['max']), stream=stream)

    worst = table['rows'][0]['max']
    passed = (worst <= tols['curvature'] and table['decreasing']
              and not table['failures'])
    if level != 0.:
        print_line('level', where,
                   'level set phi = {!r} is a negative control'.format(level),
                   stream=stream)
    print_line('curvature', where, 'decreasing: {}'.format(
        table['decreasing']), passed, stream=stream)

    table.update({
        'space': spec.space.tag,
        'n': spec.space.n,
        'threshold': tols['curvature'],
        'passed': passed,
        'config': config.to_dict(),
    })
    emit(table, config.out)
    return 0 if passed else 1
