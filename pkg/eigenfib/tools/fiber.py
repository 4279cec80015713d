"""eigenfib fiber command

:copyright: Copyright 2026 eigenfib developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import os

import numpy as np

from eigenfib.catalog import ConditionError, example_spec
from eigenfib.export import samples_csv, write_json, write_samples
from eigenfib.fiber import constructive_zero, example_conditions, fiber_walk
from eigenfib.geometry import regular_value_report
from eigenfib.tools.report import print_line, summary_stream


def _is_example(spec):
    """True when ``spec`` carries the worked-example parameters."""
    try:
        ref = example_spec(spec.space)
    except ConditionError:
        return False
    if spec.b is None or ref.b is None:
        return spec.b is None and ref.b is None and np.allclose(spec.a, ref.a)
    return np.allclose(spec.a, ref.a) and np.allclose(spec.b, ref.b)


def sample_fiber(config):
    spec = config.spec()
    tols = config.tolerances
    start = constructive_zero(spec, tol=tols['zero'])
    # The constructive zero counts as the first of the requested samples
    walk_steps = max(int(config.steps) - 1, 0)
    samples = [start] + fiber_walk(spec, start, walk_steps,
                                   float(config.step_size), int(config.seed),
                                   tol=tols['zero'])
    regular = regular_value_report(spec, samples, tol=tols['regular'])

    where = str(spec.space)
    stream = summary_stream(config.out)
    summary = {
        'space': spec.space.tag,
        'n': spec.space.n,
        'samples': len(samples),
        'max_phi_abs': max(s.phi_abs for s in samples),
        'regularity': regular.to_dict(),
        'config': config.to_dict(),
    }
    print_line('fiber', where, '{} samples, max |phi| {:.2e}'.format(
        len(samples), summary['max_phi_abs']), stream=stream)

    if _is_example(spec):
        worst = {}
        for s in samples:
            for name, value in example_conditions(spec, s.matrix).items():
                worst[name] = max(worst.get(name, 0.), abs(value))
        summary['example_conditions'] = worst
        for name, value in worst.items():
            print_line('example', where, '{} max {:.2e}'.format(name, value),
                       stream=stream)

    print_line('regular', where, '{}/{} (min margin {:.3e})'.format(
        regular.regular, regular.total, regular.min_margin), regular.passed,
        stream=stream)

    if config.out:
        write_samples(config.out, samples)
        write_json(os.path.splitext(config.out)[0] + '.summary.json', summary)
    else:
        print(samples_csv(samples), end='')
    return 0 if regular.passed else 1
