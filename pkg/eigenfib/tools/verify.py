"""eigenfib verify command

:copyright: Copyright 2026 eigenfib developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
from eigenfib.geometry import check_duality, check_fiber, eigen_sweep
from eigenfib.tools.report import emit, print_verification, summary_stream


def verify_spec(config):
    spec = config.spec()
    tols = config.tolerances
    report = eigen_sweep(spec, int(config.points), int(config.seed),
                         tol=tols['eigen'])
    check_duality(report, tol=tols['dual'])
    check_fiber(report, int(config.curvature_points),
                float(config.step_size), float(config.h),
                zero_tol=tols['zero'], regular_tol=tols['regular'],
                curvature_tol=tols['curvature'])
    report.config = config.to_dict()

    print_verification(report, summary_stream(config.out))
    emit(report.to_dict(), config.out)
    return 0 if report.passed else 1
