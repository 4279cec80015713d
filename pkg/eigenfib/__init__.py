"""Verification lab for (lambda, mu)-eigenfunctions on matrix symmetric
spaces and the minimal fibres of their zero sets.

:copyright: Copyright 2026 eigenfib developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
__version__ = '0.1.0'


def verify(space, a, b=None, points=50, seed=0):
    """Eigen and duality sweep of the trace-form function on ``space``.

    ``space`` is a SpaceId or its serial form such as ``'slr-so:3'``.
    Returns the VerificationReport.
    """
    from eigenfib.catalog import make_spec
    from eigenfib.geometry import check_duality, eigen_sweep

    spec = make_spec(space, a, b)
    report = eigen_sweep(spec, points, seed)
    return check_duality(report)
