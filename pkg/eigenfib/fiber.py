"""eigenfib zero fibres of catalog eigenfunctions.

A point x lies on the fibre phi^{-1}(0) iff (B x^t b, x^t a) = 0, and it is a
regular point iff the matrix M = B x^t A~ x is not orthogonal to the
complexified Lie algebra.  This module builds fibre points from the
constructive arguments, finds them numerically, walks along the fibre and
certifies every point it emits.

:copyright: Copyright 2026 eigenfib developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import logging

import numpy as np

from eigenfib.catalog import ConditionError
from eigenfib.matrix import (RANK_TOL, bilinear, blocks, frobenius_norm,
                             hermitian, hermitian_trace, mat_exp,
                             numerical_rank)
from eigenfib.operators import (differential_matrix, evaluate,
                                gradient_coefficients)
from eigenfib.spaces import GroupPoint, random_point

logger = logging.getLogger(__name__)

ZERO_TOL = 1e-10
REGULAR_TOL = 1e-6
COND_MAX = 1e8
NEWTON_ITER = 50
MAX_ITER = 500
MAX_HALVINGS = 10


class ConvergenceError(RuntimeError):
    """A Newton or descent iteration failed to reach its tolerance."""


class FiberPoint(object):
    """A certified point of the level set phi = level (default 0)."""

    def __init__(self, point, phi_abs, regularity_margin, level=0.):
        self.point = point
        self.phi_abs = phi_abs
        self.regularity_margin = regularity_margin
        self.level = level

    @property
    def matrix(self):
        return self.point.matrix

    def __repr__(self):
        return 'FiberPoint({}, |phi|={:.1e}, margin={:.2e})'.format(
            self.point.space, self.phi_abs, self.regularity_margin)


def _matrix(x):
    return x.matrix if hasattr(x, 'matrix') else np.asarray(x, dtype=complex)


def _b(spec):
    return spec.a if spec.b is None else spec.b


def zero_test(spec, x):
    """(B x^t b, x^t a), equal to +phi (B symmetric) or -phi (B skew)."""
    x = _matrix(x)
    return bilinear(spec.fn.B @ x.T @ _b(spec), x.T @ spec.a)


def is_regular(spec, x, tol=REGULAR_TOL):
    """Return (regular, margin) from the differential matrix at x.

    margin = max_Z |trace(M Z*)| over the full basis, and x is regular iff
    margin > tol |M|.
    """
    x = _matrix(x)
    m = differential_matrix(spec.fn, x)
    norm = frobenius_norm(m)
    if norm == 0.:
        return False, 0.
    margin = max(abs(hermitian_trace(m, z)) for z in spec.descriptor.basis)
    return margin > tol * norm, margin


def certify(spec, x, level=0., tol=ZERO_TOL):
    """Wrap x as a FiberPoint after membership, level and regularity checks."""
    point = x if isinstance(x, GroupPoint) else GroupPoint(spec.space, x)
    phi_abs = abs(evaluate(spec.fn, point.matrix) - level)
    if phi_abs > tol:
        raise ConvergenceError(
            '|phi - {}| = {:.3e} exceeds {:.1e}'.format(level, phi_abs, tol)
        )
    regular, margin = is_regular(spec, point.matrix)
    if not regular:
        raise ConvergenceError(
            'Critical point on the fibre (margin {:.3e})'.format(margin)
        )
    return FiberPoint(point, phi_abs, margin, level)


# Tangent and normal frames

def normal_frame(spec, x):
    """Split p at x into fibre-tangent and normal coefficient frames.

    Returns (tangent, normal, cond) where the rows of ``tangent`` and
    ``normal`` are orthonormal coefficient vectors over ``basis_p`` and
    ``cond`` is the condition number of the 2 x dim(p) real Jacobian.
    """
    grad = gradient_coefficients(spec.fn, spec.descriptor.basis_p, x)
    jac = np.vstack([np.real(grad), np.imag(grad)])
    _, sv, vh = np.linalg.svd(jac)
    cond = sv[0] / sv[1] if sv[1] > 0. else np.inf
    return vh[2:], vh[:2], cond


def _step(spec, x, coeffs):
    return x @ mat_exp(spec.descriptor.combine(coeffs, 'p'))


def correct_to_level(spec, x, level=0., tol=ZERO_TOL, max_iter=NEWTON_ITER):
    """Newton-project x onto phi = level along the 2D normal space of p."""
    x = _matrix(x)
    start = abs(evaluate(spec.fn, x) - level)
    resid = start
    for it in range(max_iter):
        resid = evaluate(spec.fn, x) - level
        if abs(resid) <= tol:
            logger.debug('Newton converged in %d iterations', it)
            return x
        if abs(resid) > 1e3 * (1. + start):
            break

        _, normal, cond = normal_frame(spec, x)
        if cond > COND_MAX:
            raise ConvergenceError(
                'Near-critical Jacobian (condition {:.2e})'.format(cond)
            )
        grad = gradient_coefficients(spec.fn, spec.descriptor.basis_p, x)
        jac2 = np.vstack([np.real(grad), np.imag(grad)]) @ normal.T
        delta = np.linalg.solve(jac2, -np.array([resid.real, resid.imag]))
        x = _step(spec, x, delta @ normal)

    raise ConvergenceError(
        'Newton failed to reach level {} (|residual| = {:.3e})'.format(
            level, abs(resid))
    )


# Constructive zeros

def symmetric_mapping(u, v, tol=1e-14):
    """A real symmetric s with s u = v.

    v = 0 gives s = 0; v antiparallel to u gives a negative multiple of the
    identity; otherwise s = |v|/|u| (-I + 2 w w^t) with w the normalized
    bisector of the unit vectors.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0.:
        raise ValueError('symmetric_mapping needs u != 0')
    n = u.size
    if nv == 0.:
        return np.zeros((n, n))

    uh, vh = u / nu, v / nv
    if np.linalg.norm(uh + vh) <= tol:
        return -(nv / nu) * np.eye(n)
    w = (uh + vh) / np.sqrt(2. + 2. * vh @ uh)
    return (nv / nu) * (-np.eye(n) + 2. * np.outer(w, w))


def extend_basis(vectors, n, tol=RANK_TOL):
    """Extend independent real vectors greedily by standard basis vectors."""
    cols = [np.asarray(v, dtype=float) for v in vectors]
    for k in range(n):
        if len(cols) == n:
            break
        e = np.zeros(n)
        e[k] = 1.
        if numerical_rank(np.column_stack(cols + [e]), tol) > len(cols):
            cols.append(e)
    assert len(cols) == n
    return np.column_stack(cols)


def slr_zero_matrix(a):
    """x in SL(n,R) with x^t a = e_1 + i e_2."""
    n = a.size
    y = extend_basis([np.real(a), np.imag(a)], n)
    # The last adjoined column is a standard vector, free to rescale
    y[:, -1] /= np.linalg.det(y)
    return np.linalg.inv(y).T


def spr_zero_matrix(a, tol=RANK_TOL):
    """x in Sp(n,R) with x^t a isotropic; returns (x, branch)."""
    n = a.size // 2
    eye, zero = np.eye(n), np.zeros((n, n))
    jn = blocks(zero, eye, -eye, zero).real

    # With b_1 = 0, pre-compose with J_n to swap the roles of b_1 and b_2
    pre = np.eye(2 * n)
    b = np.real(a)
    if np.linalg.norm(b[:n]) <= tol * np.linalg.norm(b):
        pre = jn
    b = pre @ np.real(a)
    c = pre @ np.imag(a)

    s1 = symmetric_mapping(b[:n], -b[n:])
    S1 = np.block([[eye, zero], [s1, eye]])
    c = S1 @ c
    c1, c3 = c[:n], c[n:]
    b1 = b[:n]

    if np.linalg.norm(c3) <= tol * max(np.linalg.norm(c), 1.):
        v = extend_basis([b1, c1], n)
        D1 = np.block([[np.linalg.inv(v), zero], [zero, v.T]])
        xt = D1 @ S1
        branch = 'c3 = 0'
    else:
        s2 = symmetric_mapping(c3, -c1)
        S2 = np.block([[eye, s2], [zero, eye]])
        lam = np.sqrt(np.linalg.norm(c3) / np.linalg.norm(b1))
        D2 = np.block([[lam * eye, zero], [zero, eye / lam]])
        xt = D2 @ S2 @ S1
        branch = 'c3 != 0'

    return (xt @ pre).T, branch


def constructive_zero(spec, tol=ZERO_TOL):
    """A fibre point following the existence arguments of each family."""
    if not spec.theorem_conditions_met:
        raise ConditionError(
            'Fibre existence conditions not met: {}'.format(
                ', '.join(spec.failed_conditions()))
        )
    fam = spec.space.family
    m = spec.space.ambient_size
    if fam == 'SLR_SO':
        x = slr_zero_matrix(spec.a)
    elif fam == 'SPR_U':
        x, branch = spr_zero_matrix(spec.a)
        logger.info('Sp(n,R) constructive zero took branch %s', branch)
    else:
        # The identity lies on the fibre under the theorem conditions
        x = np.eye(m)
    x = np.asarray(x, dtype=complex)

    if abs(evaluate(spec.fn, x)) > ZERO_TOL:
        logger.info('Polishing constructive zero (|phi| = %.2e)',
                    abs(evaluate(spec.fn, x)))
        x = correct_to_level(spec, x, tol=tol)
    return certify(spec, x, tol=tol)


def numeric_zero(spec, seed, max_iter=MAX_ITER, scale=0.5):
    """Minimize |phi|^2 by gradient descent, then Newton-polish."""
    desc = spec.descriptor
    x = random_point(spec.space, seed, scale).matrix
    phi = evaluate(spec.fn, x)
    switch = 1e-3 * (1. + abs(phi))

    it = 0
    while abs(phi) > switch:
        if it >= max_iter:
            raise ConvergenceError(
                'Descent stalled at |phi| = {:.3e} after {} iterations'.format(
                    abs(phi), it)
            )
        grad = gradient_coefficients(spec.fn, desc.basis_p, x)
        coeffs = np.real(np.conj(phi) * grad)
        gnorm = np.linalg.norm(coeffs)
        if gnorm == 0.:
            raise ConvergenceError('Descent reached a critical point')

        # Gauss-Newton scaled step along the gradient of |phi|^2 / 2
        eta = 0.5 * abs(phi) ** 2 / gnorm ** 2
        eta = min(eta, 0.5 / gnorm)
        for _ in range(30):
            it += 1
            trial = _step(spec, x, -eta * coeffs)
            phi_trial = evaluate(spec.fn, trial)
            if abs(phi_trial) < abs(phi):
                break
            eta *= 0.5
        else:
            raise ConvergenceError('Line search failed')
        x, phi = trial, phi_trial

    logger.debug('Descent reached |phi| = %.2e in %d iterations',
                 abs(phi), it)
    return certify(spec, correct_to_level(spec, x))


def numeric_zero_trials(spec, seeds):
    """Run numeric_zero over ``seeds``; return (successes, failures).

    For dependent Re a, Im a every trial is expected to fail, which is the
    numerical evidence that the independence condition is needed.
    """
    successes, failures = [], []
    for seed in seeds:
        try:
            successes.append(numeric_zero(spec, seed))
        except ConvergenceError as exc:
            logger.debug('numeric_zero(seed=%s) failed: %s', seed, exc)
            failures.append(seed)
    return successes, failures


def fiber_walk(spec, start, steps, step_size, seed, tol=ZERO_TOL):
    """Random walk on the fibre with Newton correction after each step."""
    x = start.matrix
    children = np.random.SeedSequence(seed).spawn(steps)
    samples = []

    for idx, child in enumerate(children):
        rng = np.random.default_rng(child)
        tangent, _, _ = normal_frame(spec, x)
        if tangent.shape[0] == 0:
            logger.warning('Fibre of %s is discrete; walk stays put',
                           spec.space)
            samples.append(certify(spec, x, tol=tol))
            continue

        direction = rng.normal(size=tangent.shape[0]) @ tangent
        direction /= np.linalg.norm(direction)

        h = step_size
        for _ in range(MAX_HALVINGS + 1):
            try:
                trial = correct_to_level(
                    spec, _step(spec, x, h * direction), tol=tol)
                point = certify(spec, trial, tol=tol)
                break
            except ConvergenceError as exc:
                logger.warning('Step %d rejected (%s); halving', idx, exc)
                h *= 0.5
        else:
            raise ConvergenceError('Walk step {} diverged'.format(idx))

        samples.append(point)
        x = point.matrix

    logger.info('Fibre walk on %s: %d certified samples', spec.space,
                len(samples))
    return samples


def example_conditions(spec, x):
    """Row relations of the worked examples, evaluated at x.

    sp(2,R), a = e_1 + i e_2:      |x_1| - |x_2|, <x_1, x_2>
    SO*(6), a = e_1 + i e_2, b = e_6:
                                   <z_4, z_6> + i <z_5, z_6>  (= -phi)
    SU*(4), a = e_1, b = e_2:      <z_2, z_3>  (= -phi), <z_1, z_3>

    <., .> is conjugate-linear in the first slot.  On SU*(4) the pairing
    <z_1, z_3> vanishes on the whole group.
    """
    rows = _matrix(x)
    fam = spec.space.family
    if fam == 'SPR_U':
        r1, r2 = np.real(rows[0]), np.real(rows[1])
        return {
            '|x_1| - |x_2|': np.linalg.norm(r1) - np.linalg.norm(r2),
            '<x_1, x_2>': float(r1 @ r2),
        }
    elif fam == 'SOSTAR_U':
        return {
            '<z_4, z_6>': hermitian(rows[3], rows[5]),
            '<z_5, z_6>': hermitian(rows[4], rows[5]),
            '<z_4, z_6> + i <z_5, z_6>': (hermitian(rows[3], rows[5])
                                          + 1j * hermitian(rows[4], rows[5])),
        }
    elif fam == 'SUSTAR_SP':
        return {
            '<z_1, z_3>': hermitian(rows[0], rows[2]),
            '<z_2, z_3>': hermitian(rows[1], rows[2]),
        }
    elif fam == 'SLR_SO':
        r1, r2 = np.real(rows[0]), np.real(rows[1])
        return {
            '|x_1| - |x_2|': np.linalg.norm(r1) - np.linalg.norm(r2),
            '<x_1, x_2>': float(r1 @ r2),
        }
    return {}
