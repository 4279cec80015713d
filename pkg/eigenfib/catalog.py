"""eigenfib catalog of complex-valued eigenfunctions.

Each family is a quadratic trace function on the non-compact group,

    slr-so     trace(a a^t x x^t)       a in C^n
    spr-u      trace(a a^t x x^t)       a in C^2n
    sostar-u   trace(a b^t z J_n z^t)   a, b in C^2n
    sustar-sp  trace(a b^t z J_n z^t)   a, b in C^2n

bundled with its expected eigenvalues (lambda, mu) and the named conditions
under which it is an eigenfunction (proposition conditions) and has zero as a
regular value with a non-empty fibre (theorem conditions).

:copyright: Copyright 2026 eigenfib developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
from collections import namedtuple
from collections import OrderedDict
import logging

import numpy as np

from eigenfib.matrix import (J, as_vector, bilinear, hermitian,
                             linearly_independent, mat_exp)
from eigenfib.operators import QuadTraceFn
from eigenfib.spaces import SpaceId, build_descriptor, dual_space

logger = logging.getLogger(__name__)

COND_TOL = 1e-9

DualExpectation = namedtuple('DualExpectation', 'space lambdas mu')


class ConditionError(ValueError):
    """Parameters violate a condition required by the constructor."""


class EigenSpec(object):
    """A quadratic trace function bound to a space with expected (lambda, mu).

    ``expected_lambda`` is a tuple of candidates; it has two entries when the
    printed values disagree and the sweep has to decide between them.
    """

    def __init__(self, space, fn, a, b, expected_lambda, expected_mu,
                 conditions, proposition, theorem):
        self.space = space
        self.fn = fn
        self.a = a
        self.b = b
        self.expected_lambda = tuple(expected_lambda)
        self.expected_mu = expected_mu
        self.conditions = conditions
        self.proposition_conditions = proposition
        self.theorem_conditions = theorem

    @property
    def params(self):
        return (self.a, self.b)

    @property
    def single_parameter(self):
        return self.b is None

    @property
    def proposition_conditions_met(self):
        return all(self.conditions[c] for c in self.proposition_conditions)

    @property
    def theorem_conditions_met(self):
        return all(self.conditions[c] for c in self.theorem_conditions)

    def failed_conditions(self, which='theorem'):
        names = (self.theorem_conditions if which == 'theorem'
                 else self.proposition_conditions)
        return [c for c in names if not self.conditions[c]]

    @property
    def descriptor(self):
        return build_descriptor(self.space)

    def __repr__(self):
        return 'EigenSpec({}, lambda={}, mu={})'.format(
            self.space, self.expected_lambda, self.expected_mu)


def _vanishes(value, scale):
    return abs(value) <= COND_TOL * max(scale, 1e-300)


def _check_length(vec, size, name):
    vec = as_vector(vec)
    if vec.shape != (size,):
        raise ConditionError(
            '{} must have {} entries, got {}'.format(name, size, vec.size)
        )
    return vec


def _require_nonzero(a):
    if not np.any(a):
        raise ConditionError('a = 0 is not a valid parameter')


def _require_independent(a, b):
    if not linearly_independent(a, b):
        raise ConditionError('a and b are linearly dependent')


def _real_imag_independent(a):
    return linearly_independent(np.real(a), np.imag(a))


def make_slr(n, a):
    """trace(a a^t x x^t) on SL(n,R)/SO(n)."""
    space = SpaceId('SLR_SO', n)
    a = _check_length(a, n, 'a')
    _require_nonzero(a)

    conditions = OrderedDict([
        ('a != 0', True),
        ('Re a, Im a linearly independent', _real_imag_independent(a)),
    ])
    fn = QuadTraceFn(np.outer(a, a), np.eye(n), 'symmetric')
    lam = 2. * (n * n + n - 2.) / n
    mu = 4. * (n - 1.) / n
    return EigenSpec(space, fn, a, None, (lam,), mu, conditions,
                     ['a != 0'], list(conditions))


def make_spr(n, a):
    """trace(a a^t x x^t) on Sp(n,R)/U(n)."""
    space = SpaceId('SPR_U', n)
    a = _check_length(a, 2 * n, 'a')
    _require_nonzero(a)

    conditions = OrderedDict([
        ('a != 0', True),
        ('Re a, Im a linearly independent', _real_imag_independent(a)),
    ])
    fn = QuadTraceFn(np.outer(a, a), np.eye(2 * n), 'symmetric')
    return EigenSpec(space, fn, a, None, (2. * (n + 1.),), 2., conditions,
                     ['a != 0'], list(conditions))


def make_sostar(n, a, b):
    """trace(a b^t z J_n z^t) on SO*(2n)/U(n)."""
    space = SpaceId('SOSTAR_U', n)
    a = _check_length(a, 2 * n, 'a')
    b = _check_length(b, 2 * n, 'b')
    _require_independent(a, b)

    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    aa, bb, ab = bilinear(a, a), bilinear(b, b), bilinear(a, b)
    jab = bilinear(J(n) @ a, b)

    # NOTE: The printed condition is inhomogeneous.  It is reported but only
    # the squared reading is required.
    printed = aa * bb - ab
    squared = aa * bb - ab * ab
    conditions = OrderedDict([
        ('a, b linearly independent', True),
        ('(a,a)(b,b) - (a,b) = 0',
            _vanishes(printed, na * na * nb * nb + na * nb)),
        ('(a,a)(b,b) - (a,b)^2 = 0', _vanishes(squared, na * na * nb * nb)),
        ('(a,a) = 0', _vanishes(aa, na * na)),
        ('(a,b) = 0', _vanishes(ab, na * nb)),
        ('(J a, b) = 0', _vanishes(jab, na * nb)),
        ('(b,b) != 0', not _vanishes(bb, nb * nb)),
    ])
    fn = QuadTraceFn(np.outer(a, b), J(n), 'skew')
    spec = EigenSpec(space, fn, a, b, (2. * (n - 1.),), 1., conditions,
                     ['a, b linearly independent', '(a,a)(b,b) - (a,b)^2 = 0'],
                     ['a, b linearly independent', '(a,a) = 0', '(a,b) = 0',
                      '(J a, b) = 0', '(b,b) != 0'])
    return spec


def sostar_conformality_defect(a, b):
    """kappa(phi, phi) - phi^2 on SO*(2n), constant over the group.

    Vanishes exactly when (a,a)(b,b) = (a,b)^2.
    """
    return -(bilinear(a, a) * bilinear(b, b) - bilinear(a, b) ** 2)


def make_sustar(n, a, b):
    """trace(a b^t z J_n z^t) on SU*(2n)/Sp(n)."""
    space = SpaceId('SUSTAR_SP', n)
    a = _check_length(a, 2 * n, 'a')
    b = _check_length(b, 2 * n, 'b')
    _require_independent(a, b)

    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    conditions = OrderedDict([
        ('a, b linearly independent', True),
        ('<J conj(a), b> = 0',
            _vanishes(hermitian(J(n) @ np.conj(a), b), na * nb)),
    ])
    fn = QuadTraceFn(np.outer(a, b), J(n), 'skew')

    # The proposition and the compact table disagree; both are candidates.
    candidates = (2. * (n * n - n - 1.) / n, 2. * (2. * n * n - n - 1.) / n)
    return EigenSpec(space, fn, a, b, candidates, 2. * (n - 1.) / n,
                     conditions, ['a, b linearly independent'],
                     list(conditions))


_MAKERS = {
    'SLR_SO': make_slr,
    'SPR_U': make_spr,
    'SOSTAR_U': make_sostar,
    'SUSTAR_SP': make_sustar,
}


def make_spec(space, a, b=None):
    """Dispatch on the family of a non-compact ``space``."""
    if isinstance(space, str):
        space = SpaceId.parse(space)
    if space.compact:
        raise ConditionError(
            'Eigenfunctions are built on the non-compact side; '
            'use {} instead of {}'.format(dual_space(space), space)
        )
    maker = _MAKERS[space.family]
    if space.family in ('SLR_SO', 'SPR_U'):
        if b is not None:
            raise ConditionError('{} takes a single parameter a'.format(
                space.tag))
        spec = maker(space.n, a)
    else:
        if b is None:
            raise ConditionError('{} needs both a and b'.format(space.tag))
        spec = maker(space.n, a, b)
    if not spec.proposition_conditions_met:
        raise ConditionError(
            'Not an eigenfunction on {}: {} violated'.format(
                space, ', '.join(spec.failed_conditions('proposition')))
        )
    return spec


def compact_table(space):
    """Compact-side (lambda, mu) as printed in the table of eigenfamilies."""
    n = float(space.n)
    return {
        'SU_SO': (-2. * (n * n + n - 2.) / n, -4. * (n - 1.) / n),
        'SP_U': (-2. * (n + 1.), -2.),
        'SO2N_U': (-2. * (n - 1.), -1.),
        'SU2N_SP': (-2. * (2. * n * n - n - 1.) / n, -2. * (n - 1.) / n),
    }[space.family]


def dual_expectations(spec):
    """Expected (lambda*, mu*) = (-lambda, -mu) on the compact dual."""
    return DualExpectation(
        dual_space(spec.space),
        tuple(-lam for lam in spec.expected_lambda),
        -spec.expected_mu,
    )


# Random parameters

def _complex_normal(rng, size):
    return rng.normal(size=size) + 1j * rng.normal(size=size)


def random_params(space, seed):
    """Random parameters satisfying the theorem conditions of ``space``."""
    rng = np.random.default_rng(seed)
    n = space.n
    fam = space.family

    if fam in ('SLR_SO', 'SPR_U'):
        return _complex_normal(rng, space.ambient_size), None

    if fam == 'SOSTAR_U':
        # Move a base pair by a complexified element of U(n), which
        # preserves (.,.) and commutes with J_n.
        a0, b0 = _sostar_base(n)
        desc = build_descriptor(space)
        coeffs = 0.5 * _complex_normal(rng, len(desc.basis_k))
        k = mat_exp(sum(c * z for c, z in zip(coeffs, desc.basis_k)))
        alpha, beta = _complex_normal(rng, 2)
        return alpha * (k @ a0), beta * (k @ b0)

    if fam == 'SUSTAR_SP':
        a = _complex_normal(rng, 2 * n)
        b = _complex_normal(rng, 2 * n)
        w = J(n) @ np.conj(a)
        b = b - hermitian(w, b) / hermitian(w, w) * w
        return a, b

    raise ConditionError('No parameters for compact space {}'.format(space))


def _sostar_base(n):
    """a = e_1 + i e_{n+1}, b = e_2: valid for every n >= 2.

    Here J_n a = i a.  For n = 2 a pair with a and J_n a independent cannot
    work, since they span a totally isotropic plane equal to its own
    orthogonal complement, forcing (b,b) = 0.
    """
    a = np.zeros(2 * n, dtype=complex)
    a[0], a[n] = 1., 1j
    b = np.zeros(2 * n, dtype=complex)
    b[1] = 1.
    return a, b


def random_spec(space, seed):
    a, b = random_params(space, seed)
    return make_spec(space, a, b)


def example_spec(space):
    """The worked example of each family, for n where one exists."""
    n = space.n
    m = space.ambient_size

    def e(i):
        v = np.zeros(m, dtype=complex)
        v[i - 1] = 1.
        return v

    fam = space.family
    if fam in ('SLR_SO', 'SPR_U'):
        return make_spec(space, e(1) + 1j * e(2))
    elif fam == 'SOSTAR_U':
        if n == 3:
            return make_spec(space, e(1) + 1j * e(2), e(6))
        return make_spec(space, *_sostar_base(n))
    elif fam == 'SUSTAR_SP':
        return make_spec(space, e(1), e(2))
    raise ConditionError('No example for compact space {}'.format(space))
