"""eigenfib symmetric space descriptors.

Eight matrix realizations are supported: four non-compact quotients G/K and
their compact duals U/K, where the Lie algebra of U is k + i p inside the
shared complexification.

    ===========  ==================  ========  ===========
    family       quotient            ambient   dual
    ===========  ==================  ========  ===========
    slr-so       SL(n,R)/SO(n)       n         su-so
    spr-u        Sp(n,R)/U(n)        2n        sp-u
    sostar-u     SO*(2n)/U(n)        2n        so2n-u
    sustar-sp    SU*(2n)/Sp(n)       2n        su2n-sp
    su-so        SU(n)/SO(n)         n         slr-so
    sp-u         Sp(n)/U(n)          2n        spr-u
    so2n-u       SO(2n)/U(n)         2n        sostar-u
    su2n-sp      SU(2n)/Sp(n)        2n        sustar-sp
    ===========  ==================  ========  ===========

Every basis element is either skew-Hermitian (in k) or Hermitian (in p), so
each one is a normal matrix and the Levi-Civita term of the tension field
drops out of the basis sum.

:copyright: Copyright 2026 eigenfib developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
from collections import namedtuple
import functools
import itertools
import logging

import numpy as np

from eigenfib.matrix import D, H, J, X, Y, blocks, commutator, mat_exp

logger = logging.getLogger(__name__)

MEMBERSHIP_TOL = 1e-9
CARTAN_TOL = 1e-12
DEFAULT_SCALE = 0.5

# tag, compact, dual, minimal n, ambient factor
Family = namedtuple('Family', 'tag compact dual min_n factor')

FAMILIES = {
    'SLR_SO': Family('slr-so', False, 'SU_SO', 3, 1),
    'SPR_U': Family('spr-u', False, 'SP_U', 2, 2),
    'SOSTAR_U': Family('sostar-u', False, 'SO2N_U', 2, 2),
    'SUSTAR_SP': Family('sustar-sp', False, 'SU2N_SP', 2, 2),
    'SU_SO': Family('su-so', True, 'SLR_SO', 3, 1),
    'SP_U': Family('sp-u', True, 'SPR_U', 2, 2),
    'SO2N_U': Family('so2n-u', True, 'SOSTAR_U', 2, 2),
    'SU2N_SP': Family('su2n-sp', True, 'SUSTAR_SP', 2, 2),
}

_TAGS = {fam.tag: name for name, fam in FAMILIES.items()}


class SpaceError(ValueError):
    """Invalid space identifier, size, or failed membership."""


class SpaceId(namedtuple('SpaceId', 'family n')):
    """A symmetric space family with its size parameter n."""
    __slots__ = ()

    def __new__(cls, family, n):
        family = family.upper().replace('-', '_')
        if family not in FAMILIES:
            raise SpaceError('Unknown space family {!r}'.format(family))
        n = int(n)
        min_n = FAMILIES[family].min_n
        if n < min_n:
            raise SpaceError(
                '{} requires n >= {}, got {}'.format(
                    FAMILIES[family].tag, min_n, n)
            )
        return super(SpaceId, cls).__new__(cls, family, n)

    @classmethod
    def parse(cls, text):
        """Parse the serial form, e.g. ``'slr-so:3'``."""
        try:
            tag, n = text.strip().split(':')
            family = _TAGS[tag.lower()]
            n = int(n)
        except (KeyError, ValueError):
            raise SpaceError('Cannot parse space {!r}'.format(text))
        return cls(family, n)

    @property
    def tag(self):
        return FAMILIES[self.family].tag

    @property
    def compact(self):
        return FAMILIES[self.family].compact

    @property
    def ambient_size(self):
        return FAMILIES[self.family].factor * self.n

    def __str__(self):
        return '{}:{}'.format(self.tag, self.n)


def dual_space(space):
    """The dual partner of ``space`` (compact <-> non-compact)."""
    return SpaceId(FAMILIES[space.family].dual, space.n)


def noncompact_space(space):
    return dual_space(space) if space.compact else space


def group_dimension(space):
    n = space.n
    return {
        'SLR_SO': n * n - 1,
        'SPR_U': 2 * n * n + n,
        'SOSTAR_U': 2 * n * n - n,
        'SUSTAR_SP': 4 * n * n - 1,
    }[noncompact_space(space).family]


def k_dimension(space):
    n = space.n
    return {
        'SLR_SO': n * (n - 1) // 2,
        'SPR_U': n * n,
        'SOSTAR_U': n * n,
        'SUSTAR_SP': 2 * n * n + n,
    }[noncompact_space(space).family]


def quotient_dimension(space):
    return group_dimension(space) - k_dimension(space)


class SymmetricSpaceDescriptor(object):
    """Orthonormal Cartan basis k + p of a matrix symmetric space."""

    def __init__(self, space, basis_k, basis_p):
        self.space = space
        self.ambient_size = space.ambient_size
        self.basis_k = [np.asarray(z, dtype=complex) for z in basis_k]
        self.basis_p = [np.asarray(z, dtype=complex) for z in basis_p]

    @property
    def basis(self):
        return self.basis_k + self.basis_p

    @property
    def dim(self):
        return len(self.basis_k) + len(self.basis_p)

    def combine(self, coeffs, part='p'):
        """Return sum c_i Z_i over ``basis_p`` (or ``basis_k``)."""
        basis = self.basis_p if part == 'p' else self.basis_k
        assert len(coeffs) == len(basis)
        out = np.zeros((self.ambient_size, self.ambient_size), dtype=complex)
        for c, z in zip(coeffs, basis):
            out += c * z
        return out


# Canonical bases of the non-compact algebras

def _pairs(n):
    return itertools.combinations(range(1, n + 1), 2)


def _zero(n):
    return np.zeros((n, n), dtype=complex)


def _unitary_k(n):
    """u(n) embedded as z = x + iy -> [[x, y], [-y, x]]."""
    o = _zero(n)
    basis = [blocks(Y(r, s, n), o, o, Y(r, s, n)) for r, s in _pairs(n)]
    basis += [blocks(o, X(r, s, n), -X(r, s, n), o) for r, s in _pairs(n)]
    basis += [blocks(o, D(t, n), -D(t, n), o) for t in range(1, n + 1)]
    return [z / np.sqrt(2.) for z in basis]


def _slr_basis(n):
    basis_k = [Y(r, s, n) for r, s in _pairs(n)]
    basis_p = [X(r, s, n) for r, s in _pairs(n)]
    basis_p += [H(t, n) for t in range(1, n)]
    return basis_k, basis_p


def _spr_basis(n):
    o = _zero(n)
    basis_p = []
    for r, s in _pairs(n):
        basis_p.append(blocks(X(r, s, n), o, o, -X(r, s, n)))
        basis_p.append(blocks(o, X(r, s, n), X(r, s, n), o))
    for t in range(1, n + 1):
        basis_p.append(blocks(D(t, n), o, o, -D(t, n)))
        basis_p.append(blocks(o, D(t, n), D(t, n), o))
    return _unitary_k(n), [z / np.sqrt(2.) for z in basis_p]


def _sostar_basis(n):
    o = _zero(n)
    basis_p = []
    for r, s in _pairs(n):
        basis_p.append(1j * blocks(Y(r, s, n), o, o, -Y(r, s, n)))
        basis_p.append(1j * blocks(o, Y(r, s, n), Y(r, s, n), o))
    return _unitary_k(n), [z / np.sqrt(2.) for z in basis_p]


def _sustar_basis(n):
    # NOTE: sp(n) is assembled from [[Z, W], [-conj(W), conj(Z)]] with Z
    #   skew-Hermitian and W symmetric; the printed list mixes in Hermitian
    #   blocks, which belong to p.
    o = _zero(n)
    basis_k = []
    for r, s in _pairs(n):
        basis_k.append(blocks(Y(r, s, n), o, o, Y(r, s, n)))
        basis_k.append(1j * blocks(X(r, s, n), o, o, -X(r, s, n)))
        basis_k.append(blocks(o, X(r, s, n), -X(r, s, n), o))
        basis_k.append(1j * blocks(o, X(r, s, n), X(r, s, n), o))
    for t in range(1, n + 1):
        basis_k.append(1j * blocks(D(t, n), o, o, -D(t, n)))
        basis_k.append(blocks(o, D(t, n), -D(t, n), o))
        basis_k.append(1j * blocks(o, D(t, n), D(t, n), o))

    basis_p = []
    for r, s in _pairs(n):
        basis_p.append(blocks(X(r, s, n), o, o, X(r, s, n)))
        basis_p.append(1j * blocks(Y(r, s, n), o, o, -Y(r, s, n)))
        basis_p.append(blocks(o, Y(r, s, n), -Y(r, s, n), o))
        basis_p.append(1j * blocks(o, Y(r, s, n), Y(r, s, n), o))
    for t in range(1, n):
        basis_p.append(blocks(H(t, n), o, o, H(t, n)))

    return ([z / np.sqrt(2.) for z in basis_k],
            [z / np.sqrt(2.) for z in basis_p])


_BASES = {
    'SLR_SO': _slr_basis,
    'SPR_U': _spr_basis,
    'SOSTAR_U': _sostar_basis,
    'SUSTAR_SP': _sustar_basis,
}


def canonical_basis(space):
    """Return (basis_k, basis_p) without validation."""
    base = noncompact_space(space)
    basis_k, basis_p = _BASES[base.family](base.n)
    if space.compact:
        basis_p = [1j * z for z in basis_p]
    return basis_k, basis_p


def build_descriptor(space):
    """Construct and validate the Cartan basis of ``space``.

    Strings are parsed first so that the cache is keyed on ``SpaceId``.
    """
    if isinstance(space, str):
        space = SpaceId.parse(space)
    return _cached_descriptor(space)


@functools.lru_cache(maxsize=None)
def _cached_descriptor(space):
    basis_k, basis_p = canonical_basis(space)
    desc = SymmetricSpaceDescriptor(space, basis_k, basis_p)

    report = validate_cartan(desc)
    if not report.passed:
        raise SpaceError(
            'Cartan basis of {} failed validation: {}'.format(
                space, report.failures[0])
        )
    logger.debug('Built descriptor %s: dim k = %d, dim p = %d',
                 space, len(desc.basis_k), len(desc.basis_p))
    return desc


# Membership

def _norm(m):
    return float(np.linalg.norm(m))


def _imag(x):
    return _norm(np.imag(x))


def membership_residual(space, x):
    """Sum of residual norms of the group's defining equations at x."""
    x = np.asarray(x, dtype=complex)
    m = space.ambient_size
    if x.shape != (m, m):
        raise SpaceError(
            '{} needs a {}x{} matrix, got {}'.format(space, m, m, x.shape)
        )
    eye = np.eye(m)
    fam = space.family

    if fam in ('SPR_U', 'SP_U', 'SOSTAR_U', 'SUSTAR_SP'):
        jn = J(space.n)

    if fam == 'SLR_SO':
        return _imag(x) + abs(np.linalg.det(x) - 1.)
    elif fam == 'SPR_U':
        return _imag(x) + _norm(x @ jn @ x.T - jn)
    elif fam == 'SOSTAR_U':
        return (_norm(x @ x.T - eye) + _norm(np.conj(x) @ jn @ x.T - jn)
                + abs(np.linalg.det(x) - 1.))
    elif fam == 'SUSTAR_SP':
        return _norm(x @ jn - jn @ np.conj(x)) + abs(np.linalg.det(x) - 1.)
    elif fam in ('SU_SO', 'SU2N_SP'):
        return _norm(x @ x.conj().T - eye) + abs(np.linalg.det(x) - 1.)
    elif fam == 'SP_U':
        return _norm(x @ x.conj().T - eye) + _norm(x @ jn @ x.T - jn)
    elif fam == 'SO2N_U':
        return (_imag(x) + _norm(x @ x.T - eye)
                + abs(np.linalg.det(x) - 1.))


def algebra_residual(space, z):
    """Residual of the linearized defining equations at Z."""
    z = np.asarray(z, dtype=complex)
    fam = space.family
    if fam in ('SPR_U', 'SP_U', 'SOSTAR_U', 'SUSTAR_SP'):
        jn = J(space.n)

    if fam == 'SLR_SO':
        return _imag(z) + abs(np.trace(z))
    elif fam == 'SPR_U':
        return _imag(z) + _norm(z @ jn + jn @ z.T)
    elif fam == 'SOSTAR_U':
        return _norm(z + z.T) + _norm(np.conj(z) @ jn + jn @ z.T)
    elif fam == 'SUSTAR_SP':
        return _norm(z @ jn - jn @ np.conj(z)) + abs(np.trace(z))
    elif fam in ('SU_SO', 'SU2N_SP'):
        return _norm(z + z.conj().T) + abs(np.trace(z))
    elif fam == 'SP_U':
        return _norm(z + z.conj().T) + _norm(z @ jn + jn @ z.T)
    elif fam == 'SO2N_U':
        return _imag(z) + _norm(z + z.T)


class GroupPoint(object):
    """A matrix certified to lie in the group of ``space``."""

    def __init__(self, space, matrix, tol=MEMBERSHIP_TOL):
        self.space = space
        self.matrix = np.asarray(matrix, dtype=complex)
        self.membership_residual = membership_residual(space, self.matrix)
        if not self.membership_residual <= tol:
            raise SpaceError(
                'Matrix is not in {} (residual {:.3e})'.format(
                    space, self.membership_residual)
            )

    def __repr__(self):
        return 'GroupPoint({}, residual={:.2e})'.format(
            self.space, self.membership_residual)


def random_point(space, seed, scale=DEFAULT_SCALE):
    """Return exp(P) exp(K) with Gaussian coefficients of std ``scale``."""
    assert scale > 0
    desc = build_descriptor(space)
    rng = np.random.default_rng(seed)
    p = desc.combine(rng.normal(scale=scale, size=len(desc.basis_p)), 'p')
    k = desc.combine(rng.normal(scale=scale, size=len(desc.basis_k)), 'k')
    return GroupPoint(space, mat_exp(p) @ mat_exp(k))


def random_compact_element(space, seed, scale=1.):
    """Random element exp(K) of the compact subgroup K."""
    desc = build_descriptor(space)
    rng = np.random.default_rng(seed)
    k = desc.combine(rng.normal(scale=scale, size=len(desc.basis_k)), 'k')
    return mat_exp(k)


# Cartan validation

class CartanReport(object):
    """Outcome of ``validate_cartan``; ``failures`` lists what went wrong."""

    def __init__(self, space):
        self.space = space
        self.failures = []
        self.max_residual = 0.

    @property
    def passed(self):
        return not self.failures

    def check(self, condition, where, residual, tol):
        self.max_residual = max(self.max_residual, residual)
        if residual > tol:
            self.failures.append((condition, where, residual))


def _projection_residual(c, stack):
    """Distance from C to the real span of an orthonormal stack."""
    if len(stack) == 0:
        return _norm(c)
    coeffs = np.real(np.einsum('kij,ij->k', np.conj(stack), c))
    return _norm(c - np.einsum('k,kij->ij', coeffs, stack))


def validate_cartan(desc, tol=CARTAN_TOL):
    """Check orthonormality, bracket relations, normality and membership."""
    report = CartanReport(desc.space)
    basis = desc.basis
    nk = len(desc.basis_k)

    # Orthonormality
    stack = np.array(basis)
    flat = stack.reshape(len(basis), -1)
    gram = np.real(flat.conj() @ flat.T)
    dev = np.abs(gram - np.eye(len(basis)))
    for i, j in zip(*np.nonzero(dev > tol)):
        if i <= j:
            cond = 'normalization' if i == j else 'orthogonality'
            report.check(cond, (int(i), int(j)), float(dev[i, j]), tol)
    report.max_residual = max(report.max_residual, float(dev.max(initial=0.)))

    # Dimension
    if len(basis) != group_dimension(desc.space):
        report.failures.append(
            ('dimension', (len(basis), group_dimension(desc.space)), 0.)
        )

    # Normality and algebra membership
    for i, z in enumerate(basis):
        report.check('normality', (i,),
                     _norm(z @ z.conj().T - z.conj().T @ z), tol)
        report.check('membership', (i,), algebra_residual(desc.space, z), tol)

    # Brackets: [k,k] in k, [k,p] in p, [p,p] in k
    stack_k = np.array(desc.basis_k)
    stack_p = np.array(desc.basis_p)
    for i, j in itertools.combinations(range(len(basis)), 2):
        in_k = (i < nk) == (j < nk)
        target = stack_k if in_k else stack_p
        res = _projection_residual(commutator(basis[i], basis[j]), target)
        cond = 'bracket [{},{}]'.format('k' if i < nk else 'p',
                                        'k' if j < nk else 'p')
        report.check(cond, (i, j), res, tol)

    return report
