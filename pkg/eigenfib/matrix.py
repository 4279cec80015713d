"""eigenfib dense complex matrix utilities.

Matrices and vectors are plain ``numpy`` arrays of ``complex128``.  The
functions here supply the two inner products of the trace-form calculus, the
canonical basis generators, the matrix exponential and a numerical rank.

:copyright: Copyright 2026 eigenfib developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import numpy as np
import scipy.linalg

# Default tolerances
RANK_TOL = 1e-10
EXP_TOL = 1e-13
REL_TOL = 1e-9


class ShapeError(ValueError):
    """Operands have incompatible shapes or indices are out of range."""


def as_matrix(entries):
    """Return ``entries`` as a finite 2D complex array."""
    mat = np.array(entries, dtype=complex)
    if mat.ndim != 2:
        raise ShapeError('Expected a matrix, got shape {}'.format(mat.shape))
    if not np.all(np.isfinite(mat)):
        raise ShapeError('Matrix has non-finite entries')
    return mat


def as_vector(entries):
    """Return ``entries`` as a finite 1D complex array."""
    vec = np.array(entries, dtype=complex)
    if vec.ndim != 1:
        raise ShapeError('Expected a vector, got shape {}'.format(vec.shape))
    if not np.all(np.isfinite(vec)):
        raise ShapeError('Vector has non-finite entries')
    return vec


def _check_same(u, v):
    if np.shape(u) != np.shape(v):
        raise ShapeError(
            'Shape mismatch: {} vs {}'.format(np.shape(u), np.shape(v))
        )


def bilinear(u, v):
    """Standard complex bilinear form (u, v) = sum u_i v_i.

    No conjugation is applied; isotropic vectors such as e1 + i e2 have
    (v, v) = 0.
    """
    _check_same(u, v)
    return complex(np.sum(np.asarray(u) * np.asarray(v)))


def hermitian(u, v):
    """Hermitian product <u, v> = sum conj(u_i) v_i."""
    _check_same(u, v)
    return complex(np.vdot(u, v))


def frobenius_inner(z, w):
    """Real inner product Re trace(Z W*) of the left-invariant metric."""
    _check_same(z, w)
    return float(np.real(np.vdot(w, z)))


def hermitian_trace(m, z):
    """Complex pairing trace(M Z*).

    The real and imaginary parts are the real inner products of M with Z
    and with iZ, so this vanishes iff M is orthogonal to both.
    """
    _check_same(m, z)
    return complex(np.vdot(z, m))


def frobenius_norm(m):
    return float(np.linalg.norm(m))


def commutator(x, y):
    _check_same(x, y)
    return x @ y - y @ x


def symmetry_part(m, sign):
    """Return (M + sign M^t) / 2, the (skew-)symmetric part of M."""
    return 0.5 * (m + sign * m.T)


# Canonical basis generators

def E(i, j, n):
    """Matrix unit E_ij (1-based indices)."""
    _check_index(n, i, j)
    mat = np.zeros((n, n), dtype=complex)
    mat[i - 1, j - 1] = 1.
    return mat


def D(t, n):
    return E(t, t, n)


def X(r, s, n):
    """Symmetric unit (E_rs + E_sr) / sqrt(2), r < s."""
    _check_pair(n, r, s)
    return (E(r, s, n) + E(s, r, n)) / np.sqrt(2.)


def Y(r, s, n):
    """Skew unit (E_rs - E_sr) / sqrt(2), r < s."""
    _check_pair(n, r, s)
    return (E(r, s, n) - E(s, r, n)) / np.sqrt(2.)


def H(t, n):
    """Traceless diagonal unit (D_1 + ... + D_t - t D_{t+1}) / sqrt(t(t+1)).

    These fill the diagonal directions of sl(n) which the matrix units
    alone do not reach.
    """
    if not 1 <= t <= n - 1:
        raise ShapeError('H index {} out of range for n = {}'.format(t, n))
    diag = np.zeros(n, dtype=complex)
    diag[:t] = 1.
    diag[t] = -t
    return np.diag(diag) / np.sqrt(t * (t + 1.))


def J(n):
    """The standard skew form [[0, I_n], [-I_n, 0]] of size 2n."""
    if n < 1:
        raise ShapeError('J requires n >= 1, got {}'.format(n))
    eye = np.eye(n, dtype=complex)
    zero = np.zeros((n, n), dtype=complex)
    return np.block([[zero, eye], [-eye, zero]])


def blocks(a, b, c, d):
    """Assemble the 2x2 block matrix [[a, b], [c, d]]."""
    return np.block([[a, b], [c, d]])


def basis_generator(kind, n, *index):
    """Dispatch on ``kind`` in {'E', 'D', 'X', 'Y', 'H', 'J'}."""
    generators = {
        'E': E,
        'D': D,
        'X': X,
        'Y': Y,
        'H': H,
    }
    if kind == 'J':
        return J(n)
    try:
        gen = generators[kind]
    except KeyError:
        raise ShapeError('Unknown generator {!r}'.format(kind))
    return gen(*(index + (n,)))


def _check_index(n, *idx):
    if any(not 1 <= i <= n for i in idx):
        raise ShapeError('Index {} out of range for n = {}'.format(idx, n))


def _check_pair(n, r, s):
    _check_index(n, r, s)
    if not r < s:
        raise ShapeError('Require r < s, got r = {}, s = {}'.format(r, s))


def mat_exp(z, tol=EXP_TOL):
    """Matrix exponential.

    scipy's scaling-and-squaring Pade approximant is accurate to roughly
    machine precision, well within ``tol`` for the argument norms used here.
    """
    z = np.asarray(z, dtype=complex)
    if z.ndim != 2 or z.shape[0] != z.shape[1]:
        raise ShapeError('mat_exp needs a square matrix, got {}'.format(
            z.shape))
    assert tol > 0
    return scipy.linalg.expm(z)


def exp_frechet(z, e):
    """Return (exp(Z), L) where L is the derivative of exp at Z along E."""
    return scipy.linalg.expm_frechet(
        np.asarray(z, dtype=complex), np.asarray(e, dtype=complex)
    )


def numerical_rank(m, tol=RANK_TOL):
    """Count singular values above ``tol`` times the largest one."""
    assert tol > 0
    sv = np.linalg.svd(np.atleast_2d(m), compute_uv=False)
    if sv.size == 0 or sv[0] == 0.:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def linearly_independent(*vectors, tol=RANK_TOL):
    """True if the given vectors have full numerical rank."""
    return numerical_rank(np.column_stack(vectors), tol) == len(vectors)


def close(a, b, tol=REL_TOL):
    """Scale-relative comparison |a - b| <= tol (1 + |b|)."""
    return abs(a - b) <= tol * (1. + abs(b))
