"""eigenfib tension field and conformality operator.

On a matrix Lie group with left-invariant metric and an orthonormal basis of
normal matrices, the operators reduce to

    tau(phi)       = sum_Z Z^2(phi)
    kappa(phi,psi) = sum_Z Z(phi) Z(psi)

where Z^k(phi)(x) is the k-th derivative of s -> phi(x exp(sZ)) at s = 0.
Closed forms are provided for quadratic trace functions
phi(x) = trace(A x B x^t); anything else goes through the finite-difference
oracle.

:copyright: Copyright 2026 eigenfib developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import numpy as np

from eigenfib.matrix import ShapeError, mat_exp, symmetry_part

SYMMETRY_TOL = 1e-12

# Oracle step sizes
H_FIRST = 1e-5
H_SECOND = 1e-3


class QuadTraceFn(object):
    """The function x -> trace(A x B x^t) with B symmetric or skew."""

    def __init__(self, A, B, symmetry=None):
        self.A = np.asarray(A, dtype=complex)
        self.B = np.asarray(B, dtype=complex)
        m = self.B.shape[0]
        if self.A.shape != (m, m) or self.B.shape != (m, m):
            raise ShapeError('A and B must both be {0}x{0}'.format(m))

        if symmetry is None:
            if np.linalg.norm(self.B - self.B.T) <= SYMMETRY_TOL:
                symmetry = 'symmetric'
            else:
                symmetry = 'skew'
        if symmetry not in ('symmetric', 'skew'):
            raise ValueError('Unknown symmetry {!r}'.format(symmetry))
        self.symmetry = symmetry

        if np.linalg.norm(self.B - self.sign * self.B.T) > SYMMETRY_TOL:
            raise ValueError('B is not {}'.format(symmetry))

    @classmethod
    def from_vectors(cls, a, b, B):
        """Build trace(a b^t x B x^t)."""
        return cls(np.outer(a, b), B)

    @property
    def sign(self):
        return 1 if self.symmetry == 'symmetric' else -1

    @property
    def size(self):
        return self.B.shape[0]

    def reduced(self):
        """Part of A that the function depends on: (A + sign A^t) / 2."""
        return symmetry_part(self.A, self.sign)

    def __call__(self, x):
        return evaluate(self, x)

    def __repr__(self):
        return 'QuadTraceFn(size={}, {})'.format(self.size, self.symmetry)


def _check(f, *mats):
    for m in mats:
        if np.shape(m) != (f.size, f.size):
            raise ShapeError(
                'Expected {0}x{0} matrix, got {1}'.format(f.size, np.shape(m))
            )


def evaluate(f, x):
    """trace(A x B x^t)."""
    _check(f, x)
    return complex(np.trace(f.A @ x @ f.B @ x.T))


def first_derivative(f, x, z):
    """Z(phi)(x) = trace(A x Z B x^t) + trace(A x B Z^t x^t)."""
    _check(f, x, z)
    ax = f.A @ x
    return complex(np.trace(ax @ z @ f.B @ x.T)
                   + np.trace(ax @ f.B @ z.T @ x.T))


def second_derivative(f, x, z):
    """Z^2(phi)(x), by differentiating trace(A x e^{sZ} B e^{sZ^t} x^t)."""
    _check(f, x, z)
    ax = f.A @ x
    zt = z.T
    inner = z @ z @ f.B + 2. * z @ f.B @ zt + f.B @ zt @ zt
    return complex(np.trace(ax @ inner @ x.T))


def differential_matrix(f, x):
    """M = B x^t A~ x, so that Z(phi)(x) = 2 trace(M Z)."""
    _check(f, x)
    return f.B @ x.T @ f.reduced() @ x


def gradient_coefficients(f, basis, x):
    """The vector (Z(phi)(x)) over ``basis``."""
    return np.array([first_derivative(f, x, z) for z in basis])


def tau(f, basis, x):
    """Tension field sum_Z Z^2(phi) at x."""
    terms = np.array([second_derivative(f, x, z) for z in basis])
    # numpy's pairwise summation in fixed index order
    return complex(np.sum(terms))


def kappa(f, g, basis, x):
    """Conformality operator sum_Z Z(phi) Z(psi) at x."""
    terms = np.array([first_derivative(f, x, z) * first_derivative(g, x, z)
                      for z in basis])
    return complex(np.sum(terms))


def derivative_oracle(func, x, z, order, h=None):
    """Centered finite difference of s -> func(x exp(sZ)) at s = 0.

    Order 1 uses the 2-point stencil, order 2 the 5-point stencil.
    """
    if order not in (1, 2):
        raise ValueError('Oracle order must be 1 or 2, got {}'.format(order))
    if h is None:
        h = H_FIRST if order == 1 else H_SECOND
    assert h > 0

    def at(s):
        return complex(func(x @ mat_exp(s * z)))

    if order == 1:
        return (at(h) - at(-h)) / (2. * h)
    else:
        return (-at(2. * h) + 16. * at(h) - 30. * at(0.)
                + 16. * at(-h) - at(-2. * h)) / (12. * h * h)


def oracle_tau(func, basis, x, h=H_SECOND):
    """Tension field of an arbitrary function via the oracle."""
    terms = np.array([derivative_oracle(func, x, z, 2, h) for z in basis])
    return complex(np.sum(terms))


def product_rule_residual(f, g, basis, x, h=H_SECOND):
    """Relative defect of tau(fg) = tau(f) g + 2 kappa(f, g) + f tau(g).

    The product is quartic, so its tension field comes from the oracle.
    """
    def product(y):
        return evaluate(f, y) * evaluate(g, y)

    lhs = oracle_tau(product, basis, x, h)
    rhs = (tau(f, basis, x) * evaluate(g, x)
           + 2. * kappa(f, g, basis, x)
           + evaluate(f, x) * tau(g, basis, x))
    return abs(lhs - rhs) / (1. + abs(rhs))
