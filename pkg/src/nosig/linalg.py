"""Dense complex linear algebra for small matrices.

Vectors and matrices are plain complex ``numpy`` arrays (1-D and 2-D).
Composite indices are big-endian: in ``tensor_product(a, b)`` the index of
``a`` is the most significant digit.

The Hermitian eigensolver is a cyclic complex Jacobi method. Matrices in this
package never exceed 32x32, so an O(n^3) sweep costs nothing and the method
is accurate to a few ulps in every eigenvalue.
"""

from functools import reduce

import numpy as np

from .errors import DimMismatch, NotConverged, NotHermitian, NotSquare
from .tolerances import EIG_TOL, HERMITICITY_TOL

MAX_SWEEPS = 100


def as_matrix(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise NotSquare(f"expected a non-empty square matrix, got shape {m.shape}")
    return m


def tensor_product(*operands):
    """Kronecker product of vectors or matrices, first operand most significant.

    Mixing vectors and matrices is rejected since the result would not be a
    state or an operator.
    """
    if not operands:
        raise ValueError("tensor_product needs at least one operand")
    arrays = [np.asarray(x, dtype=complex) for x in operands]
    ndims = {a.ndim for a in arrays}
    if len(ndims) != 1 or ndims.pop() not in (1, 2):
        raise DimMismatch("operands must all be vectors or all be matrices")
    if any(a.size == 0 for a in arrays):
        raise ValueError("operands must be non-empty")
    return reduce(np.kron, arrays)


def hermiticity_error(m):
    m = as_matrix(m)
    return float(np.max(np.abs(m - m.conj().T)))


def check_hermitian(m, tol=HERMITICITY_TOL):
    m = as_matrix(m)
    err = hermiticity_error(m)
    if err > tol:
        raise NotHermitian(f"matrix deviates from Hermitian by {err:.3e} (tol {tol:.0e})")
    return m


def _off_diagonal_norm(a):
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eigh(m, tol=EIG_TOL):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies the classical real Jacobi rotation to the resulting real
    symmetric 2x2 block.

    Args:
        m: square Hermitian matrix (deviation up to ``HERMITICITY_TOL``).
        tol: convergence threshold on the off-diagonal Frobenius norm,
            relative to ``max(1, ||m||_F)``.

    Returns:
        ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and the
        eigenvectors as the columns of a unitary matrix.

    Raises:
        NotSquare, NotHermitian, NotConverged
    """
    a = check_hermitian(m).copy()
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    for _ in range(MAX_SWEEPS):
        if _off_diagonal_norm(a) < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                if mag < 1e-300:
                    continue
                phase = g / mag
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # columns p, q of the unitary: diag(1, conj(phase)) @ [[c, s], [-s, c]]
                rot = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ rot
    else:
        raise NotConverged(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")

    values = np.real(np.diag(a))
    order = np.argsort(values, kind="stable")
    return values[order], v[:, order]


def hermitian_eigenvalues(m, tol=EIG_TOL):
    """Ascending real eigenvalues of a Hermitian matrix."""
    return hermitian_eigh(m, tol)[0]


def trace_norm(m):
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(m))))


def random_hermitian(n, rng):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (x + x.conj().T)


def random_unitary(n, rng):
    """Unitary ``exp(iH)`` for a random Hermitian ``H``.

    Built from the Jacobi eigendecomposition, so it needs nothing beyond
    this module.
    """
    values, vectors = hermitian_eigh(random_hermitian(n, rng))
    return (vectors * np.exp(1j * values)) @ vectors.conj().T
