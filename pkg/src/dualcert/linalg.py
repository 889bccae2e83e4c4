"""Dense complex matrix kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Every positivity
or rank decision in the package goes through :func:`is_psd` or a relative
tolerance of the form ``tol * (1 + ||M||_F)``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidMatrix, NotHermitian

TOL_PSD = 1e-9
TOL_RANK = 1e-8
TOL_HERM = 1e-9


def as_cmatrix(a, name="matrix"):
    """Return ``a`` as a square, finite ``complex128`` array (a copy if needed)."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise InvalidMatrix(f"{name} must be a non-empty square 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidMatrix(f"{name} has non-finite entries")
    return m


def fro(a):
    return float(np.linalg.norm(a))


def unit(n, i, j):
    """Matrix unit E_ij in M_n (zero-based indices)."""
    e = np.zeros((n, n), dtype=np.complex128)
    e[i, j] = 1.0
    return e


def hs_inner(a, b):
    """Hilbert-Schmidt inner product ``tr(A B^*)``.

    Linear in the first argument and conjugate-linear in the second.
    """
    a = as_cmatrix(a, "A")
    b = as_cmatrix(b, "B")
    if a.shape != b.shape:
        raise DimensionMismatch(f"hs_inner: {a.shape} vs {b.shape}")
    # tr(A B^*) = sum_ij A_ij conj(B_ij)
    return complex(np.vdot(b, a))


def kron(a, b):
    """Kronecker product; block (i, j) of the result is ``A[i, j] * B``."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def partial_transpose(m, factor, dims):
    """Partial transpose of ``M`` in ``M_n (x) M_p`` with ``dims == (n, p)``.

    ``factor="first"`` moves block (i, j) to (j, i); ``factor="second"``
    transposes every p x p block in place.
    """
    n, p = dims
    m = as_cmatrix(m)
    if n < 1 or p < 1 or m.shape[0] != n * p:
        raise DimensionMismatch(f"partial_transpose: dims {dims} inconsistent with {m.shape}")
    t = m.reshape(n, p, n, p)
    if factor == "first":
        t = t.transpose(2, 1, 0, 3)
    elif factor == "second":
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"factor must be 'first' or 'second', got {factor!r}")
    return np.ascontiguousarray(t).reshape(n * p, n * p)


def swap_factors(m, dims):
    """Apply the *-isomorphism ``A (x) B -> B (x) A`` to ``M`` in ``M_n (x) M_p``.

    The result lives in ``M_p (x) M_n``.
    """
    n, p = dims
    m = as_cmatrix(m)
    if m.shape[0] != n * p:
        raise DimensionMismatch(f"swap_factors: dims {dims} inconsistent with {m.shape}")
    t = m.reshape(n, p, n, p).transpose(1, 0, 3, 2)
    return np.ascontiguousarray(t).reshape(n * p, n * p)


def hermitian_defect(m):
    return fro(m - m.conj().T)


def check_hermitian(m, tol=TOL_HERM):
    m = as_cmatrix(m)
    defect = hermitian_defect(m)
    if defect > tol * (1.0 + fro(m)):
        raise NotHermitian(
            f"matrix is not Hermitian: ||M - M*||_F = {defect:.3e}", defect=defect
        )
    return m


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues and matching orthonormal eigenvectors (columns)."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self):
        return (self.vectors * self.values) @ self.vectors.conj().T


def herm_eig(m, tol=TOL_HERM):
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrized as ``(M + M^*) / 2`` before being handed to LAPACK.
    Raises :class:`NotHermitian` when ``||M - M^*||_F > tol (1 + ||M||_F)``.
    """
    m = check_hermitian(m, tol)
    h = 0.5 * (m + m.conj().T)
    values, vectors = np.linalg.eigh(h)
    return EigenDecomposition(values=values, vectors=vectors)


def hermitian_eigvals(m):
    """Ascending eigenvalues of the Hermitian part of ``m``; no Hermiticity check."""
    m = np.asarray(m, dtype=np.complex128)
    return np.linalg.eigvalsh(0.5 * (m + m.conj().T))


def is_psd(m, tol=TOL_PSD):
    """True iff the smallest eigenvalue is ``>= -tol (1 + ||M||_F)``.

    Raises :class:`NotHermitian` for matrices that are not Hermitian within
    the same relative tolerance.
    """
    m = check_hermitian(m, tol)
    lo = hermitian_eigvals(m)[0]
    return bool(lo >= -tol * (1.0 + fro(m)))


def numerical_rank(m, tol=TOL_RANK):
    s = np.linalg.svd(np.asarray(m, dtype=np.complex128), compute_uv=False)
    return int(np.sum(s > tol * (1.0 + fro(m))))
