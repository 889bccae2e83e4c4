"""Linear maps on M_n as n^2 x n^2 matrices.

Coordinates are the matrix units in row-major order: the flat index of
``E_ij`` is ``k = i * n + j``, so ``flatten`` is a plain C-order reshape.
Column k of a superoperator matrix is the flattened image of ``E_k``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotABasis
from .linalg import as_cmatrix, unit


def flatten(x):
    return np.asarray(x, dtype=np.complex128).reshape(-1)


def unflatten(v, n):
    return np.asarray(v, dtype=np.complex128).reshape(n, n)


@dataclass(frozen=True)
class SuperOp:
    n: int
    mat: np.ndarray

    def __post_init__(self):
        mat = as_cmatrix(self.mat, "superoperator matrix")
        if mat.shape != (self.n * self.n, self.n * self.n):
            raise DimensionMismatch(f"SuperOp on M_{self.n} needs a {self.n ** 2}-square matrix")
        object.__setattr__(self, "mat", mat)

    def __call__(self, x):
        return apply(self, x)

    def __matmul__(self, other):
        return compose(self, other)


def identity(n):
    return SuperOp(n, np.eye(n * n, dtype=np.complex128))


def transpose_map(n):
    return superop_from_action(n, lambda x: x.T)


def superop_from_action(n, action):
    """Tabulate a linear ``action`` on M_n column by column."""
    cols = [flatten(action(unit(n, i, j))) for i in range(n) for j in range(n)]
    return SuperOp(n, np.stack(cols, axis=1))


def apply(s, x):
    x = as_cmatrix(x)
    if x.shape != (s.n, s.n):
        raise DimensionMismatch(f"cannot apply a SuperOp on M_{s.n} to shape {x.shape}")
    return unflatten(s.mat @ flatten(x), s.n)


def apply_inverse(s, x):
    """``S^{-1}(X)`` through a linear solve."""
    x = as_cmatrix(x)
    if x.shape != (s.n, s.n):
        raise DimensionMismatch(f"cannot apply a SuperOp on M_{s.n} to shape {x.shape}")
    return unflatten(np.linalg.solve(s.mat, flatten(x)), s.n)


def compose(s1, s2):
    """``s1 o s2``."""
    if s1.n != s2.n:
        raise DimensionMismatch(f"compose: M_{s1.n} vs M_{s2.n}")
    return SuperOp(s1.n, s1.mat @ s2.mat)


def transpose_rep(s):
    """The map whose matrix is the plain (not conjugate) transpose of ``s.mat``."""
    return SuperOp(s.n, s.mat.T.copy())


def change_of_basis(basis):
    """The map sending ``E_k`` to ``B_k`` in the basis' stored order."""
    n = basis.n
    mat = np.stack([flatten(b) for b in basis.elements], axis=1)
    s = np.linalg.svd(mat, compute_uv=False)
    if not s[-1] > n * n * 1e-12 * s[0]:
        raise NotABasis("change-of-basis matrix is singular")
    return SuperOp(n, mat)


def m_map(basis):
    """``C_B C_B^T``; independent of the order of the basis elements."""
    c = change_of_basis(basis)
    return compose(c, transpose_rep(c))
