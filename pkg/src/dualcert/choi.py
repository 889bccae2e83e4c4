"""Matrix correspondences for linear maps M_n -> M_p.

Factor order matters and differs between the forms:

* :func:`choi_matrix`, :func:`jamiolkowski`, :func:`conjugate_choi` live in
  ``M_n (x) M_p`` (input factor first);
* :func:`generalized_choi` and :func:`pauli_block_condition` live in
  ``M_p (x) M_n`` / ``M_2(M_p)`` as noted on each function.

:func:`dualcert.linalg.swap_factors` converts between the two orders.
"""
from dataclasses import dataclass

import numpy as np

from .bases import PAULI, gram
from .errors import DimensionMismatch, InvalidMatrix, NotOrthonormal
from .linalg import TOL_PSD, as_cmatrix, fro, is_psd, partial_transpose, unit

BUILTINS = ("identity", "transpose", "trace_depolarize")


@dataclass(frozen=True)
class MapSpec:
    """A linear map ``M_n -> M_p``.

    Exactly one of ``kraus`` (sequence of p x n arrays), ``superop``
    (p^2 x n^2 array, column k the flattened image of ``E_k``) or ``builtin``
    (a name from :data:`BUILTINS`) is set.
    """

    n: int
    p: int
    kraus: tuple = None
    superop: np.ndarray = None
    builtin: str = None

    def __post_init__(self):
        given = [x is not None for x in (self.kraus, self.superop, self.builtin)]
        if sum(given) != 1:
            raise ValueError("MapSpec needs exactly one of kraus, superop, builtin")
        if self.n < 1 or self.p < 1:
            raise DimensionMismatch("n and p must be positive")
        if self.kraus is not None:
            ops = tuple(np.asarray(k, dtype=np.complex128) for k in self.kraus)
            if not ops:
                raise ValueError("empty Kraus list")
            for k in ops:
                if k.shape != (self.p, self.n):
                    raise DimensionMismatch(
                        f"Kraus operator of shape {k.shape}, expected {(self.p, self.n)}"
                    )
                if not np.all(np.isfinite(k)):
                    raise InvalidMatrix("Kraus operator has non-finite entries")
            object.__setattr__(self, "kraus", ops)
        elif self.superop is not None:
            mat = np.asarray(self.superop, dtype=np.complex128)
            if mat.shape != (self.p ** 2, self.n ** 2):
                raise DimensionMismatch(
                    f"superop matrix of shape {mat.shape}, expected {(self.p ** 2, self.n ** 2)}"
                )
            if not np.all(np.isfinite(mat)):
                raise InvalidMatrix("superop matrix has non-finite entries")
            object.__setattr__(self, "superop", mat)
        else:
            if self.builtin not in BUILTINS:
                raise ValueError(f"unknown builtin map {self.builtin!r}")
            if self.p != self.n:
                raise DimensionMismatch("builtin maps need p == n")

    @property
    def kind(self):
        if self.kraus is not None:
            return "kraus"
        if self.superop is not None:
            return "superop"
        return "builtin"

    def __call__(self, x):
        return apply_map(self, x)


def builtin_map(name, n):
    return MapSpec(n, n, builtin=name)


def kraus_map(ops):
    ops = [np.asarray(k, dtype=np.complex128) for k in ops]
    p, n = ops[0].shape
    return MapSpec(n, p, kraus=tuple(ops))


def superop_matrix(m):
    """The ``p^2 x n^2`` matrix of ``m`` in flat matrix-unit coordinates."""
    if m.superop is not None:
        return m.superop
    cols = [apply_map(m, unit(m.n, i, j)).reshape(-1) for i in range(m.n) for j in range(m.n)]
    return np.stack(cols, axis=1)


def apply_map(m, x):
    x = as_cmatrix(x)
    if x.shape != (m.n, m.n):
        raise DimensionMismatch(f"map on M_{m.n} applied to shape {x.shape}")
    if m.kraus is not None:
        out = np.zeros((m.p, m.p), dtype=np.complex128)
        for k in m.kraus:
            out += k @ x @ k.conj().T
        return out
    if m.superop is not None:
        return (m.superop @ x.reshape(-1)).reshape(m.p, m.p)
    if m.builtin == "identity":
        return x.copy()
    if m.builtin == "transpose":
        return x.T.copy()
    return np.trace(x) * np.eye(m.n, dtype=np.complex128)


def compose_output_transpose(m):
    """``t o m``."""
    mat = superop_matrix(m)
    perm = np.arange(m.p * m.p).reshape(m.p, m.p).T.reshape(-1)
    return MapSpec(m.n, m.p, superop=mat[perm, :])


def compose_input_transpose(m):
    """``m o t``."""
    mat = superop_matrix(m)
    perm = np.arange(m.n * m.n).reshape(m.n, m.n).T.reshape(-1)
    return MapSpec(m.n, m.p, superop=mat[:, perm])


def map_from_choi(choi, n, p):
    """Inverse of :func:`choi_matrix`: read ``Phi(E_ij)`` off block (i, j)."""
    choi = as_cmatrix(choi, "Choi matrix")
    if choi.shape != (n * p, n * p):
        raise DimensionMismatch(f"Choi matrix of shape {choi.shape} for n={n}, p={p}")
    blocks = choi.reshape(n, p, n, p).transpose(0, 2, 1, 3)  # [i, j, k, l]
    mat = blocks.reshape(n * n, p * p).T
    return MapSpec(n, p, superop=np.ascontiguousarray(mat))


def choi_matrix(m):
    """``sum_ij E_ij (x) Phi(E_ij)``; block (i, j) is ``Phi(E_ij)``."""
    n, p = m.n, m.p
    images = superop_matrix(m).T.reshape(n, n, p, p)  # [i, j, k, l]
    return np.ascontiguousarray(images.transpose(0, 2, 1, 3)).reshape(n * p, n * p)


def choi_block(choi, n, p, i, j):
    return choi[i * p:(i + 1) * p, j * p:(j + 1) * p]


def is_cp(m, tol=TOL_PSD):
    """Choi's criterion. Raises :class:`NotHermitian` for non-Hermiticity-preserving maps."""
    return is_psd(choi_matrix(m), tol)


def is_ccp(m, tol=TOL_PSD):
    """Complete co-positivity: ``t o m`` is CP."""
    return is_psd(partial_transpose(choi_matrix(m), "second", (m.n, m.p)), tol)


def generalized_choi(m, basis, transposed=False):
    """``sum_j Phi(B_j) (x) B_j`` (or ``B_j^t``) in ``M_p (x) M_n``."""
    if basis.n != m.n:
        raise DimensionMismatch(f"basis of M_{basis.n} for a map on M_{m.n}")
    out = np.zeros((m.n * m.p, m.n * m.p), dtype=np.complex128)
    for b in basis.elements:
        out += np.kron(apply_map(m, b), b.T if transposed else b)
    return out


def jamiolkowski(m):
    """``sum_ij E_ij^* (x) Phi(E_ij)``, the partial transpose of the Choi matrix."""
    n, p = m.n, m.p
    images = superop_matrix(m).T.reshape(n, n, p, p)
    return np.ascontiguousarray(images.transpose(1, 2, 0, 3)).reshape(n * p, n * p)


def conjugate_choi(m, onb, tol=TOL_PSD):
    """``sum_l conj(B_l) (x) Phi(B_l)`` for an orthonormal basis; equals the Choi matrix."""
    if onb.n != m.n:
        raise DimensionMismatch(f"basis of M_{onb.n} for a map on M_{m.n}")
    g = gram(onb)
    dev = fro(g - np.eye(len(onb)))
    if dev > tol * len(onb):
        raise NotOrthonormal(f"basis Gram matrix deviates from identity by {dev:.3e}")
    out = np.zeros((m.n * m.p, m.n * m.p), dtype=np.complex128)
    for b in onb.elements:
        out += np.kron(b.conj(), apply_map(m, b))
    return out


def pauli_tensor_condition(m, k, transposed=True):
    """``sum_w Psi(sigma_w) (x) sigma_w^t`` over all k-fold Pauli words (n = 2^k)."""
    from .bases import pauli_basis, tensor_power

    return generalized_choi(m, tensor_power(pauli_basis(), k), transposed=transposed)


def pauli_block_condition(m):
    """The ``2p x 2p`` matrix in ``M_2(M_p)``::

        [[Psi(s0) + Psi(s3),    Psi(s1) + i Psi(s2)],
         [Psi(s1) - i Psi(s2),  Psi(s0) - Psi(s3)]]

    It is PSD iff ``Psi`` is completely positive.
    """
    if m.n != 2:
        raise DimensionMismatch("pauli_block_condition needs a map on M_2")
    s0, s1, s2, s3 = (apply_map(m, s) for s in PAULI)
    return np.block([[s0 + s3, s1 + 1j * s2], [s1 - 1j * s2, s0 - s3]])
