"""Bases of M_n and their dual bases.

A dual functional is stored through its density matrix ``D``, i.e. the
functional is ``X -> tr(D X)``.
"""
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotABasis, ZeroLambda
from .linalg import as_cmatrix, unit

PROVENANCES = ("standard", "pauli", "weyl", "scaled-unit", "custom", "tensor-product")

PAULI = (
    np.array([[1, 0], [0, 1]], dtype=np.complex128),
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)


@dataclass(frozen=True)
class MatrixBasis:
    """An ordered basis of ``M_n``.

    Construction validates basis-hood: the Gram matrix must have smallest
    singular value above ``n^2 * 1e-10`` times its largest.
    """

    n: int
    elements: tuple
    provenance: str = "custom"
    labels: tuple = field(default=None)

    def __post_init__(self):
        elements = tuple(as_cmatrix(b, "basis element") for b in self.elements)
        object.__setattr__(self, "elements", elements)
        n = self.n
        if len(elements) != n * n:
            raise NotABasis(f"a basis of M_{n} needs {n * n} elements, got {len(elements)}")
        for b in elements:
            if b.shape != (n, n):
                raise NotABasis(f"basis element of shape {b.shape} in a basis of M_{n}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        labels = self.labels
        if labels is None:
            labels = tuple(f"B{k}" for k in range(n * n))
        labels = tuple(str(s) for s in labels)
        if len(labels) != n * n:
            raise ValueError("one label per element is required")
        object.__setattr__(self, "labels", labels)
        s = np.linalg.svd(gram(self), compute_uv=False)
        if not s[-1] > n * n * 1e-10 * s[0]:
            raise NotABasis(
                f"elements are not linearly independent (Gram singular values "
                f"{s[-1]:.3e} / {s[0]:.3e})"
            )

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, k):
        return self.elements[k]

    def stacked(self):
        """Elements as an array of shape ``(n^2, n, n)``."""
        return np.stack(self.elements)

    def permuted(self, perm):
        perm = list(perm)
        return MatrixBasis(
            self.n,
            tuple(self.elements[k] for k in perm),
            self.provenance,
            tuple(self.labels[k] for k in perm),
        )


@dataclass(frozen=True)
class DualBasis:
    """Density matrices ``D_j`` with ``tr(D_j B_k) = delta_jk``."""

    basis: MatrixBasis
    densities: tuple


def gram(basis):
    """``G[j, k] = <B_k, B_j> = tr(B_k B_j^*)``."""
    flat = np.stack(basis.elements).reshape(len(basis.elements), -1)
    return flat.conj() @ flat.T


def standard_basis(n):
    if n < 1:
        raise ValueError("n must be positive")
    elements = [unit(n, i, j) for i in range(n) for j in range(n)]
    labels = [f"E{i}{j}" if n <= 10 else f"E{i},{j}" for i in range(n) for j in range(n)]
    return MatrixBasis(n, tuple(elements), "standard", tuple(labels))


def pauli_basis(normalized=False):
    """``sigma0..sigma3``; unnormalized unless ``normalized`` (then divided by sqrt 2)."""
    scale = 1.0 / np.sqrt(2.0) if normalized else 1.0
    return MatrixBasis(
        2,
        tuple(scale * s for s in PAULI),
        "pauli",
        tuple(f"sigma{j}" for j in range(4)),
    )


def tensor_power(basis, k):
    """All k-fold tensor words of ``basis`` in lexicographic order."""
    if k < 1:
        raise ValueError("k must be positive")
    elements, labels = [], []
    for word in itertools.product(range(len(basis)), repeat=k):
        m = np.ones((1, 1), dtype=np.complex128)
        for w in word:
            m = np.kron(m, basis.elements[w])
        elements.append(m)
        labels.append("(x)".join(basis.labels[w] for w in word))
    return MatrixBasis(basis.n ** k, tuple(elements), "tensor-product", tuple(labels))


def shift_and_clock(n):
    """The cyclic shift ``U e_j = e_{j+1}`` and phase ``V e_j = z^j e_j``."""
    z = np.exp(2j * np.pi / n)
    u = np.zeros((n, n), dtype=np.complex128)
    for j in range(n):
        u[(j + 1) % n, j] = 1.0
    v = np.diag(z ** np.arange(n))
    return u, v


def weyl_basis(n):
    """Discrete Weyl basis ``(1/sqrt n) U^a V^b`` in row-major ``(a, b)`` order."""
    if n < 1:
        raise ValueError("n must be positive")
    u, v = shift_and_clock(n)
    elements, labels = [], []
    for a in range(n):
        for b in range(n):
            m = np.linalg.matrix_power(u, a) @ np.linalg.matrix_power(v, b)
            elements.append(m / np.sqrt(n))
            labels.append(f"W({a},{b})")
    return MatrixBasis(n, tuple(elements), "weyl", tuple(labels))


def scaled_unit_basis(lam):
    """The basis ``{lam[i, j] E_ij}``; every ``lam[i, j]`` must be nonzero."""
    lam = as_cmatrix(lam, "lambda")
    if np.any(lam == 0):
        raise ZeroLambda("scaled_unit_basis needs all lambda_ij nonzero")
    n = lam.shape[0]
    elements = [lam[i, j] * unit(n, i, j) for i in range(n) for j in range(n)]
    labels = [f"l{i}{j}E{i}{j}" for i in range(n) for j in range(n)]
    return MatrixBasis(n, tuple(elements), "scaled-unit", tuple(labels))


def custom_basis(matrices, labels=None):
    matrices = [as_cmatrix(m, "basis element") for m in matrices]
    if not matrices:
        raise NotABasis("empty basis")
    n = matrices[0].shape[0]
    return MatrixBasis(n, tuple(matrices), "custom", labels)


def dual_basis(basis):
    """Solve ``tr(D_j B_k) = delta_jk`` for the density matrices ``D_j``.

    With ``b`` the ``(n^2, n^2)`` matrix whose row k is ``vec(B_k^t)``, the
    conditions read ``b vec(D_j) = e_j``; the columns of ``b^{-1}`` are the
    flattened densities.
    """
    n = basis.n
    bt = np.stack([b.T.reshape(-1) for b in basis.elements])
    try:
        d = np.linalg.solve(bt, np.eye(n * n, dtype=np.complex128))
    except np.linalg.LinAlgError as exc:
        raise NotABasis("singular pairing system") from exc
    densities = tuple(d[:, j].reshape(n, n).copy() for j in range(n * n))
    return DualBasis(basis, densities)


def gamma(basis, f_density):
    """``Gamma_B(f) = sum_j f(B_j) B_j`` for ``f(X) = tr(f_density X)``."""
    f_density = as_cmatrix(f_density, "f_density")
    if f_density.shape != (basis.n, basis.n):
        raise DimensionMismatch(f"density of shape {f_density.shape} for basis of M_{basis.n}")
    stack = basis.stacked()
    coeffs = np.einsum("ij,kji->k", f_density, stack)
    return np.tensordot(coeffs, stack, axes=1)


def builtin_bases(max_n=4):
    """Every built-in basis up to ``max_n`` (scaled-unit grids excluded)."""
    out = {}
    for n in range(1, max_n + 1):
        out[f"standard:{n}"] = standard_basis(n)
    for n in range(2, max_n + 1):
        out[f"weyl:{n}"] = weyl_basis(n)
    out["pauli"] = pauli_basis()
    out["pauli:normalized"] = pauli_basis(normalized=True)
    if max_n >= 4:
        out["pauli_tensor:2"] = tensor_power(pauli_basis(), 2)
    return out
