"""Seeded random test objects: maps, bases, unitaries."""
import numpy as np

from .bases import MatrixBasis, standard_basis
from .choi import choi_matrix, compose_output_transpose, kraus_map, map_from_choi
from .linalg import fro, hermitian_eigvals, unit


def rng_from(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def ginibre(rng, rows, cols=None):
    cols = rows if cols is None else cols
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_unitary(rng, n):
    q, r = np.linalg.qr(ginibre(rng, n))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_invertible(rng, n, max_cond=50.0):
    while True:
        c = ginibre(rng, n)
        s = np.linalg.svd(c, compute_uv=False)
        if s[0] / s[-1] < max_cond:
            return c


def random_kraus_map(rng, n, p, num_ops=None):
    num_ops = int(rng.integers(1, 4)) if num_ops is None else num_ops
    return kraus_map([ginibre(rng, p, n) for _ in range(num_ops)])


def random_noncp_map(rng, n, p, margin=0.05):
    """A Hermiticity-preserving map whose Choi matrix has a clearly negative eigenvalue.

    Alternates between a random Hermitian Choi matrix and ``t o Phi_K`` for a
    random full-rank single Kraus operator.
    """
    while True:
        if rng.random() < 0.5:
            g = ginibre(rng, n * p)
            m = map_from_choi(g + g.conj().T, n, p)
        else:
            m = compose_output_transpose(kraus_map([ginibre(rng, p, n)]))
        c = choi_matrix(m)
        if hermitian_eigvals(c)[0] < -margin * (1.0 + fro(c)):
            return m


def random_onb(rng, n):
    """Orthonormal basis of M_n from a QR-orthonormalized Ginibre set."""
    q = random_unitary(rng, n * n)
    return MatrixBasis(n, tuple(q[:, k].reshape(n, n) for k in range(n * n)), "custom")


def conjugated_basis(basis, c, provenance="custom"):
    """``{C B_k C^*}``."""
    return MatrixBasis(
        basis.n,
        tuple(c @ b @ c.conj().T for b in basis.elements),
        provenance,
        basis.labels,
    )


def symmetric_antisymmetric_basis(n):
    """``E_ii``, ``(E_ij + E_ji)/sqrt 2`` and ``i (E_ij - E_ji)/sqrt 2`` for i < j.

    Its change-of-basis matrix C satisfies ``C C^T = t``, so its duality map
    is a co-positive order isomorphism for every n.
    """
    elements, labels = [], []
    for i in range(n):
        elements.append(unit(n, i, i))
        labels.append(f"D{i}")
    for i in range(n):
        for j in range(i + 1, n):
            elements.append((unit(n, i, j) + unit(n, j, i)) / np.sqrt(2))
            labels.append(f"S{i}{j}")
            elements.append(1j * (unit(n, i, j) - unit(n, j, i)) / np.sqrt(2))
            labels.append(f"A{i}{j}")
    return MatrixBasis(n, tuple(elements), "custom", tuple(labels))


def random_rank_one_lambda(rng, n, min_modulus=0.3):
    """``lam`` with ``lam_ij^2 = alpha_i conj(alpha_j)`` for a random nonzero ``alpha``."""
    radius = rng.uniform(min_modulus, 2.0, n)
    alpha = radius * np.exp(2j * np.pi * rng.random(n))
    sq = np.outer(alpha, alpha.conj())
    signs = rng.choice([-1.0, 1.0], size=(n, n))
    return signs * np.sqrt(sq), alpha


def random_matrix_unit_system(rng, n):
    return conjugated_basis(standard_basis(n), random_unitary(rng, n))
