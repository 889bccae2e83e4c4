"""Entanglement witnesses ``sum_i Phi(B_i) (x) B_i`` and their sampled validation."""
from dataclasses import dataclass

import numpy as np

from .choi import apply_map, generalized_choi
from .classify import COMPLETE, COPOSITIVE, classify_duality
from .errors import DimensionMismatch, NotHermitian, WrongBasisKind
from .linalg import TOL_PSD, check_hermitian, herm_eig, is_psd

PRNG = "numpy.PCG64"
DETECTION_THRESHOLD = -1e-6
REQUIREMENTS = {"case1": COMPLETE, "case3": COPOSITIVE}


@dataclass(frozen=True)
class WitnessReport:
    witness: np.ndarray
    min_product_pairing: float
    num_samples: int
    seed: int
    detected_state: np.ndarray = None
    detected_pairing: float = None
    basis_kind_used: str = None
    prng: str = PRNG


def build_witness(basis, m, require="case1", verdict=None):
    """``sum_i m(B_i) (x) B_i`` after checking the basis has the required kind.

    ``require="case1"`` needs a complete order isomorphism (the witness is
    then PSD exactly when ``m`` is CP); ``"case3"`` needs a co-positive one.
    A precomputed ``verdict`` skips reclassification.
    """
    if require not in REQUIREMENTS:
        raise ValueError(f"require must be one of {sorted(REQUIREMENTS)}")
    if m.n != basis.n:
        raise DimensionMismatch(f"map on M_{m.n} with a basis of M_{basis.n}")
    if verdict is None:
        verdict = classify_duality(basis)
    if verdict.kind != REQUIREMENTS[require]:
        raise WrongBasisKind(
            f"{require} needs a {REQUIREMENTS[require]} basis, got {verdict.kind}", verdict
        )
    return generalized_choi(m, basis, transposed=False)


def haar_vectors(rng, count, dim):
    z = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def product_pairings(w, xs, ys):
    """``<x (x) y, W (x (x) y)>`` (real part) for each row pair of ``xs``, ``ys``."""
    z = np.einsum("sa,sb->sab", xs, ys).reshape(len(xs), -1)
    return np.einsum("si,ij,sj->s", z.conj(), w, z).real


def validate_witness(w, n, p, samples=1000, seed=0, basis_kind_used=None):
    """Sample Haar product states and look for a detected (entangled) state.

    ``W`` acts on ``C^p (x) C^n``. The detected state, if any, is the projector
    onto the eigenvector of the most negative eigenvalue of ``W``.
    """
    w = check_hermitian(w)
    if w.shape[0] != n * p:
        raise DimensionMismatch(f"witness of shape {w.shape} for n={n}, p={p}")
    rng = np.random.Generator(np.random.PCG64(seed))
    xs = haar_vectors(rng, samples, p)
    ys = haar_vectors(rng, samples, n)
    pairs = product_pairings(w, xs, ys)
    min_pair = float(pairs.min()) if samples > 0 else float("nan")

    eig = herm_eig(w)
    detected = pairing = None
    if eig.values[0] < DETECTION_THRESHOLD:
        v = eig.vectors[:, 0]
        detected = np.outer(v, v.conj())
        pairing = float(np.vdot(w, detected).real)  # tr(W^* A)
    return WitnessReport(
        witness=w,
        min_product_pairing=min_pair,
        num_samples=int(samples),
        seed=int(seed),
        detected_state=detected,
        detected_pairing=pairing,
        basis_kind_used=basis_kind_used,
    )


def screen_positive_map(m, trials=200, seed=0, tol=TOL_PSD):
    """One-sided positivity screen on random pure states.

    Never rejects a positive map; may accept a non-positive one.
    """
    if m.n != m.p:
        raise DimensionMismatch("screen_positive_map needs p == n")
    rng = np.random.Generator(np.random.PCG64(seed))
    for x in haar_vectors(rng, trials, m.n):
        out = apply_map(m, np.outer(x, x.conj()))
        try:
            if not is_psd(out, tol):
                return False
        except NotHermitian:
            return False
    return True

