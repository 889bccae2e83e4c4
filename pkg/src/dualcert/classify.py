"""Order-theoretic type of the duality map of a basis.

An order isomorphism of M_n is either ``X -> C X C^*`` or its composition
with the transpose, for some invertible C. So the duality map of a basis is
decided by testing whether ``M_B`` (or ``t o M_B``) has a rank-one PSD Choi
matrix, and reading C off its top eigenvector.
"""
from dataclasses import dataclass, field

import numpy as np

from .choi import choi_matrix, MapSpec
from .errors import ZeroLambda
from .linalg import TOL_RANK, as_cmatrix, fro
from .superop import m_map

COMPLETE = "CompleteOrderIso"
COPOSITIVE = "CoPositiveOrderIso"
NOT_ORDER_ISO = "NotOrderIso"


@dataclass(frozen=True)
class DualityVerdict:
    kind: str
    C: np.ndarray = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def is_order_iso(self):
        return self.kind != NOT_ORDER_ISO

    def action(self, x):
        """The recovered map ``X -> C X C^*`` (transposed for the co-positive kind)."""
        if self.C is None:
            raise ValueError("NotOrderIso verdict carries no C")
        y = self.C @ x @ self.C.conj().T
        return y.T if self.kind == COPOSITIVE else y


@dataclass(frozen=True)
class RankOneFit:
    """Distance of a matrix from the rank-one PSD cone boundary ray.

    ``residual`` is ``||M - lam v v^*||_F / (1 + ||M||_F)`` with ``lam`` the
    top eigenvalue of the Hermitian part, clipped at zero; the anti-Hermitian
    part of ``M`` counts fully towards it.
    """

    hermitian_defect: float
    min_eig: float
    top_eig: float
    top_vec: np.ndarray
    residual: float
    smallest: tuple
    scale: float

    def passes(self, tol):
        bound = tol * self.scale
        return (
            self.hermitian_defect <= bound
            and self.min_eig >= -bound
            and self.residual <= tol
        )


def rank_one_fit(m):
    m = np.asarray(m, dtype=np.complex128)
    norm = fro(m)
    herm = 0.5 * (m + m.conj().T)
    w, v = np.linalg.eigh(herm)
    lam = max(w[-1], 0.0)
    top = v[:, -1]
    dist = fro(m - lam * np.outer(top, top.conj()))
    return RankOneFit(
        hermitian_defect=fro(m - m.conj().T),
        min_eig=float(w[0]),
        top_eig=float(w[-1]),
        top_vec=top,
        residual=dist / (1.0 + norm),
        smallest=tuple(float(x) for x in w[:4]),
        scale=1.0 + norm,
    )


def _phase_normalize(c):
    flat = c.reshape(-1)
    k = int(np.argmax(np.abs(flat)))  # argmax returns the first maximum
    if flat[k] == 0:
        return c
    return c * (abs(flat[k]) / flat[k])


def _factor_from_fit(fit, n):
    vec = np.sqrt(fit.top_eig) * fit.top_vec
    # Choi(X -> C X C^*) = v v^* with v[i * n + k] = C[k, i]
    c = vec.reshape(n, n).T
    return _phase_normalize(np.ascontiguousarray(c))


def rank_one_psd_factor(m, tol=TOL_RANK):
    """C with ``M = Choi(X -> C X C^*)``, or None when M is not rank-one PSD."""
    m = as_cmatrix(m)
    n = int(round(np.sqrt(m.shape[0])))
    if n * n != m.shape[0]:
        raise ValueError("rank_one_psd_factor needs a matrix on M_n (x) M_n")
    fit = rank_one_fit(m)
    if not fit.passes(tol):
        return None
    return _factor_from_fit(fit, n)


def _superop_as_map(s):
    return MapSpec(s.n, s.n, superop=s.mat)


def _transposed_choi(k, n):
    # Choi(t o S) transposes each output block in place.
    return np.ascontiguousarray(k.reshape(n, n, n, n).transpose(0, 3, 2, 1)).reshape(n * n, n * n)


def classify_duality(basis, tol=TOL_RANK):
    """Decide whether the duality map of ``basis`` is a (co-positive) order isomorphism."""
    n = basis.n
    s = m_map(basis)
    k1 = choi_matrix(_superop_as_map(s))
    k2 = _transposed_choi(k1, n)
    fit1, fit2 = rank_one_fit(k1), rank_one_fit(k2)
    ok1, ok2 = fit1.passes(tol), fit2.passes(tol)
    if ok1 and ok2 and n > 1:
        raise AssertionError("both factorizations passed for n > 1; tolerance too loose")
    diagnostics = {
        "k1_smallest_eigs": list(fit1.smallest),
        "k2_smallest_eigs": list(fit2.smallest),
        "k1_rank_one_residual": fit1.residual,
        "k2_rank_one_residual": fit2.residual,
        "k1_hermitian_defect": fit1.hermitian_defect,
        "k2_hermitian_defect": fit2.hermitian_defect,
    }
    if ok1:
        return _verdict(COMPLETE, _factor_from_fit(fit1, n), s, diagnostics)
    if ok2:
        return _verdict(COPOSITIVE, _factor_from_fit(fit2, n), s, diagnostics)
    return DualityVerdict(NOT_ORDER_ISO, None, diagnostics)


def _verdict(kind, c, s, diagnostics):
    verdict = DualityVerdict(kind, c, diagnostics)
    n = s.n
    worst = 0.0
    for k in range(n * n):
        e = np.zeros(n * n, dtype=np.complex128)
        e[k] = 1.0
        got = (s.mat @ e).reshape(n, n)
        worst = max(worst, fro(got - verdict.action(e.reshape(n, n))))
    diagnostics["action_residual"] = worst
    sv = np.linalg.svd(c, compute_uv=False)
    diagnostics["C_condition"] = float(sv[0] / sv[-1]) if sv[-1] > 0 else float("inf")
    return verdict


def classify_scaled_unit(lam, tol=TOL_RANK):
    """Closed form for ``{lam_ij E_ij}``: order iso iff ``(lam_ij^2)`` is rank-one PSD.

    The co-positive case never occurs for these bases.
    """
    lam = as_cmatrix(lam, "lambda")
    if np.any(lam == 0):
        raise ZeroLambda("classify_scaled_unit needs all lambda_ij nonzero")
    sq = lam * lam
    fit = rank_one_fit(sq)
    diagnostics = {
        "lambda_sq_smallest_eigs": list(fit.smallest),
        "lambda_sq_rank_one_residual": fit.residual,
        "lambda_sq_hermitian_defect": fit.hermitian_defect,
    }
    if not fit.passes(tol):
        return DualityVerdict(NOT_ORDER_ISO, None, diagnostics)
    alpha = np.sqrt(fit.top_eig) * fit.top_vec
    c = _phase_normalize(np.diag(alpha))
    return DualityVerdict(COMPLETE, c, diagnostics)

