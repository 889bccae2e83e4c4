import itertools

import numpy as np
import pytest

from dualcert.bases import (
    custom_basis,
    dual_basis,
    gamma,
    gram,
    pauli_basis,
    scaled_unit_basis,
    shift_and_clock,
    standard_basis,
    tensor_power,
    weyl_basis,
)
from dualcert.errors import DimensionMismatch, NotABasis, ZeroLambda
from dualcert.linalg import hs_inner, unit
from dualcert.randgen import random_onb


def test_pauli_elements():
    b = pauli_basis()
    assert np.array_equal(b[2], [[0, -1j], [1j, 0]])
    assert b.labels == ("sigma0", "sigma1", "sigma2", "sigma3")
    assert np.allclose(pauli_basis(normalized=True)[3], np.diag([1, -1]) / np.sqrt(2))


def test_weyl_two_elements():
    w = weyl_basis(2)
    s = 1 / np.sqrt(2)
    want = [np.eye(2), np.diag([1, -1]), [[0, 1], [1, 0]], [[0, -1], [1, 0]]]
    # row-major (a, b): I, V, U, UV
    for got, m in zip(w.elements, want):
        assert np.allclose(got, s * np.asarray(m), atol=1e-15)


def test_gram_examples():
    assert np.array_equal(gram(standard_basis(2)), np.eye(4))
    assert np.abs(gram(weyl_basis(3)) - np.eye(9)).max() <= 1e-12
    assert np.allclose(gram(pauli_basis()), 2 * np.eye(4))
    assert np.array_equal(gram(scaled_unit_basis(np.ones((3, 3)))), np.eye(9))


def test_gram_entry_convention(rng):
    b = random_onb(rng, 2)
    skew = scaled_unit_basis(np.array([[1, 2], [3j, 4]]))
    for basis in (b, skew):
        g = gram(basis)
        for j, k in itertools.product(range(4), repeat=2):
            assert g[j, k] == pytest.approx(hs_inner(basis[k], basis[j]))


def test_tensor_power():
    tp = tensor_power(pauli_basis(), 2)
    assert len(tp) == 16 and tp.n == 4
    assert np.allclose(gram(tp), 4 * np.eye(16))
    assert np.array_equal(tp[1 * 4 + 3], np.kron(pauli_basis()[1], pauli_basis()[3]))
    assert tp.labels[7] == "sigma1(x)sigma3"
    assert np.allclose(gram(tensor_power(pauli_basis(), 3)), 8 * np.eye(64))


@pytest.mark.parametrize("n", range(1, 7))
def test_weyl_expansion_identity(n):
    u, v = shift_and_clock(n)
    z = np.exp(2j * np.pi / n)
    for a, b in itertools.product(range(n), repeat=2):
        uv = np.linalg.matrix_power(u, a) @ np.linalg.matrix_power(v, b)
        want = sum(z ** (b * j) * unit(n, (j + a) % n, j) for j in range(n))
        assert np.abs(uv - want).max() <= 1e-12


def test_scaled_unit_rejects_zero():
    with pytest.raises(ZeroLambda):
        scaled_unit_basis(np.array([[1, 0], [1, 1]]))


def test_custom_basis_validation():
    with pytest.raises(NotABasis):
        custom_basis([np.eye(2)] * 4)
    with pytest.raises(NotABasis):
        custom_basis([np.eye(2)] * 3)


def test_dual_standard_is_transpose_units():
    dual = dual_basis(standard_basis(3))
    for k, d in enumerate(dual.densities):
        i, j = divmod(k, 3)
        assert np.allclose(d, unit(3, j, i))


def test_dual_orthonormal_is_adjoint(rng):
    for b in (random_onb(rng, 2), random_onb(rng, 3), weyl_basis(4)):
        dual = dual_basis(b)
        for bj, dj in zip(b.elements, dual.densities):
            assert np.abs(dj - bj.conj().T).max() <= 1e-9


def test_dual_pauli_is_half():
    dual = dual_basis(pauli_basis())
    for s, d in zip(pauli_basis().elements, dual.densities):
        assert np.allclose(d, s / 2)


@pytest.mark.parametrize("basis", [pauli_basis(), weyl_basis(3), tensor_power(pauli_basis(), 2),
                                   scaled_unit_basis(np.array([[1, -2j], [0.5, 3]]))])
def test_dual_pairing_and_gamma_round_trip(basis):
    dual = dual_basis(basis)
    for j, d in enumerate(dual.densities):
        for k, b in enumerate(basis.elements):
            assert abs(np.trace(d @ b) - (j == k)) <= 1e-9
        assert np.abs(gamma(basis, d) - basis[j]).max() <= 1e-9


def test_gamma_examples():
    for i, j in itertools.product(range(3), repeat=2):
        assert np.allclose(gamma(standard_basis(3), unit(3, j, i)), unit(3, i, j))
    assert np.allclose(gamma(pauli_basis(), np.eye(2) / 2), np.eye(2))
    with pytest.raises(DimensionMismatch):
        gamma(pauli_basis(), np.eye(3))


def test_permuted_keeps_labels():
    b = pauli_basis().permuted([3, 2, 1, 0])
    assert b.labels[0] == "sigma3"
    assert np.array_equal(b[0], np.diag([1, -1]))
