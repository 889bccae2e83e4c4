import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dualcert.bases import PAULI, weyl_basis
from dualcert.errors import DimensionMismatch, InvalidMatrix, NotHermitian
from dualcert.linalg import (
    as_cmatrix,
    herm_eig,
    hs_inner,
    is_psd,
    kron,
    partial_transpose,
    swap_factors,
    unit,
)

from conftest import OMEGA, SWAP


def complex_matrices(max_dim=4):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_dim))
        seed = draw(st.integers(0, 2**32 - 1))
        r = np.random.default_rng(seed)
        return r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))

    return build()


def random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return g + g.conj().T


def test_hs_inner_examples():
    assert hs_inner(unit(2, 0, 0), unit(2, 0, 0)) == 1
    # tr(sigma1 sigma2^*) computed by hand is 0
    assert hs_inner(PAULI[1], PAULI[2]) == 0
    w = weyl_basis(3)[1 * 3 + 2]
    assert hs_inner(w, w) == pytest.approx(1.0, abs=1e-14)


def test_hs_inner_sesquilinear(rng):
    a, b = rng.standard_normal((2, 3, 3)) + 1j * rng.standard_normal((2, 3, 3))
    z = 0.3 - 1.7j
    assert hs_inner(z * a, b) == pytest.approx(z * hs_inner(a, b))
    assert hs_inner(a, z * b) == pytest.approx(np.conj(z) * hs_inner(a, b))
    assert hs_inner(a, b) == pytest.approx(np.trace(a @ b.conj().T))


def test_hs_inner_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        hs_inner(np.eye(2), np.eye(3))


@given(complex_matrices())
@settings(max_examples=50, deadline=None)
def test_hs_inner_self_is_frobenius_squared(a):
    val = hs_inner(a, a)
    assert abs(val.imag) <= 1e-12 * (1 + abs(val))
    assert val.real == pytest.approx(np.linalg.norm(a) ** 2, rel=1e-12)


def test_kron_examples():
    e = kron(unit(2, 0, 0), unit(2, 0, 0))
    assert np.array_equal(e, unit(4, 0, 0))
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    assert np.array_equal(kron(PAULI[1], PAULI[1]), np.fliplr(np.eye(4)))


def test_kron_associative_and_adjoint(rng):
    # Gaussian-integer entries keep every product exact, so equality is bitwise
    a, b, c = (rng.integers(-9, 10, (2, 2)) + 1j * rng.integers(-9, 10, (2, 2)) for _ in range(3))
    assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))
    x, y = (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)) for _ in range(2))
    assert np.array_equal(kron(x, y).conj().T, kron(x.conj().T, y.conj().T))
    assert np.allclose(kron(kron(x, y), a), kron(x, kron(y, a)), rtol=1e-14)


def brute_pt(m, n, p, factor):
    out = np.zeros_like(m)
    for i in range(n):
        for j in range(n):
            blk = m[i * p:(i + 1) * p, j * p:(j + 1) * p]
            if factor == "first":
                out[j * p:(j + 1) * p, i * p:(i + 1) * p] = blk
            else:
                out[i * p:(i + 1) * p, j * p:(j + 1) * p] = blk.T
    return out


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2), (1, 4)])
@pytest.mark.parametrize("factor", ["first", "second"])
def test_partial_transpose_matches_blockwise_oracle(rng, n, p, factor):
    m = rng.standard_normal((n * p, n * p)) + 1j * rng.standard_normal((n * p, n * p))
    assert np.array_equal(partial_transpose(m, factor, (n, p)), brute_pt(m, n, p, factor))
    assert np.array_equal(partial_transpose(partial_transpose(m, factor, (n, p)), factor, (n, p)), m)


def test_partial_transpose_of_identity_choi_is_swap():
    assert np.array_equal(partial_transpose(np.outer(OMEGA, OMEGA), "second", (2, 2)), SWAP)


def test_partial_transpose_first_on_block_sum(rng):
    xs = rng.standard_normal((2, 2, 3, 3))
    m = sum(np.kron(unit(2, j, i), xs[i, j]) for i in range(2) for j in range(2))
    want = sum(np.kron(unit(2, i, j), xs[i, j]) for i in range(2) for j in range(2))
    assert np.array_equal(partial_transpose(m, "first", (2, 3)), want)


def test_partial_transpose_bad_dims():
    with pytest.raises(DimensionMismatch):
        partial_transpose(np.eye(6), "first", (2, 2))


def test_partial_transpose_keeps_separable_psd(rng):
    def rand_psd(d):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        return g @ g.conj().T

    for _ in range(20):
        m = sum(np.kron(rand_psd(2), rand_psd(3)) for _ in range(3))
        assert is_psd(partial_transpose(m, "second", (2, 3)))
        assert is_psd(partial_transpose(m, "first", (2, 3)))


def test_swap_factors_on_product(rng):
    a = rng.standard_normal((2, 2)) + 0j
    b = rng.standard_normal((3, 3)) + 0j
    assert np.array_equal(swap_factors(np.kron(a, b), (2, 3)), np.kron(b, a))


def test_herm_eig_examples():
    assert np.allclose(herm_eig(np.diag([3.0, 1.0])).values, [1, 3])
    assert np.allclose(herm_eig(SWAP).values, [-1, 1, 1, 1], atol=1e-14)
    assert np.allclose(herm_eig(np.outer(OMEGA, OMEGA)).values, [0, 0, 0, 2], atol=1e-14)


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_herm_eig_invariants(rng, n):
    m = random_hermitian(rng, n)
    eig = herm_eig(m)
    assert np.all(np.diff(eig.values) >= 0)
    assert np.abs(eig.vectors.conj().T @ eig.vectors - np.eye(n)).max() <= 1e-10
    assert np.linalg.norm(m - eig.reconstruct()) <= 1e-9 * (1 + np.linalg.norm(m))
    assert abs(eig.values.sum() - np.trace(m).real) <= 1e-9 * (1 + abs(np.trace(m)))


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        herm_eig(np.array([[0, 1], [0, 0]]))


def test_is_psd_examples():
    assert is_psd(np.eye(4))
    assert not is_psd(SWAP)
    assert is_psd(np.zeros((3, 3)))
    with pytest.raises(NotHermitian):
        is_psd(np.array([[1, 2], [0, 1]]))


def test_is_psd_tolerance_is_relative():
    assert is_psd(np.diag([1.0, -1e-12]))
    assert not is_psd(np.diag([1.0, -1e-6]))


def test_as_cmatrix_validation():
    with pytest.raises(InvalidMatrix):
        as_cmatrix(np.ones((2, 3)))
    with pytest.raises(InvalidMatrix):
        as_cmatrix(np.array([[np.nan]]))
