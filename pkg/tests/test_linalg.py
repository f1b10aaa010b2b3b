import numpy as np
import pytest

from ccshare.linalg import (
    DensityMatrix,
    NumericalValidityError,
    PureState,
    entropy_from_eigenvalues,
    hermitian_eigenvalues,
    partial_trace,
    reduce_pair,
    tensor_product,
    von_neumann_entropy,
)
from ccshare.sampling import SampleSeed, haar_random_pure
from ccshare.states import I2, SIGMA_X, SIGMA_Z, basis_product, ghz


def test_tensor_product_identities():
    assert np.allclose(tensor_product(I2, I2), np.eye(4))
    assert np.allclose(tensor_product(SIGMA_Z, SIGMA_Z), np.diag([1, -1, -1, 1]))


def test_tensor_product_x_z_hand_expansion():
    # Hand-expanded 4x4 Kronecker product: antidiagonal blocks +/- sigma_z.
    expected = np.zeros((4, 4), dtype=complex)
    expected[0:2, 2:4] = SIGMA_Z
    expected[2:4, 0:2] = SIGMA_Z
    assert np.allclose(tensor_product(SIGMA_X, SIGMA_Z), expected)


def test_partial_trace_ghz_pair():
    rho = ghz(3).projector()
    reduced = partial_trace(rho, {1, 2})
    expected = np.zeros((4, 4))
    expected[0, 0] = expected[3, 3] = 0.5
    assert np.allclose(reduced.matrix, expected, atol=1e-12)


def test_partial_trace_bell_marginal():
    bell = PureState(2, np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2))
    reduced = partial_trace(bell.projector(), {1})
    assert np.allclose(reduced.matrix, I2 / 2, atol=1e-12)


def test_partial_trace_preserves_trace():
    for i in range(5):
        psi = haar_random_pure(4, SampleSeed(40, i))
        for keep in ({1}, {2, 3}, {1, 4}, {1, 2, 3}):
            reduced = partial_trace(psi.projector(), keep)
            assert abs(np.trace(reduced.matrix).real - 1.0) < 1e-10


def test_partial_trace_invalid_index():
    rho = ghz(3).projector()
    with pytest.raises(ValueError):
        partial_trace(rho, {0})
    with pytest.raises(ValueError):
        partial_trace(rho, {4})
    with pytest.raises(ValueError):
        partial_trace(rho, set())


def test_reduce_pair_ghz4():
    reduced = reduce_pair(ghz(4), 1, 3)
    expected = np.zeros((4, 4))
    expected[0, 0] = expected[3, 3] = 0.5
    assert np.allclose(reduced.matrix, expected, atol=1e-12)


def test_reduce_pair_product_state():
    reduced = reduce_pair(basis_product("0101"), 1, 2)
    expected = np.zeros((4, 4))
    expected[1, 1] = 1.0  # |01><01|
    assert np.allclose(reduced.matrix, expected, atol=1e-12)


def test_reduce_pair_matches_dense_partial_trace():
    for i in range(10):
        psi = haar_random_pure(4, SampleSeed(41, i))
        dense = partial_trace(psi.projector(), {2, 4})
        fast = reduce_pair(psi, 2, 4)
        assert np.max(np.abs(dense.matrix - fast.matrix)) < 1e-12


def test_reduce_pair_rejects_equal_indices():
    with pytest.raises(ValueError):
        reduce_pair(ghz(3), 2, 2)


def test_hermitian_eigenvalues_diagonal():
    assert np.allclose(hermitian_eigenvalues(np.diag([0.75, 0.25])), [0.25, 0.75])


def test_hermitian_eigenvalues_projector():
    # (I + sigma_x)/2 is rank one: spectrum {0, 1}.
    eigs = hermitian_eigenvalues((I2 + SIGMA_X) / 2)
    assert np.allclose(eigs, [0.0, 1.0], atol=1e-12)


def test_hermitian_eigenvalue_sum_is_trace():
    rng = np.random.default_rng(1)
    for _ in range(5):
        g = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        h = (g + g.conj().T) / 2
        assert abs(hermitian_eigenvalues(h).sum() - np.trace(h).real) < 1e-9


def test_hermitian_eigenvalues_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_eigenvalues(np.array([[0, 1], [0, 0]], dtype=complex))
    with pytest.raises(ValueError):
        hermitian_eigenvalues(np.ones((2, 3)))


def test_entropy_values():
    half = DensityMatrix((2,), I2 / 2)
    assert von_neumann_entropy(half) == pytest.approx(1.0, abs=1e-12)
    pure = basis_product("00").projector()
    assert von_neumann_entropy(pure) == pytest.approx(0.0, abs=1e-12)
    mixed = DensityMatrix((2, 2), np.diag([0.5, 0.25, 0.125, 0.125]).astype(complex))
    # -sum lambda log2 lambda = 0.5 + 0.5 + 0.375 + 0.375 = 1.75
    assert von_neumann_entropy(mixed) == pytest.approx(1.75, abs=1e-12)


def test_entropy_rejects_negative_eigenvalues():
    with pytest.raises(NumericalValidityError):
        entropy_from_eigenvalues(np.array([1.1, -0.1]))


def test_entropy_unitary_invariance():
    rng = np.random.default_rng(2)
    for i in range(5):
        psi = haar_random_pure(3, SampleSeed(42, i))
        rho = partial_trace(psi.projector(), {1, 2})
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        q, r = np.linalg.qr(g)
        u = q * (np.diag(r) / np.abs(np.diag(r)))
        rotated = DensityMatrix(rho.dims, u @ rho.matrix @ u.conj().T)
        assert von_neumann_entropy(rho) == pytest.approx(
            von_neumann_entropy(rotated), abs=1e-9
        )


def test_schmidt_spectra_match_across_complementary_cuts():
    for i in range(5):
        psi = haar_random_pure(4, SampleSeed(43, i))
        rho = psi.projector()
        spec_a = np.linalg.eigvalsh(partial_trace(rho, {1}).matrix)
        spec_b = np.linalg.eigvalsh(partial_trace(rho, {2, 3, 4}).matrix)
        # Pad the qubit spectrum with zeros up to the 8-dim complement.
        padded = np.concatenate([np.zeros(6), spec_a])
        assert np.max(np.abs(np.sort(padded) - np.sort(spec_b))) < 1e-9


def test_density_matrix_validation():
    with pytest.raises(NumericalValidityError):
        DensityMatrix((2,), np.array([[1.0, 0.5], [0.0, 0.0]]))  # not Hermitian
    with pytest.raises(NumericalValidityError):
        DensityMatrix((2,), np.diag([0.9, 0.3]).astype(complex))  # trace != 1
    with pytest.raises(NumericalValidityError):
        DensityMatrix((2,), np.diag([1.5, -0.5]).astype(complex))  # not PSD


def test_pure_state_validation():
    with pytest.raises(NumericalValidityError):
        PureState(2, np.array([1, 1, 0, 0], dtype=complex))
    with pytest.raises(ValueError):
        PureState(1, np.array([1, 0], dtype=complex))
