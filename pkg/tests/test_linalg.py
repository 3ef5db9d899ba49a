"""Tests for the dense matrix kernel."""

import numpy as np
import pytest

from src.exceptions import (
    InvalidDimensionError,
    InvalidRankError,
    InvariantError,
    NotHermitianError,
    NotSquareError,
)
from src.linalg import (
    commutator,
    eig_hermitian,
    ginibre,
    haar_random_unitary,
    operator_norm,
    random_density,
    random_hermitian,
    sign_operator,
    trace_norm,
)
from src.quantum import PAULI_X, PAULI_Z


def test_eig_hermitian_diagonal():
    """Eigenvalues come back in ascending order."""
    system = eig_hermitian(np.diag([3.0, -1.0]))
    np.testing.assert_allclose(system.eigenvalues, [-1.0, 3.0])


def test_eig_hermitian_identity_gives_unitary_vectors():
    system = eig_hermitian(np.eye(2))
    np.testing.assert_allclose(system.eigenvalues, [1.0, 1.0])
    v = system.eigenvectors
    np.testing.assert_allclose(v.conj().T @ v, np.eye(2), atol=1e-12)


def test_eig_hermitian_pauli_x():
    """Eigenvectors of sigma_x are (|0> -+ |1>)/sqrt 2 up to phase."""
    system = eig_hermitian(PAULI_X)
    np.testing.assert_allclose(system.eigenvalues, [-1.0, 1.0], atol=1e-12)
    minus, plus = system.eigenvectors[:, 0], system.eigenvectors[:, 1]
    assert abs(np.vdot(np.array([1, -1]) / np.sqrt(2), minus)) == pytest.approx(1.0)
    assert abs(np.vdot(np.array([1, 1]) / np.sqrt(2), plus)) == pytest.approx(1.0)


@pytest.mark.parametrize("d", [2, 3, 5, 8])
def test_eig_hermitian_reconstructs(rng, d):
    for _ in range(25):
        h = random_hermitian(d, rng)
        system = eig_hermitian(h)
        assert np.max(np.abs(system.reconstruct() - h)) < 1e-10


def test_eig_hermitian_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        eig_hermitian(np.array([[0, 1], [0, 0]]))


def test_eig_hermitian_rejects_non_square():
    with pytest.raises(NotSquareError):
        eig_hermitian(np.zeros((2, 3)))


def test_non_finite_entries_rejected():
    with pytest.raises(InvariantError):
        eig_hermitian(np.array([[np.nan, 0], [0, 1]]))


def test_trace_norm_examples():
    assert trace_norm(np.zeros((3, 3))) == 0.0
    assert trace_norm(np.diag([2.0, -5.0])) == pytest.approx(7.0)


def test_trace_norm_of_commutator_with_plus_state():
    """||[sigma_z, |+><+|]||_1 = |a0 - a1| |<0|rho|1>| * 2 = 2."""
    plus = 0.5 * np.ones((2, 2))
    assert trace_norm(commutator(PAULI_Z, plus)) == pytest.approx(2.0)


def test_operator_norm_examples():
    assert operator_norm(np.eye(4)) == pytest.approx(1.0)
    assert operator_norm(np.diag([3.0, -4.0])) == pytest.approx(4.0)
    assert operator_norm(PAULI_X) == pytest.approx(1.0)


def test_sign_operator_is_hermitian_unitary(rng):
    h = random_hermitian(4, rng)
    s = sign_operator(h)
    np.testing.assert_allclose(s, s.conj().T, atol=1e-12)
    np.testing.assert_allclose(s @ s, np.eye(4), atol=1e-10)
    # Tr{S H} = ||H||_1 for the sign operator
    assert np.real(np.trace(s @ h)) == pytest.approx(trace_norm(h))


def test_haar_random_unitary_is_deterministic_per_seed():
    np.testing.assert_array_equal(haar_random_unitary(3, 7), haar_random_unitary(3, 7))


def test_haar_random_unitary_d1_is_a_phase():
    u = haar_random_unitary(1, 3)
    assert u.shape == (1, 1)
    assert abs(u[0, 0]) == pytest.approx(1.0)


def test_haar_random_unitary_columns_are_normalized(rng):
    for _ in range(100):
        u = haar_random_unitary(4, rng)
        np.testing.assert_allclose(np.linalg.norm(u, axis=0), 1.0, atol=1e-12)


def test_haar_random_unitary_rejects_bad_dimension():
    with pytest.raises(InvalidDimensionError):
        haar_random_unitary(0, 1)


def test_random_density_pure_qubit():
    rho = random_density(2, 1, 5)
    np.testing.assert_allclose(np.linalg.eigvalsh(rho), [0.0, 1.0], atol=1e-12)


def test_random_density_full_rank():
    rho = random_density(4, 4, 5)
    assert np.trace(rho).real == pytest.approx(1.0)
    assert np.min(np.linalg.eigvalsh(rho)) > 0.0


def test_random_density_fixed_spectrum_purity():
    """Purity of a qubit with eigenvalues (p, 1 - p) is (1 + r^2)/2 with r = |2p - 1|."""
    p = 0.8
    rho = random_density(2, 2, 9, eigenvalues=[p, 1 - p])
    r = abs(2 * p - 1)
    assert np.real(np.trace(rho @ rho)) == pytest.approx(0.5 * (1 + r * r))


@pytest.mark.parametrize("rank", [0, 3])
def test_random_density_rejects_bad_rank(rank):
    with pytest.raises(InvalidRankError):
        random_density(2, rank, 1)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_eig_hermitian_reconstructs_many(d):
    rng = np.random.default_rng(100 + d)
    for _ in range(200):
        x = ginibre(d, d, rng)
        h = 0.5 * (x + x.conj().T)
        system = eig_hermitian(h)
        assert np.max(np.abs(system.reconstruct() - h)) < 1e-10
        v = system.eigenvectors
        assert np.max(np.abs(v.conj().T @ v - np.eye(d))) < 1e-10


@pytest.mark.parametrize("d", [2, 3, 4])
def test_trace_norm_is_unitarily_invariant(d):
    rng = np.random.default_rng(200 + d)
    for _ in range(200):
        x = ginibre(d, d, rng)
        u = haar_random_unitary(d, rng)
        assert trace_norm(u @ x @ u.conj().T) == pytest.approx(trace_norm(x), rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_trace_norm_dominates_trace(d):
    rng = np.random.default_rng(300 + d)
    for _ in range(200):
        x = ginibre(d, d, rng)
        assert trace_norm(x) >= abs(np.trace(x)) - 1e-12


@pytest.mark.parametrize("d", [2, 3, 4])
def test_operator_norm_bounded_by_trace_norm(d):
    rng = np.random.default_rng(400 + d)
    for _ in range(200):
        h = random_hermitian(d, rng)
        assert operator_norm(h) <= trace_norm(h) + 1e-12
        assert trace_norm(h) <= d * operator_norm(h) + 1e-12
