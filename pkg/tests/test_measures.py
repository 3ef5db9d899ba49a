"""Tests for the fixed-input measures and the pointwise lower bounds."""

import numpy as np
import pytest

from src.exceptions import DimensionMismatchError, ZeroOperatorError
from src.linalg import haar_random_unitary, random_density
from src.measures import (
    MeasureKind,
    commutator_bound,
    disturbance_term,
    imag_mod_term,
    l1_coherence,
    mse_sq_term,
    ncl,
    nre,
    robertson_bound,
    rs_bound,
    rs_root,
    trace_norm_asymmetry,
)
from src.quantum import (
    PAULI_Y,
    PAULI_Z,
    DensityOperator,
    Observable,
    PvmBasis,
    johansen_decomposition,
    kd_distribution,
)


def _random_triple(rng, d):
    rho = DensityOperator(random_density(d, int(rng.integers(1, d + 1)), rng))
    return rho, PvmBasis(haar_random_unitary(d, rng)), PvmBasis(haar_random_unitary(d, rng))


def _random_observable(rng, basis):
    return Observable(basis, rng.uniform(-1.0, 1.0, basis.dim))


def test_commuting_case_has_no_nonclassicality(zero_state, z_basis):
    dist = kd_distribution(zero_state, z_basis, z_basis)
    assert nre(dist).value == 0.0
    assert ncl(dist).value == pytest.approx(0.0, abs=1e-15)
    assert nre(dist).kind is MeasureKind.NRE


def test_plus_state_z_x(plus_state, z_basis, x_basis):
    """Real table (1/2, 0; 1/2, 0) but a maximal disturbance."""
    dist = kd_distribution(plus_state, z_basis, x_basis)
    assert nre(dist).value == pytest.approx(0.0, abs=1e-15)
    assert ncl(dist).value == pytest.approx(0.0, abs=1e-15)
    assert disturbance_term(plus_state, z_basis, x_basis).value == pytest.approx(2.0)
    assert imag_mod_term(plus_state, z_basis, x_basis).value == pytest.approx(0.0, abs=1e-12)


def test_plus_state_z_y(plus_state, z_basis, y_basis):
    dist = kd_distribution(plus_state, z_basis, y_basis)
    np.testing.assert_allclose(np.abs(dist.table), np.full((2, 2), np.sqrt(2) / 4), atol=1e-15)
    assert nre(dist).value == pytest.approx(1.0)
    assert ncl(dist).value == pytest.approx(np.sqrt(2) - 1)
    assert mse_sq_term(plus_state, z_basis, y_basis).value == pytest.approx(0.5)
    assert imag_mod_term(plus_state, z_basis, y_basis).value == pytest.approx(2.0)


def test_psi_state_nre(psi_state, z_basis, x_basis):
    """Every entry has |Im| = sqrt(2)/8, so NRe = sqrt(2)/2."""
    assert nre(kd_distribution(psi_state, z_basis, x_basis)).value == pytest.approx(np.sqrt(2) / 2)


def test_l1_coherence(plus_state, zero_state, z_basis, x_basis):
    assert l1_coherence(plus_state, z_basis).value == pytest.approx(1.0)
    assert l1_coherence(plus_state, x_basis).value == pytest.approx(0.0, abs=1e-15)
    assert l1_coherence(zero_state, z_basis).value == 0.0
    assert l1_coherence(DensityOperator.maximally_mixed(3), PvmBasis(haar_random_unitary(3, 4))).value == pytest.approx(
        0.0, abs=1e-12
    )


def test_trace_norm_asymmetry(plus_state, z_basis):
    sigma_z = Observable(z_basis, [1.0, -1.0])
    assert trace_norm_asymmetry(sigma_z, plus_state).value == pytest.approx(1.0)
    # 3 sigma_z normalizes back to sigma_z
    assert trace_norm_asymmetry(sigma_z.affine(3.0), plus_state, normalized=True).value == pytest.approx(1.0)
    assert trace_norm_asymmetry(sigma_z.affine(3.0), plus_state).value == pytest.approx(3.0)


def test_robertson_and_commutator_bounds(plus_state, z_basis):
    sigma_z = Observable(z_basis, [1.0, -1.0])
    sigma_y = Observable.from_matrix(PAULI_Y)
    assert robertson_bound(sigma_z, sigma_y, plus_state).value == pytest.approx(1.0)
    assert commutator_bound(sigma_z, sigma_y, plus_state).value == pytest.approx(2.0)


def test_robertson_bound_is_scale_invariant(plus_state, z_basis):
    sigma_z = Observable(z_basis, [1.0, -1.0])
    sigma_y = Observable.from_matrix(PAULI_Y)
    scaled = robertson_bound(sigma_z.affine(5.0), sigma_y.affine(0.25), plus_state).value
    assert scaled == pytest.approx(robertson_bound(sigma_z, sigma_y, plus_state).value)


def test_robertson_bound_rejects_zero_operator(plus_state, z_basis):
    with pytest.raises(ZeroOperatorError):
        robertson_bound(Observable(z_basis, [0.0, 0.0]), Observable.from_matrix(PAULI_Z), plus_state)


def test_rs_bound_same_observable_eigenstate(zero_state, z_basis):
    sigma_z = Observable(z_basis, [1.0, -1.0])
    assert rs_root(sigma_z, sigma_z, zero_state).value == pytest.approx(0.0, abs=1e-15)
    assert rs_bound(sigma_z, sigma_z, zero_state).value == pytest.approx(-1.0)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_rs_root_never_exceeds_two(rng, d):
    for _ in range(100):
        rho, basis_a, basis_b = _random_triple(rng, d)
        a, b = _random_observable(rng, basis_a), _random_observable(rng, basis_b)
        assert rs_root(a, b, rho).value <= 2.0 + 1e-9
        assert rs_bound(a, b, rho).value <= 1e-9


@pytest.mark.parametrize("d", [2, 3, 4])
def test_nre_dominates_robertson_bound(rng, d):
    """NRe of the KD table of the two eigenbases bounds the normalized commutator term."""
    for _ in range(100):
        rho, basis_a, basis_b = _random_triple(rng, d)
        a, b = _random_observable(rng, basis_a), _random_observable(rng, basis_b)
        bound = robertson_bound(a, b, rho).value
        assert nre(kd_distribution(rho, basis_a, basis_b)).value >= bound - 1e-10
        assert commutator_bound(a, b, rho).value == pytest.approx(2.0 * bound, abs=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_mse_term_bounds_nre(rng, d):
    """Cauchy-Schwarz over the d^2 table entries, whose weights p_b sum to d."""
    for _ in range(100):
        rho, basis_a, basis_b = _random_triple(rng, d)
        value = nre(kd_distribution(rho, basis_a, basis_b)).value
        assert d * mse_sq_term(rho, basis_a, basis_b).value >= value**2 - 1e-10


def test_mse_term_skips_unpopulated_outcomes(zero_state, z_basis):
    value = mse_sq_term(zero_state, z_basis, z_basis).value
    assert value == 0.0
    assert np.isfinite(value)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_terms_match_decomposition(rng, d):
    """The disturbance and imaginary summands are the 1-norms of the two modification terms."""
    for _ in range(50):
        rho, basis_a, basis_b = _random_triple(rng, d)
        terms = johansen_decomposition(rho, basis_a, basis_b)
        assert disturbance_term(rho, basis_a, basis_b).value == pytest.approx(np.sum(np.abs(terms.real_mod)), abs=1e-10)
        assert imag_mod_term(rho, basis_a, basis_b).value == pytest.approx(np.sum(np.abs(terms.imag_mod)), abs=1e-10)
        nre_value = nre(kd_distribution(rho, basis_a, basis_b)).value
        assert imag_mod_term(rho, basis_a, basis_b).value == pytest.approx(2.0 * nre_value, abs=1e-12)


def test_measures_reject_dimension_mismatch(plus_state):
    with pytest.raises(DimensionMismatchError):
        l1_coherence(plus_state, PvmBasis.computational(3))
    with pytest.raises(DimensionMismatchError):
        mse_sq_term(plus_state, PvmBasis.computational(2), PvmBasis.computational(3))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_rs_bound_is_affine_invariant(rng, d):
    """``A -> c A + c' I`` leaves the shift-normalized operators unchanged up to sign."""
    for _ in range(50):
        rho, basis_a, basis_b = _random_triple(rng, d)
        a, b = _random_observable(rng, basis_a), _random_observable(rng, basis_b)
        reference = rs_bound(a, b, rho).value
        for scale, shift in [(3.0, 0.0), (0.2, -1.5), (-2.0, 0.7), (-0.5, 4.0)]:
            assert rs_bound(a.affine(scale, shift), b, rho).value == pytest.approx(reference, abs=1e-9)
            assert rs_bound(a, b.affine(scale, shift), rho).value == pytest.approx(reference, abs=1e-9)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_ncl_is_never_negative(rng, d):
    for _ in range(200):
        rho, basis_a, basis_b = _random_triple(rng, d)
        assert ncl(kd_distribution(rho, basis_a, basis_b)).value >= -1e-12


def test_bounds_ignore_gauge_inside_degenerate_eigenspace(rng):
    """Rotating eigenvectors within a degenerate cluster keeps the projectors and every bound."""
    for _ in range(50):
        rho, basis_a, basis_b = _random_triple(rng, 3)
        a = Observable(basis_a, [1.0, 1.0, -1.0])
        b = _random_observable(rng, basis_b)
        gauge = np.eye(3, dtype=np.complex128)
        gauge[:2, :2] = haar_random_unitary(2, rng)
        rotated = Observable(PvmBasis(basis_a.vectors @ gauge), a.spectrum)
        np.testing.assert_allclose(rotated.matrix(), a.matrix(), atol=1e-12)

        assert robertson_bound(rotated, b, rho).value == pytest.approx(robertson_bound(a, b, rho).value, abs=1e-10)
        assert robertson_bound(b, rotated, rho).value == pytest.approx(robertson_bound(b, a, rho).value, abs=1e-10)
        assert commutator_bound(rotated, b, rho).value == pytest.approx(commutator_bound(a, b, rho).value, abs=1e-10)
        assert rs_bound(rotated, b, rho).value == pytest.approx(rs_bound(a, b, rho).value, abs=1e-10)
        assert trace_norm_asymmetry(rotated, rho).value == pytest.approx(trace_norm_asymmetry(a, rho).value, abs=1e-10)
