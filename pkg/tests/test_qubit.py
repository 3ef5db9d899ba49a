"""Tests for the exact qubit solutions, the grid oracle and the additive trade-off scan."""

import numpy as np
import pytest

from src.config import settings
from src.exceptions import NotQubitError
from src.linalg import haar_random_unitary, random_density
from src.measures import nre
from src.optimizer import (
    GridObjective,
    appendix_c_scan,
    qubit_additive_closed_form,
    qubit_analytic,
    qubit_basis,
    qubit_grid_supremum,
)
from src.quantum import DensityOperator, PvmBasis, kd_distribution


def test_qubit_analytic_plus_state(plus_state, z_basis):
    solution = qubit_analytic(plus_state, z_basis)
    assert solution.q_nre == pytest.approx(1.0)
    assert solution.phase_defined
    np.testing.assert_allclose(z_basis.mutual_overlaps(solution.optimal_b), 0.5, atol=1e-12)
    assert nre(kd_distribution(plus_state, z_basis, solution.optimal_b)).value == pytest.approx(1.0)


def test_qubit_analytic_incoherent_state(zero_state, z_basis):
    """A vanishing coherence leaves the phase undefined but still returns a basis."""
    solution = qubit_analytic(zero_state, z_basis)
    assert solution.q_nre == 0.0
    assert not solution.phase_defined
    np.testing.assert_allclose(z_basis.mutual_overlaps(solution.optimal_b), 0.5, atol=1e-12)


def test_qubit_analytic_optimal_basis_attains_value(rng):
    for _ in range(50):
        rho = DensityOperator(random_density(2, int(rng.integers(1, 3)), rng))
        basis_a = PvmBasis(haar_random_unitary(2, rng))
        solution = qubit_analytic(rho, basis_a)
        attained = nre(kd_distribution(rho, basis_a, solution.optimal_b)).value
        assert attained == pytest.approx(solution.q_nre, abs=1e-12)


def test_qubit_analytic_rejects_qutrits():
    with pytest.raises(NotQubitError):
        qubit_analytic(DensityOperator.maximally_mixed(3), PvmBasis.computational(3))


def test_qubit_basis_at_equator_is_sigma_y_basis(y_basis):
    basis = qubit_basis(np.pi / 2, np.pi / 2)
    np.testing.assert_allclose(basis.projectors(), y_basis.projectors(), atol=1e-15)


def test_grid_matches_analytic(rng):
    for _ in range(5):
        rho = DensityOperator(random_density(2, 2, rng))
        basis_a = PvmBasis(haar_random_unitary(2, rng))
        grid = qubit_grid_supremum(GridObjective.Q_NRE, rho, basis_a, resolution=96)
        assert grid.value == pytest.approx(qubit_analytic(rho, basis_a).q_nre, abs=settings.grid_tolerance)


def test_grid_value_is_attained_by_its_basis(plus_state, z_basis):
    grid = qubit_grid_supremum(GridObjective.Q_NRE, plus_state, z_basis, resolution=64)
    assert nre(kd_distribution(plus_state, z_basis, grid.basis())).value == pytest.approx(grid.value, abs=1e-12)


def test_grid_other_objectives_plus_state(plus_state, z_basis):
    """sup NCl = sqrt 2 - 1, sup epsilon = sqrt(1/2) and sup delta = 2 for |+> against Z."""
    assert qubit_grid_supremum(GridObjective.Q_NCL, plus_state, z_basis, 96).value == pytest.approx(np.sqrt(2) - 1, abs=1e-6)
    assert qubit_grid_supremum(GridObjective.EPSILON, plus_state, z_basis, 96).value == pytest.approx(np.sqrt(0.5), abs=1e-6)
    assert qubit_grid_supremum(GridObjective.DELTA, plus_state, z_basis, 96).value == pytest.approx(2.0, abs=1e-6)


def test_grid_rejects_qutrits():
    with pytest.raises(NotQubitError):
        qubit_grid_supremum(GridObjective.Q_NRE, DensityOperator.maximally_mixed(3), PvmBasis.computational(3))


def test_closed_form_worked_point():
    assert qubit_additive_closed_form(1.0, np.pi / 2, np.pi / 2, np.pi / 2) == pytest.approx(2.0)
    assert qubit_additive_closed_form(1.0, 0.0, np.pi / 2, np.pi / 2) == pytest.approx(0.0, abs=1e-15)
    assert qubit_additive_closed_form(0.5, np.pi / 2, np.pi / 2, np.pi / 2) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "r, beta_minus_phi01, phi01",
    [(1.0, np.pi / 2, 0.0), (0.6, 0.9, 0.0), (0.8, 2.1, 1.3)],
)
def test_scan_agrees_with_closed_form(r, beta_minus_phi01, phi01):
    scan = appendix_c_scan(r=r, beta_minus_phi01=beta_minus_phi01, resolution=12, phi01=phi01)
    assert scan.numeric.shape == (12, 12)
    assert scan.max_deviation < 1e-12
    assert scan.min_slack >= -1e-12


def test_scan_rows_cover_the_grid():
    scan = appendix_c_scan(resolution=5)
    rows = list(scan.rows())
    assert len(rows) == 25
    assert rows[0][:2] == (0.0, 0.0)
    assert rows[-1][:2] == pytest.approx((np.pi, np.pi))
