"""Qubit suites: the searches against closed forms and dense grids."""

from typing import List

import numpy as np

from src.config import settings
from src.measures import commutator_bound
from src.models import BoundReport
from src.optimizer import (
    GridObjective,
    SpectrumParams,
    appendix_c_scan,
    delta,
    epsilon,
    q_ncl,
    q_nre,
    qubit_additive_closed_form,
    qubit_analytic,
    qubit_basis,
    qubit_grid_supremum,
    sup_robertson,
)
from src.quantum import Observable, PvmBasis, QubitAngles, bloch_state_from_angles
from suites.base import InstanceTask, VerificationSuite

# Mutual unbiasedness of the optimal second basis is exact up to rounding.
MUB_TOLERANCE = 1e-6
SCAN_TOLERANCE = 1e-6
SCAN_RESOLUTION = 50


class QubitExactSuite(VerificationSuite):
    """Search and exact spectral supremum both reproduce ``2 |<0|rho|1>|``; the optimal basis is MUB."""

    name = "qubit-exact"
    description = "q_nre and sup_robertson equal 2|<0|rho|1>| on qubits, attained by a mutually unbiased basis"
    fixed_dims = [2]
    default_instances = 100

    def check(self, task: InstanceTask) -> List[BoundReport]:
        rng = self.rng(task)
        rho = self.random_state(task.dim, rng)
        basis_a = self.random_basis(task.dim, rng)
        cfg = self.opt(task)
        exact = qubit_analytic(rho, basis_a)
        found = q_nre(rho, basis_a, cfg)
        rob = sup_robertson(rho, basis_a, cfg)
        overlaps = basis_a.mutual_overlaps(exact.optimal_b)
        tol = settings.qubit_tolerance
        return [
            BoundReport.agreement(
                "qubit-exact-search", abs(found.value - exact.q_nre), tol, witness=self.witness(task, found.summary())
            ),
            BoundReport.agreement(
                "qubit-exact-mub", float(np.max(np.abs(overlaps - 0.5))), MUB_TOLERANCE, witness=self.witness(task)
            ),
            BoundReport.agreement(
                "qubit-exact-robertson", abs(rob.value - exact.q_nre), tol, witness=self.witness(task, rob.summary())
            ),
        ]


class AppendixCSuite(VerificationSuite):
    """
    The additive NRe trade-off on a pure qubit.

    Instance 0 checks the worked point: an equatorial pure state with the
    computational basis and the sigma_y basis, where both sides equal 2.
    Every instance then scans ``(alpha, phi_z)`` at a random Bloch azimuth and
    compares the commutator right-hand side with its closed form.
    """

    name = "appendix-c"
    description = "additive trade-off on a pure qubit: worked point and (alpha, phi_z) scan against the closed form"
    fixed_dims = [2]
    default_instances = 4

    def check(self, task: InstanceTask) -> List[BoundReport]:
        checks = []
        if task.index == 0:
            checks.extend(self._worked_point(task))

        rng = self.rng(task)
        phi01 = float(rng.uniform(0.0, 2.0 * np.pi))
        beta_minus_phi01 = float(rng.uniform(0.0, np.pi))
        scan = appendix_c_scan(r=1.0, beta_minus_phi01=beta_minus_phi01, resolution=SCAN_RESOLUTION, phi01=phi01)
        extra = f"phi01={phi01:.6g} beta-phi01={beta_minus_phi01:.6g}"
        checks.append(
            BoundReport.agreement(
                "appendix-c-closed-form", scan.max_deviation, SCAN_TOLERANCE, witness=self.witness(task, extra)
            )
        )
        checks.append(
            BoundReport.check("appendix-c-scan", scan.min_slack, 0.0, tolerance=SCAN_TOLERANCE, witness=self.witness(task, extra))
        )
        return checks

    def _worked_point(self, task: InstanceTask) -> List[BoundReport]:
        rho = bloch_state_from_angles(QubitAngles(r=1.0, phi_z=np.pi / 2, phi_01=0.0))
        basis_a = PvmBasis.computational(2)
        basis_b = qubit_basis(np.pi / 2, np.pi / 2)
        balanced = SpectrumParams.balanced(2).values
        lhs = qubit_analytic(rho, basis_a).q_nre + qubit_analytic(rho, basis_b).q_nre
        rhs = commutator_bound(Observable(basis_a, balanced), Observable(basis_b, balanced), rho).value
        closed = qubit_additive_closed_form(1.0, np.pi / 2, np.pi / 2, np.pi / 2)
        witness = self.witness(task, "worked point")
        return [
            BoundReport.agreement("appendix-c-lhs", abs(lhs - 2.0), SCAN_TOLERANCE, witness=witness),
            BoundReport.agreement("appendix-c-rhs", abs(rhs - 2.0), SCAN_TOLERANCE, witness=witness),
            BoundReport.agreement("appendix-c-point-closed-form", abs(closed - rhs), SCAN_TOLERANCE, witness=witness),
        ]


class GridOracleSuite(VerificationSuite):
    """Each qubit search agrees with the dense grid maximum of the same objective."""

    name = "grid-oracle"
    description = "q_nre, q_ncl, epsilon and delta searches match dense (alpha, beta) grid maxima on qubits"
    fixed_dims = [2]
    default_instances = 100

    SEARCHES = {
        GridObjective.Q_NRE: q_nre,
        GridObjective.Q_NCL: q_ncl,
        GridObjective.EPSILON: epsilon,
        GridObjective.DELTA: delta,
    }

    def check(self, task: InstanceTask) -> List[BoundReport]:
        rng = self.rng(task)
        rho = self.random_state(task.dim, rng)
        basis_a = self.random_basis(task.dim, rng)
        cfg = self.opt(task)
        checks = []
        for objective, search in self.SEARCHES.items():
            found = search(rho, basis_a, cfg).value
            grid = qubit_grid_supremum(objective, rho, basis_a, self.grid_resolution())
            checks.append(
                BoundReport.agreement(
                    f"grid-oracle-{objective.value}",
                    abs(found - grid.value),
                    settings.grid_tolerance,
                    witness=self.witness(task, f"search={found:.12g} grid={grid.value:.12g}"),
                )
            )
        return checks


__all__ = ["QubitExactSuite", "AppendixCSuite", "GridOracleSuite"]
