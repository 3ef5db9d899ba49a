"""Suites on single-basis suprema: the NRe/NCl lower bounds, their ceilings and the operational chains."""

from typing import Callable, List

import numpy as np

from src.config import settings
from src.measures import l1_coherence, robertson_bound, trace_norm_asymmetry
from src.models import BoundReport, OptConfig
from src.optimizer import (
    GridObjective,
    OptResult,
    delta,
    epsilon,
    q_ncl,
    q_nre,
    qubit_grid_supremum,
    sup_robertson,
    sup_rs,
)
from src.quantum import DensityOperator, Observable, PvmBasis
from suites.base import InstanceTask, VerificationSuite

Search = Callable[[DensityOperator, PvmBasis, OptConfig], OptResult]

# Random spectra drawn per instance when checking that the spectral search beats sampling.
SPECTRUM_SAMPLES = 200


def certified_supremum(
    search: Search,
    objective: GridObjective,
    rho: DensityOperator,
    basis: PvmBasis,
    cfg: OptConfig,
    resolution: int,
) -> float:
    """Best-found supremum; on a qubit also the dense-grid value, taking the larger of the two."""
    value = search(rho, basis, cfg).value
    if rho.dim == 2:
        value = max(value, qubit_grid_supremum(objective, rho, basis, resolution).value)
    return value


class Prop1Suite(VerificationSuite):
    name = "prop1"
    description = "Q_NRe(rho; A) >= sup over spectra of the normalized commutator bound"
    default_dims = [2, 3]
    default_instances = 50

    def check(self, task: InstanceTask) -> List[BoundReport]:
        rng = self.rng(task)
        rho = self.random_state(task.dim, rng)
        basis_a = self.random_basis(task.dim, rng)
        cfg = self.opt(task)
        lhs = certified_supremum(q_nre, GridObjective.Q_NRE, rho, basis_a, cfg, self.grid_resolution())
        rob = sup_robertson(rho, basis_a, cfg)
        return [
            BoundReport.check(
                "prop1", lhs, rob.value, tolerance=self.slack, heuristic=task.dim > 2, witness=self.witness(task, rob.summary())
            )
        ]


class Prop2Suite(VerificationSuite):
    """The sign-operator witness attains the spectral supremum, which dominates random spectra."""

    name = "prop2"
    description = "sup_A ||[A~, rho]||_1 / 2 is attained by B* = sign(i[A~, rho]) and beats sampled spectra"
    default_dims = [2, 3]
    default_instances = 50

    def check(self, task: InstanceTask) -> List[BoundReport]:
        rng = self.rng(task)
        rho = self.random_state(task.dim, rng)
        basis_a = self.random_basis(task.dim, rng)
        result = sup_robertson(rho, basis_a, self.opt(task))
        assert result.witness_spectra is not None and result.witness_basis is not None
        a_star = Observable(basis_a, result.witness_spectra[0].values)
        b_star = Observable(result.witness_basis, result.witness_spectra[1].values)

        sampled = 0.0
        for _ in range(SPECTRUM_SAMPLES):
            values = rng.uniform(-1.0, 1.0, task.dim)
            if np.max(np.abs(values)) > 0.0:
                sampled = max(sampled, trace_norm_asymmetry(Observable(basis_a, values), rho, normalized=True).value)
        return [
            BoundReport.agreement(
                "prop2-witness",
                abs(robertson_bound(a_star, b_star, rho).value - result.value),
                settings.identity_tolerance,
                witness=self.witness(task),
            ),
            BoundReport.agreement(
                "prop2-asymmetry",
                abs(trace_norm_asymmetry(a_star, rho, normalized=True).value - result.value),
                settings.identity_tolerance,
                witness=self.witness(task),
            ),
            BoundReport.check(
                "prop2-sampling",
                result.value,
                sampled,
                tolerance=self.slack,
                heuristic=task.dim > 2,
                witness=self.witness(task, f"samples={SPECTRUM_SAMPLES}"),
            ),
        ]


class Prop4Suite(VerificationSuite):
    name = "prop4"
    description = "Q_NCl(rho; A) >= sup over A spectra and all B of rs_root / 2 - 1, which is at most 0"
    default_dims = [2, 3]
    default_instances = 50

    def check(self, task: InstanceTask) -> List[BoundReport]:
        rng = self.rng(task)
        rho = self.random_state(task.dim, rng)
        basis_a = self.random_basis(task.dim, rng)
        cfg = self.opt(task)
        lhs = certified_supremum(q_ncl, GridObjective.Q_NCL, rho, basis_a, cfg, self.grid_resolution())
        rs = sup_rs(rho, basis_a, cfg)
        return [
            BoundReport.check("prop4", lhs, rs.value, tolerance=self.slack, heuristic=task.dim > 2, witness=self.witness(task, rs.summary())),
            BoundReport.check("prop4-ceiling", 0.0, rs.value, tolerance=settings.identity_tolerance, witness=self.witness(task)),
        ]


class OrderingSuite(VerificationSuite):
    """l1 coherence >= Q_NRe >= spectral supremum of the commutator bound; all equal on a qubit."""

    name = "cor-ordering"
    description = "C_l1 >= Q_NRe >= sup_robertson"
    default_dims = [2, 3, 4]
    default_instances = 500

    def check(self, task: InstanceTask) -> List[BoundReport]:
        rng = self.rng(task)
        rho = self.random_state(task.dim, rng)
        basis_a = self.random_basis(task.dim, rng)
        cfg = self.opt(task)
        l1 = l1_coherence(rho, basis_a).value
        nre_sup = certified_supremum(q_nre, GridObjective.Q_NRE, rho, basis_a, cfg, self.grid_resolution())
        rob = sup_robertson(rho, basis_a, cfg).value
        heuristic = task.dim > 2
        checks = [
            BoundReport.check("cor-ordering-l1", l1, nre_sup, tolerance=self.slack, heuristic=heuristic, witness=self.witness(task)),
            BoundReport.check("cor-ordering-robertson", nre_sup, rob, tolerance=self.slack, heuristic=heuristic, witness=self.witness(task)),
        ]
        if task.dim == 2:
            tol = settings.qubit_tolerance
            checks.append(BoundReport.agreement("cor-ordering-qubit-l1", abs(l1 - nre_sup), tol, witness=self.witness(task)))
            checks.append(BoundReport.agreement("cor-ordering-qubit-robertson", abs(rob - nre_sup), tol, witness=self.witness(task)))
        return checks


class CeilingsSuite(VerificationSuite):
    name = "ceilings"
    description = "C_l1 >= Q_NCl and C_l1 >= Q_NRe"
    default_dims = [2, 3, 4]
    default_instances = 500

    def check(self, task: InstanceTask) -> List[BoundReport]:
        rng = self.rng(task)
        rho = self.random_state(task.dim, rng)
        basis_a = self.random_basis(task.dim, rng)
        cfg = self.opt(task)
        l1 = l1_coherence(rho, basis_a).value
        res = self.grid_resolution()
        return [
            BoundReport.check(
                "ceiling-ncl",
                l1,
                certified_supremum(q_ncl, GridObjective.Q_NCL, rho, basis_a, cfg, res),
                tolerance=self.slack,
                witness=self.witness(task),
            ),
            BoundReport.check(
                "ceiling-nre",
                l1,
                certified_supremum(q_nre, GridObjective.Q_NRE, rho, basis_a, cfg, res),
                tolerance=self.slack,
                witness=self.witness(task),
            ),
        ]


class Cor5aSuite(VerificationSuite):
    name = "cor5a"
    description = "sqrt(d) * epsilon(rho; A) >= Q_NRe(rho; A) on qubits"
    fixed_dims = [2]
    default_instances = 200

    def check(self, task: InstanceTask) -> List[BoundReport]:
        rng = self.rng(task)
        rho = self.random_state(task.dim, rng)
        basis_a = self.random_basis(task.dim, rng)
        cfg = self.opt(task)
        res = self.grid_resolution()
        return [
            BoundReport.check(
                "cor5a",
                np.sqrt(task.dim) * certified_supremum(epsilon, GridObjective.EPSILON, rho, basis_a, cfg, res),
                certified_supremum(q_nre, GridObjective.Q_NRE, rho, basis_a, cfg, res),
                tolerance=self.slack,
                witness=self.witness(task),
            )
        ]


class Cor6aSuite(VerificationSuite):
    name = "cor6a"
    description = "delta(rho; A) >= Q_NCl(rho; A) on qubits"
    fixed_dims = [2]
    default_instances = 200

    def check(self, task: InstanceTask) -> List[BoundReport]:
        rng = self.rng(task)
        rho = self.random_state(task.dim, rng)
        basis_a = self.random_basis(task.dim, rng)
        cfg = self.opt(task)
        res = self.grid_resolution()
        return [
            BoundReport.check(
                "cor6a",
                certified_supremum(delta, GridObjective.DELTA, rho, basis_a, cfg, res),
                certified_supremum(q_ncl, GridObjective.Q_NCL, rho, basis_a, cfg, res),
                tolerance=self.slack,
                witness=self.witness(task),
            )
        ]


__all__ = [
    "certified_supremum",
    "Prop1Suite",
    "Prop2Suite",
    "Prop4Suite",
    "OrderingSuite",
    "CeilingsSuite",
    "Cor5aSuite",
    "Cor6aSuite",
]
