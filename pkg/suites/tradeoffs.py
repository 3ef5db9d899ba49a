"""Two-basis trade-off suites: product and additive relations between measures of one state."""

from typing import List, Sequence

from src.config import settings
from src.models import BoundReport, OptConfig, TradeoffKind
from src.optimizer import PairExpression, sup_pair_spectra, tradeoff_bound
from src.quantum import DensityOperator, PvmBasis
from suites.base import InstanceTask, VerificationSuite


class TradeoffSuite(VerificationSuite):
    """
    Checks ``tradeoff_bound`` for a fixed set of relation kinds on random states and basis pairs.

    The first instance of every dimension also runs the commutator-based
    relations on the maximally mixed state, where both sides vanish.
    """

    kinds: Sequence[TradeoffKind] = ()
    default_dims = [2, 3, 4]
    default_instances = 100

    def check(self, task: InstanceTask) -> List[BoundReport]:
        rng = self.rng(task)
        rho = self.random_state(task.dim, rng)
        basis_a = self.random_basis(task.dim, rng)
        basis_b = self.random_basis(task.dim, rng)
        cfg = self.opt(task)
        res = self.grid_resolution()

        checks = []
        for kind in self.kinds:
            report = tradeoff_bound(rho, basis_a, basis_b, cfg, kind, slack=self.slack, grid_resolution=res)
            checks.append(report.model_copy(update={"witness": self.witness(task, report.witness)}))

        if self._first_of_dim(task) and any(kind.uses_commutator for kind in self.kinds):
            maximally_mixed = DensityOperator.maximally_mixed(task.dim)
            mixed = sup_pair_spectra(maximally_mixed, basis_a, basis_b, PairExpression.COMMUTATOR, cfg)
            checks.append(
                BoundReport.agreement(
                    f"{self.name}-mixed-rhs",
                    abs(mixed.value),
                    settings.identity_tolerance,
                    witness=self.witness(task, "rho=I/d"),
                )
            )
            checks.extend(self._mixed_state_checks(task, maximally_mixed, basis_a, basis_b, cfg))
        return checks

    def _first_of_dim(self, task: InstanceTask) -> bool:
        return task.index % self.instances_per_dim == 0

    def _mixed_state_checks(
        self, task: InstanceTask, rho: DensityOperator, basis_a: PvmBasis, basis_b: PvmBasis, cfg: OptConfig
    ) -> List[BoundReport]:
        """Both sides of every commutator-based relation vanish on ``I/d``."""
        checks = []
        for kind in self.kinds:
            if not kind.uses_commutator:
                continue
            report = tradeoff_bound(rho, basis_a, basis_b, cfg, kind, slack=self.slack, grid_resolution=self.grid_resolution())
            witness = self.witness(task, f"rho=I/d {report.witness}")
            checks.append(report.model_copy(update={"inequality_id": f"{self.name}-mixed", "witness": witness}))
            checks.append(
                BoundReport.agreement(
                    f"{self.name}-mixed-sides",
                    max(abs(report.lhs), report.rhs),
                    settings.identity_tolerance,
                    witness=self.witness(task, f"rho=I/d kind={kind.value}"),
                )
            )
        return checks


class Prop3Suite(TradeoffSuite):
    name = "prop3"
    description = "Q_NRe(rho; A) Q_NRe(rho; B) >= sup over spectra of |Tr{[A~, B~] rho}|^2 / 4"
    kinds = (TradeoffKind.NRE_PRODUCT,)


class AdditiveSuite(TradeoffSuite):
    name = "additive"
    description = "Q_NRe(rho; A) + Q_NRe(rho; B) >= sup over spectra of |Tr{[A~, B~] rho}|"
    kinds = (TradeoffKind.NRE_ADDITIVE,)


class Prop5Suite(TradeoffSuite):
    name = "prop5"
    description = "(Q_NCl(rho; A) + 1)(Q_NCl(rho; B) + 1) >= sup over spectra of rs_root^2 / 4"
    kinds = (TradeoffKind.NCL_PRODUCT,)


class L1TradeoffSuite(TradeoffSuite):
    """The l1-coherence counterparts of the NRe and NCl relations."""

    name = "l1-tradeoffs"
    description = "product and additive relations for the l1 coherence in two bases"
    kinds = (
        TradeoffKind.L1_PRODUCT,
        TradeoffKind.L1_ADDITIVE,
        TradeoffKind.L1_RS_PRODUCT,
        TradeoffKind.L1_RS_ADDITIVE,
    )


class Cor5bSuite(TradeoffSuite):
    name = "cor5b"
    description = "d epsilon(rho; A) epsilon(rho; B) >= sup over spectra of |Tr{[A~, B~] rho}|^2 / 4"
    kinds = (TradeoffKind.EPSILON_PRODUCT,)
    default_dims = [2, 3]
    default_instances = 50


class Cor6bSuite(TradeoffSuite):
    name = "cor6b"
    description = "delta(rho; A) delta(rho; B) >= max(0, rs_root / 2 - 1)^2"
    kinds = (TradeoffKind.DELTA_PRODUCT,)
    default_dims = [2, 3]
    default_instances = 50


__all__ = [
    "TradeoffSuite",
    "Prop3Suite",
    "AdditiveSuite",
    "Prop5Suite",
    "L1TradeoffSuite",
    "Cor5bSuite",
    "Cor6bSuite",
]
