"""Reproducibility of the seeded searches."""

from typing import List

import numpy as np

from src.models import BoundReport
from src.optimizer import OptResult, q_nre
from suites.base import InstanceTask, VerificationSuite


def mismatch(first: OptResult, second: OptResult) -> float:
    """Largest difference between two search results; exactly 0.0 when they are identical."""
    if first.best_restart != second.best_restart or first.witness_params.shape != second.witness_params.shape:
        return float(abs(first.best_restart - second.best_restart) + 1)
    params = float(np.max(np.abs(first.witness_params - second.witness_params))) if first.witness_params.size else 0.0
    return max(abs(first.value - second.value), params)


class DeterminismSuite(VerificationSuite):
    """
    Restart monotonicity and seed reproducibility of ``q_nre``.

    More restarts never lower the best-found value, a repeated run returns the
    identical witness, and running restarts on two threads changes nothing.
    """

    name = "determinism"
    description = "monotone restarts, same-seed reproducibility and worker-count independence"
    default_dims = [2, 3]
    default_instances = 25

    def check(self, task: InstanceTask) -> List[BoundReport]:
        rng = self.rng(task)
        rho = self.random_state(task.dim, rng)
        basis_a = self.random_basis(task.dim, rng)
        base = self.opt(task)
        fewer = base.model_copy(update={"restarts": max(1, base.restarts // 2)})

        small = q_nre(rho, basis_a, fewer)
        full = q_nre(rho, basis_a, base)
        repeat = q_nre(rho, basis_a, base)
        threaded = q_nre(rho, basis_a, base.model_copy(update={"workers": 2}))
        witness = self.witness(task, f"restarts={fewer.restarts}->{base.restarts}")
        return [
            BoundReport.check("determinism-monotone", full.value, small.value, tolerance=0.0, witness=witness),
            BoundReport.agreement("determinism-repeat", mismatch(full, repeat), 0.0, witness=witness),
            BoundReport.agreement("determinism-workers", mismatch(full, threaded), 0.0, witness=witness),
        ]


__all__ = ["mismatch", "DeterminismSuite"]
