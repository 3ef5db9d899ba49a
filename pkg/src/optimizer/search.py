"""Seeded multi-restart Nelder-Mead maximization."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from src.linalg import RealVector
from src.models import OptConfig
from src.optimizer.chart import SpectrumParams
from src.quantum import PvmBasis

logger = logging.getLogger(__name__)

# Minimizer value used where the objective is undefined (e.g. a degenerate shifted normalizer).
PENALTY = 1e6

Objective = Callable[[np.ndarray, int], float]
Sampler = Callable[[np.random.Generator, int], np.ndarray]


@dataclass(frozen=True)
class RestartOutcome:
    """Best point of one restart, kept for reduction and logging."""

    index: int
    value: float
    x: RealVector
    converged: bool
    evaluations: int


@dataclass(frozen=True)
class OptResult:
    """
    Best-found supremum with its witness.

    ``value`` is the objective re-evaluated at the witness point.
    """

    value: float
    witness_basis: Optional[PvmBasis] = None
    witness_spectra: Optional[Tuple[SpectrumParams, ...]] = None
    restarts_used: int = 0
    converged: bool = True
    evaluations: int = 0
    witness_params: RealVector = field(default_factory=lambda: np.empty(0))
    best_restart: int = 0

    def summary(self) -> str:
        parts = [f"value={self.value:.12g}", f"restarts={self.restarts_used}", f"converged={self.converged}"]
        if self.witness_spectra:
            parts.append("spectra=" + "|".join(",".join(f"{v:.6g}" for v in s.values) for s in self.witness_spectra))
        return " ".join(parts)


def restart_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for restart ``index``; it does not depend on the total restart count."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _run_restart(objective: Objective, sampler: Sampler, cfg: OptConfig, index: int, label: str) -> RestartOutcome:
    x0 = np.asarray(sampler(restart_rng(cfg.seed, index), index), dtype=np.float64)
    if x0.size == 0:
        return RestartOutcome(index, float(objective(x0, index)), x0, True, 1)

    def negated(x: np.ndarray) -> float:
        value = objective(x, index)
        return -value if np.isfinite(value) else PENALTY

    result = minimize(
        negated,
        x0,
        method="Nelder-Mead",
        options={"maxiter": cfg.max_iterations, "xatol": cfg.tolerance, "fatol": cfg.tolerance},
    )
    value = float(objective(result.x, index))
    if not np.isfinite(value):
        value = float(objective(x0, index))
        x_best = x0
    else:
        x_best = np.asarray(result.x, dtype=np.float64)
    converged = bool(result.success)
    logger.debug(
        "restart finished",
        extra={"search": label, "restart": index, "value": value, "nfev": int(result.nfev), "converged": converged},
    )
    if not converged:
        logger.warning(
            "restart stopped without converging",
            extra={"search": label, "restart": index, "reason": str(result.message)},
        )
    return RestartOutcome(index, value, x_best, converged, int(result.nfev))


def reduce_outcomes(outcomes: List[RestartOutcome]) -> RestartOutcome:
    """Largest value; ties go to the lowest restart index so scheduling never changes the answer."""
    return max(outcomes, key=lambda o: (o.value, -o.index))


def maximize(
    objective: Objective,
    sampler: Sampler,
    cfg: OptConfig,
    label: str = "search",
) -> Tuple[RestartOutcome, List[RestartOutcome]]:
    """
    Maximize ``objective(x, restart_index)`` from ``cfg.restarts`` sampled starting points.

    Each restart draws its start from :func:`restart_rng`, so the first ``k``
    restarts are the same for any ``cfg.restarts >= k`` and the reduced value is
    non-decreasing in ``cfg.restarts``. With ``cfg.workers > 1`` restarts run on
    a thread pool; results are collected in restart order.

    Returns:
        The best restart and the list of all restarts in index order
    """

    def run(index: int) -> RestartOutcome:
        return _run_restart(objective, sampler, cfg, index, label)

    indices = range(cfg.restarts)
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(run, indices))
    else:
        outcomes = [run(i) for i in indices]
    return reduce_outcomes(outcomes), outcomes


def total_evaluations(outcomes: List[RestartOutcome]) -> int:
    return sum(o.evaluations for o in outcomes)
