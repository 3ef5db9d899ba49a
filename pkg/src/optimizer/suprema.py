"""Suprema over measurement bases and observable spectra, and the trade-off reports built from them."""

import logging
from enum import Enum
from typing import Callable, Optional

import numpy as np

from src.config import settings
from src.exceptions import DimensionMismatchError
from src.linalg import ComplexMatrix, commutator, eig_hermitian, sign_operator
from src.measures import (
    disturbance_of_table,
    l1_coherence,
    mse_sq_of_table,
    ncl_of_table,
    nre_of_table,
    rs_root_of_matrices,
)
from src.models import BoundReport, OptConfig, TradeoffKind
from src.optimizer.chart import SpectrumParams, decode_unitary, param_count, random_params
from src.optimizer.qubit import GridObjective, qubit_grid_supremum
from src.optimizer.search import OptResult, maximize, total_evaluations
from src.quantum import DensityOperator, PvmBasis, kd_table, sequential_table

logger = logging.getLogger(__name__)

BasisKernel = Callable[[np.ndarray], float]


class PairExpression(str, Enum):
    """Quantity maximized over both spectra when the two eigenbases are fixed."""

    COMMUTATOR = "commutator"
    RS_ROOT = "rs_root"


def _require_dims(rho: DensityOperator, *bases: PvmBasis) -> int:
    for basis in bases:
        if basis.dim != rho.dim:
            raise DimensionMismatchError(f"basis dimension {basis.dim} vs state dimension {rho.dim}")
    return rho.dim


def _spectral(vectors: np.ndarray, values: np.ndarray) -> ComplexMatrix:
    return (vectors * values) @ vectors.conj().T


def _pinned_values(free: np.ndarray, d: int, pin: int) -> np.ndarray:
    return np.insert(np.sin(free), pin % d, 1.0)


def _spectrum_sample(rng: np.random.Generator, count: int) -> np.ndarray:
    return rng.uniform(-np.pi / 2, np.pi / 2, count)


def _pins(restart: int, d: int) -> tuple[int, int]:
    """Pinned (+1) eigenvalue positions for the A and B spectra of a restart."""
    return restart % d, (restart // d) % d


# Suprema over the second basis.


def _sup_over_bases(rho: DensityOperator, basis_a: PvmBasis, cfg: OptConfig, kernel: BasisKernel, label: str) -> OptResult:
    d = _require_dims(rho, basis_a)

    best, outcomes = maximize(
        lambda x, _: kernel(decode_unitary(x, d)),
        lambda rng, _: random_params(d, rng),
        cfg,
        label,
    )
    witness = decode_unitary(best.x, d) if best.x.size else np.eye(d, dtype=np.complex128)
    return OptResult(
        value=float(kernel(witness)),
        witness_basis=PvmBasis(witness),
        restarts_used=len(outcomes),
        converged=best.converged,
        evaluations=total_evaluations(outcomes),
        witness_params=best.x,
        best_restart=best.index,
    )


def q_nre(rho: DensityOperator, basis_a: PvmBasis, cfg: OptConfig) -> OptResult:
    """
    Best-found ``sup_B NRe(Pr(a, b | rho))`` over rank-1 PVM bases ``B``.

    The value never exceeds the l1 coherence of ``rho`` in ``basis_a``.
    """
    va, r = basis_a.vectors, rho.matrix
    return _sup_over_bases(rho, basis_a, cfg, lambda vb: nre_of_table(kd_table(r, va, vb)), "q_nre")


def q_ncl(rho: DensityOperator, basis_a: PvmBasis, cfg: OptConfig) -> OptResult:
    """Best-found ``sup_B NCl(Pr(a, b | rho))``."""
    va, r = basis_a.vectors, rho.matrix
    return _sup_over_bases(rho, basis_a, cfg, lambda vb: ncl_of_table(kd_table(r, va, vb)), "q_ncl")


def epsilon(rho: DensityOperator, basis_a: PvmBasis, cfg: OptConfig) -> OptResult:
    """
    Square root of the best-found supremum of the mean-squared error summand.

    Only ``sqrt(d) * epsilon >= q_nre`` follows from the averaging step.
    """
    va, r = basis_a.vectors, rho.matrix
    return _sup_over_bases(
        rho, basis_a, cfg, lambda vb: float(np.sqrt(mse_sq_of_table(kd_table(r, va, vb)))), "epsilon"
    )


def delta(rho: DensityOperator, basis_a: PvmBasis, cfg: OptConfig) -> OptResult:
    """Best-found supremum of the disturbance summand ``sum |Tr{(rho - rho_{Pi_a}) Pi_b}|``."""
    va, r = basis_a.vectors, rho.matrix

    def kernel(vb: np.ndarray) -> float:
        return disturbance_of_table(kd_table(r, va, vb), sequential_table(r, va, vb))

    return _sup_over_bases(rho, basis_a, cfg, kernel, "delta")


# Suprema over spectra.


def sup_robertson(rho: DensityOperator, basis_a: PvmBasis, cfg: OptConfig) -> OptResult:
    """
    ``sup_A sup_B |Tr{B~ [A~, rho]}| / 2`` with ``A`` diagonal in ``basis_a``.

    The inner supremum is exact: ``B* = sign(i [A~, rho])`` attains ``||[A~, rho]||_1 / 2``.
    The outer one is searched over spectra with one eigenvalue pinned to +1; for
    ``d <= 2`` the balanced spectrum is optimal and no search runs.
    """
    d = _require_dims(rho, basis_a)
    va, r = basis_a.vectors, rho.matrix

    def asymmetry(values: np.ndarray) -> float:
        return 0.5 * float(np.sum(np.linalg.svd(commutator(_spectral(va, values), r), compute_uv=False)))

    if d <= 2:
        spectrum = SpectrumParams.balanced(d)
        restarts, converged, evaluations, x_best, best_index = 0, True, 1, np.empty(0), 0
    else:
        best, outcomes = maximize(
            lambda x, i: asymmetry(_pinned_values(x, d, i)),
            lambda rng, _: _spectrum_sample(rng, d - 1),
            cfg,
            "sup_robertson",
        )
        spectrum = SpectrumParams.pinned(best.x, d, best.index)
        restarts, converged, evaluations = len(outcomes), best.converged, total_evaluations(outcomes)
        x_best, best_index = best.x, best.index

    a_tilde = _spectral(va, spectrum.values)
    b_star = sign_operator(1j * commutator(a_tilde, r))
    b_system = eig_hermitian(b_star)
    return OptResult(
        value=asymmetry(spectrum.values),
        witness_basis=PvmBasis(b_system.eigenvectors),
        witness_spectra=(spectrum, SpectrumParams(np.sign(b_system.eigenvalues))),
        restarts_used=restarts,
        converged=converged,
        evaluations=evaluations,
        witness_params=x_best,
        best_restart=best_index,
    )


def _shift_normalized(vectors: np.ndarray, values: np.ndarray, populations: np.ndarray) -> Optional[ComplexMatrix]:
    mean = float(np.dot(values, populations))
    norm = float(np.max(np.abs(values - mean)))
    if norm <= settings.degenerate_threshold:
        return None
    return _spectral(vectors, values) / norm


def _populations(rho: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    return np.real(np.einsum("ix,ij,jx->x", vectors.conj(), rho, vectors))


def _rs_value(rho: np.ndarray, va: np.ndarray, a_values: np.ndarray, vb: np.ndarray, b_values: np.ndarray) -> float:
    a_shifted = _shift_normalized(va, a_values, _populations(rho, va))
    b_shifted = _shift_normalized(vb, b_values, _populations(rho, vb))
    if a_shifted is None or b_shifted is None:
        return -np.inf
    return 0.5 * rs_root_of_matrices(a_shifted, b_shifted, rho) - 1.0


def sup_rs(rho: DensityOperator, basis_a: PvmBasis, cfg: OptConfig) -> OptResult:
    """
    Best-found ``sup_A sup_B (rs_root / 2 - 1)`` with ``A`` diagonal in ``basis_a`` and ``B`` free.

    Points with a vanishing shifted normalizer score ``-inf``. The value is at
    most 0. For ``d = 2`` both spectra are fixed to ``(1, -1)`` (the expression
    is invariant under affine changes of either spectrum) and only the basis of
    ``B`` is searched.
    """
    d = _require_dims(rho, basis_a)
    va, r = basis_a.vectors, rho.matrix
    n_basis = param_count(d)

    if d <= 2:
        balanced = SpectrumParams.balanced(d).values

        def split(x: np.ndarray, _: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
            return balanced, decode_unitary(x, d), balanced

        def sample(rng: np.random.Generator, _: int) -> np.ndarray:
            return random_params(d, rng)

    else:

        def split(x: np.ndarray, i: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
            pin_a, pin_b = _pins(i, d)
            a_values = _pinned_values(x[: d - 1], d, pin_a)
            vb = decode_unitary(x[d - 1 : d - 1 + n_basis], d)
            b_values = _pinned_values(x[d - 1 + n_basis :], d, pin_b)
            return a_values, vb, b_values

        def sample(rng: np.random.Generator, _: int) -> np.ndarray:
            return np.concatenate([_spectrum_sample(rng, d - 1), random_params(d, rng), _spectrum_sample(rng, d - 1)])

    def objective(x: np.ndarray, i: int) -> float:
        a_values, vb, b_values = split(x, i)
        return _rs_value(r, va, a_values, vb, b_values)

    best, outcomes = maximize(objective, sample, cfg, "sup_rs")
    a_values, vb, b_values = split(best.x, best.index)
    return OptResult(
        value=_rs_value(r, va, a_values, vb, b_values),
        witness_basis=PvmBasis(vb),
        witness_spectra=(SpectrumParams(a_values), SpectrumParams(b_values)),
        restarts_used=len(outcomes),
        converged=best.converged,
        evaluations=total_evaluations(outcomes),
        witness_params=best.x,
        best_restart=best.index,
    )


def _pair_value(expression: PairExpression, rho: np.ndarray, va: np.ndarray, a_values: np.ndarray, vb: np.ndarray, b_values: np.ndarray) -> float:
    if expression is PairExpression.COMMUTATOR:
        a_tilde, b_tilde = _spectral(va, a_values), _spectral(vb, b_values)
        return float(abs(np.trace(commutator(a_tilde, b_tilde) @ rho)))
    rs = _rs_value(rho, va, a_values, vb, b_values)
    return 2.0 * (rs + 1.0) if np.isfinite(rs) else -np.inf


def sup_pair_spectra(
    rho: DensityOperator,
    basis_a: PvmBasis,
    basis_b: PvmBasis,
    expression: PairExpression,
    cfg: OptConfig,
) -> OptResult:
    """
    Double supremum over the spectra of ``A = sum a Pi_a`` and ``B = sum b Pi_b`` with both bases fixed.

    ``COMMUTATOR`` maximizes ``|Tr{[A~, B~] rho}|``; ``RS_ROOT`` maximizes the
    shifted root term. For ``d <= 2`` the balanced spectra are exact optima.
    """
    d = _require_dims(rho, basis_a, basis_b)
    va, vb, r = basis_a.vectors, basis_b.vectors, rho.matrix

    if d <= 2:
        balanced = SpectrumParams.balanced(d)
        value = _pair_value(expression, r, va, balanced.values, vb, balanced.values)
        return OptResult(value=value, witness_basis=basis_b, witness_spectra=(balanced, balanced), restarts_used=0, evaluations=1)

    def split(x: np.ndarray, i: int) -> tuple[np.ndarray, np.ndarray]:
        pin_a, pin_b = _pins(i, d)
        return _pinned_values(x[: d - 1], d, pin_a), _pinned_values(x[d - 1 :], d, pin_b)

    def objective(x: np.ndarray, i: int) -> float:
        a_values, b_values = split(x, i)
        return _pair_value(expression, r, va, a_values, vb, b_values)

    best, outcomes = maximize(
        objective,
        lambda rng, _: _spectrum_sample(rng, 2 * (d - 1)),
        cfg,
        f"sup_pair_spectra[{expression.value}]",
    )
    a_values, b_values = split(best.x, best.index)
    return OptResult(
        value=_pair_value(expression, r, va, a_values, vb, b_values),
        witness_basis=basis_b,
        witness_spectra=(SpectrumParams(a_values), SpectrumParams(b_values)),
        restarts_used=len(outcomes),
        converged=best.converged,
        evaluations=total_evaluations(outcomes),
        witness_params=best.x,
        best_restart=best.index,
    )


# Trade-off relations.


def _measure_supremum(kind: TradeoffKind, rho: DensityOperator, basis: PvmBasis, cfg: OptConfig, grid_resolution: Optional[int]) -> float:
    """Per-basis quantity entering the left-hand side; on a qubit the search is backed by the grid oracle."""
    if kind in (TradeoffKind.L1_PRODUCT, TradeoffKind.L1_ADDITIVE, TradeoffKind.L1_RS_PRODUCT, TradeoffKind.L1_RS_ADDITIVE):
        return l1_coherence(rho, basis).value

    search, grid_objective = {
        TradeoffKind.NRE_PRODUCT: (q_nre, GridObjective.Q_NRE),
        TradeoffKind.NRE_ADDITIVE: (q_nre, GridObjective.Q_NRE),
        TradeoffKind.NCL_PRODUCT: (q_ncl, GridObjective.Q_NCL),
        TradeoffKind.EPSILON_PRODUCT: (epsilon, GridObjective.EPSILON),
        TradeoffKind.DELTA_PRODUCT: (delta, GridObjective.DELTA),
    }[kind]
    value = search(rho, basis, cfg).value
    if rho.dim == 2:
        value = max(value, qubit_grid_supremum(grid_objective, rho, basis, grid_resolution).value)
    return value


def tradeoff_bound(
    rho: DensityOperator,
    basis_a: PvmBasis,
    basis_b: PvmBasis,
    cfg: OptConfig,
    kind: TradeoffKind,
    slack: Optional[float] = None,
    grid_resolution: Optional[int] = None,
) -> BoundReport:
    """
    Check one trade-off relation between the measures of ``rho`` in two bases.

    The right-hand side is the best-found supremum over both spectra with the
    eigenprojectors fixed to ``basis_a`` and ``basis_b``. Left-hand side suprema
    are grid-certified for ``d = 2``; for ``d > 2`` both sides are best-found
    and the report is flagged heuristic.

    Raises:
        DimensionMismatchError: If the dimensions differ
    """
    d = _require_dims(rho, basis_a, basis_b)
    expression = PairExpression.COMMUTATOR if kind.uses_commutator else PairExpression.RS_ROOT
    pair = sup_pair_spectra(rho, basis_a, basis_b, expression, cfg)
    s = max(pair.value, 0.0) if np.isfinite(pair.value) else 0.0

    qa = _measure_supremum(kind, rho, basis_a, cfg, grid_resolution)
    qb = _measure_supremum(kind, rho, basis_b, cfg, grid_resolution)

    if kind is TradeoffKind.EPSILON_PRODUCT:
        # the weights p_b sum to d over the (a, b) grid, so only d * eps^2 >= Q_NRe^2 holds
        lhs, rhs = d * qa * qb, 0.25 * s * s
    elif kind in (TradeoffKind.NRE_ADDITIVE, TradeoffKind.L1_ADDITIVE):
        lhs, rhs = qa + qb, s
    elif kind is TradeoffKind.L1_RS_ADDITIVE:
        lhs, rhs = qa + qb, s - 2.0
    elif kind in (TradeoffKind.NCL_PRODUCT, TradeoffKind.L1_RS_PRODUCT):
        lhs, rhs = (qa + 1.0) * (qb + 1.0), 0.25 * s * s
    elif kind is TradeoffKind.DELTA_PRODUCT:
        lhs, rhs = qa * qb, max(0.0, 0.5 * s - 1.0) ** 2
    else:
        lhs, rhs = qa * qb, 0.25 * s * s

    report = BoundReport.check(
        kind.inequality_id,
        lhs,
        rhs,
        tolerance=slack,
        heuristic=d > 2,
        witness=f"kind={kind.value} d={d} sup={s:.12g} {pair.summary()}",
    )
    logger.debug("trade-off checked", extra={"kind": kind.value, "lhs": report.lhs, "rhs": report.rhs})
    return report
