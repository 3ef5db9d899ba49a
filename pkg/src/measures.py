"""Scalar functionals of fixed inputs: KD nonreality and nonclassicality, coherence, asymmetry and the pointwise bounds."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from src.config import settings
from src.exceptions import DimensionMismatchError
from src.linalg import anticommutator, commutator, trace_norm
from src.quantum import (
    DensityOperator,
    KdDistribution,
    Observable,
    PvmBasis,
    disturbance_operators,
    kd_table,
    rotated_projector,
    sequential_table,
)


class MeasureKind(str, Enum):
    """Which functional a :class:`MeasureValue` holds."""

    NRE = "NRe"
    NCL = "NCl"
    CL1 = "Cl1"
    ASYMMETRY = "Asymmetry"
    ROBERTSON_BOUND = "RobertsonBound"
    RS_BOUND = "RSBound"
    MSE_SQ = "MseSq"
    DISTURBANCE_TERM = "DisturbanceTerm"
    IMAG_MOD_TERM = "ImagModTerm"
    COMMUTATOR_BOUND = "CommutatorBound"
    RS_ROOT = "RSRoot"


@dataclass(frozen=True)
class MeasureValue:
    value: float
    kind: MeasureKind

    def __float__(self) -> float:
        return self.value


def _check(rho: DensityOperator, *others: object) -> None:
    for other in others:
        if getattr(other, "dim") != rho.dim:
            raise DimensionMismatchError(f"dimension {getattr(other, 'dim')} vs state dimension {rho.dim}")


# Table kernels shared with the optimizer objectives.


def nre_of_table(table: np.ndarray) -> float:
    return float(np.sum(np.abs(table.imag)))


def ncl_of_table(table: np.ndarray) -> float:
    return float(np.sum(np.abs(table))) - 1.0


def mse_sq_of_table(table: np.ndarray, threshold: Optional[float] = None) -> float:
    """``sum_{a,b} |Im Pr(a,b) / p_b|^2 p_b`` with ``p_b = sum_a Pr(a,b)``; columns with ``p_b <= threshold`` carry no weight."""
    threshold = settings.postselection_threshold if threshold is None else threshold
    p_b = np.real(np.sum(table, axis=0))
    keep = p_b > threshold
    if not np.any(keep):
        return 0.0
    return float(np.sum(table.imag[:, keep] ** 2 / p_b[keep]))


def disturbance_of_table(table: np.ndarray, classical: np.ndarray) -> float:
    """``sum |Tr{(rho - rho_{Pi_a}) Pi_b}|``, using ``Tr{(rho - rho_{Pi_a}) Pi_b} = 2 (Re Pr - classical)``."""
    return float(np.sum(np.abs(2.0 * (table.real - classical))))


# Fixed-input measures.


def nre(dist: KdDistribution) -> MeasureValue:
    """KD nonreality: ``sum_{a,b} |Im Pr(a, b)|``."""
    return MeasureValue(nre_of_table(dist.table), MeasureKind.NRE)


def ncl(dist: KdDistribution) -> MeasureValue:
    """KD nonclassicality: ``sum_{a,b} |Pr(a, b)| - 1``."""
    return MeasureValue(ncl_of_table(dist.table), MeasureKind.NCL)


def l1_coherence(rho: DensityOperator, basis: PvmBasis) -> MeasureValue:
    """Sum of off-diagonal moduli of ``rho`` written in ``basis``."""
    _check(rho, basis)
    elements = np.abs(basis.vectors.conj().T @ rho.matrix @ basis.vectors)
    return MeasureValue(float(np.sum(elements) - np.trace(elements)), MeasureKind.CL1)


def trace_norm_asymmetry(a: Observable, rho: DensityOperator, normalized: bool = False) -> MeasureValue:
    """
    ``||[A, rho]||_1 / 2``; with ``normalized`` the operator is first divided by ``||A||_inf``.

    Raises:
        DimensionMismatchError: If the dimensions differ
        ZeroOperatorError: If ``normalized`` and ``A`` vanishes
    """
    _check(rho, a)
    operator = a.normalized() if normalized else a.matrix()
    return MeasureValue(0.5 * trace_norm(commutator(operator, rho.matrix)), MeasureKind.ASYMMETRY)


def robertson_bound(a: Observable, b: Observable, rho: DensityOperator) -> MeasureValue:
    """
    Pointwise NRe lower bound ``|Tr{B~ [A~, rho]}| / 2`` with ``X~ = X / ||X||_inf``.

    Raises:
        ZeroOperatorError: If either operator vanishes
    """
    _check(rho, a, b)
    value = 0.5 * abs(np.trace(b.normalized() @ commutator(a.normalized(), rho.matrix)))
    return MeasureValue(float(value), MeasureKind.ROBERTSON_BOUND)


def commutator_bound(a: Observable, b: Observable, rho: DensityOperator) -> MeasureValue:
    """``|Tr{[A~, B~] rho}|``, twice :func:`robertson_bound`."""
    _check(rho, a, b)
    value = abs(np.trace(commutator(a.normalized(), b.normalized()) @ rho.matrix))
    return MeasureValue(float(value), MeasureKind.COMMUTATOR_BOUND)


def rs_root_of_matrices(a_shifted: np.ndarray, b_shifted: np.ndarray, rho: np.ndarray) -> float:
    """Root term for already shift-normalized operator matrices."""
    mean_a = np.trace(a_shifted @ rho)
    mean_b = np.trace(b_shifted @ rho)
    antisymmetric = np.trace(rho @ commutator(a_shifted, b_shifted))
    symmetric = np.trace(rho @ anticommutator(a_shifted, b_shifted)) - 2.0 * mean_a * mean_b
    return float(np.sqrt(abs(antisymmetric) ** 2 + abs(symmetric) ** 2))


def rs_root(a: Observable, b: Observable, rho: DensityOperator) -> MeasureValue:
    """
    ``(|Tr{rho [A~_rho, B~_rho]_-}|^2 + |Tr{rho [A~_rho, B~_rho]_+} - 2 <A~_rho><B~_rho>|^2)^(1/2)``.

    ``X~_rho = X / ||X - Tr{X rho} I||_inf``. The value never exceeds 2.

    Raises:
        DegenerateShiftedOperatorError: If a shifted normalizer vanishes
    """
    _check(rho, a, b)
    value = rs_root_of_matrices(a.shifted_normalized(rho), b.shifted_normalized(rho), rho.matrix)
    return MeasureValue(value, MeasureKind.RS_ROOT)


def rs_bound(a: Observable, b: Observable, rho: DensityOperator) -> MeasureValue:
    """
    Pointwise NCl lower bound ``rs_root / 2 - 1``, returned unclamped.

    Since ``rs_root <= 2`` the value is at most 0; callers flag a non-positive
    right-hand side as trivially satisfied.
    """
    root = rs_root(a, b, rho).value
    return MeasureValue(0.5 * root - 1.0, MeasureKind.RS_BOUND)


def mse_sq_term(rho: DensityOperator, basis_a: PvmBasis, basis_b: PvmBasis) -> MeasureValue:
    """
    Mean-squared error summand ``sum_{a,b} |Im weak value|^2 Tr{Pi_b rho}`` at a fixed ``basis_b``.

    Outcomes ``b`` with ``Tr{Pi_b rho} <= 1e-14`` are skipped.
    """
    _check(rho, basis_a, basis_b)
    table = kd_table(rho.matrix, basis_a.vectors, basis_b.vectors)
    return MeasureValue(mse_sq_of_table(table), MeasureKind.MSE_SQ)


def disturbance_term(rho: DensityOperator, basis_a: PvmBasis, basis_b: PvmBasis) -> MeasureValue:
    """``sum_{a,b} |Tr{(rho - rho_{Pi_a}) Pi_b}|`` at a fixed ``basis_b``."""
    _check(rho, basis_a, basis_b)
    va, vb = basis_a.vectors, basis_b.vectors
    table = kd_table(rho.matrix, va, vb)
    value = disturbance_of_table(table, sequential_table(rho.matrix, va, vb))
    return MeasureValue(value, MeasureKind.DISTURBANCE_TERM)


def imag_mod_term(rho: DensityOperator, basis_a: PvmBasis, basis_b: PvmBasis) -> MeasureValue:
    """``sum_{a,b} |Tr{(rho - rho_{Pi_a}) Pi_{b|a}^{pi/2}}|`` evaluated from the rotated projectors; equals ``2 NRe``."""
    _check(rho, basis_a, basis_b)
    deltas = disturbance_operators(rho, basis_a)
    total = 0.0
    for a in range(rho.dim):
        proj_a = basis_a.projector(a)
        for b in range(rho.dim):
            rotated = rotated_projector(basis_b.projector(b), proj_a)
            total += abs(np.trace(deltas[a] @ rotated))
    return MeasureValue(float(total), MeasureKind.IMAG_MOD_TERM)
