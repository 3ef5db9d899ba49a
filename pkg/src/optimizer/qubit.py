"""Exact qubit solutions and dense Bloch-sphere grid oracles used to certify the searches in d = 2."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

import numpy as np

from src.config import settings
from src.exceptions import NotQubitError
from src.linalg import RealVector
from src.measures import commutator_bound
from src.optimizer.chart import SpectrumParams, givens_block
from src.quantum import (
    DensityOperator,
    Observable,
    PvmBasis,
    QubitAngles,
    bloch_state_from_angles,
)

# Points per axis when zooming in on the best grid cell.
ZOOM_RESOLUTION = 41


class GridObjective(str, Enum):
    """Second-basis objectives the grid oracle can maximize."""

    Q_NRE = "q_nre"
    Q_NCL = "q_ncl"
    EPSILON = "epsilon"
    DELTA = "delta"


@dataclass(frozen=True)
class QubitSolution:
    """
    Closed-form maximal KD nonreality of a qubit.

    ``optimal_b`` is mutually unbiased with ``basis_a``. When ``<0|rho|1> = 0``
    the phase is undefined, ``phase_defined`` is False and ``optimal_b`` is the
    sigma_y eigenbasis written in ``basis_a`` coordinates.
    """

    q_nre: float
    optimal_b: PvmBasis
    phi01: float
    phase_defined: bool = True


@dataclass(frozen=True)
class GridResult:
    value: float
    alpha: float
    beta: float

    def basis(self) -> PvmBasis:
        return qubit_basis(self.alpha, self.beta)


def _require_qubit(rho: DensityOperator, basis_a: Optional[PvmBasis] = None) -> None:
    dims = {rho.dim} | ({basis_a.dim} if basis_a is not None else set())
    if dims != {2}:
        raise NotQubitError(f"qubit routine needs d = 2, got {sorted(dims)}")


def qubit_basis(alpha: float, beta: float) -> PvmBasis:
    """``cos(alpha/2)|0> + e^{i beta} sin(alpha/2)|1>`` and its orthogonal partner ``sin(alpha/2)|0> - e^{i beta} cos(alpha/2)|1>``."""
    return PvmBasis(givens_block(alpha, beta))


def qubit_analytic(rho: DensityOperator, basis_a: PvmBasis) -> QubitSolution:
    """
    ``Q_NRe = 2 |<0|rho|1>|`` in ``basis_a`` coordinates, attained at ``alpha = pi/2``,
    ``beta = phi01 + pi/2`` with ``phi01 = -arg <0|rho|1>``.

    Raises:
        NotQubitError: If ``d != 2``
    """
    _require_qubit(rho, basis_a)
    va = basis_a.vectors
    coherence = complex((va.conj().T @ rho.matrix @ va)[0, 1])
    phase_defined = abs(coherence) > settings.degenerate_threshold
    phi01 = float(-np.angle(coherence)) if phase_defined else 0.0
    local = qubit_basis(np.pi / 2, phi01 + np.pi / 2).vectors
    return QubitSolution(
        q_nre=2.0 * abs(coherence),
        optimal_b=PvmBasis(va @ local),
        phi01=phi01,
        phase_defined=phase_defined,
    )


def _grid_vectors(alphas: np.ndarray, betas: np.ndarray) -> np.ndarray:
    """Basis vectors on an ``(alpha, beta)`` mesh, shape ``(n_alpha, n_beta, 2, 2)`` with columns as outcomes."""
    a, b = np.meshgrid(alphas, betas, indexing="ij")
    c, s, phase = np.cos(a / 2.0), np.sin(a / 2.0), np.exp(1j * b)
    vectors = np.empty(a.shape + (2, 2), dtype=np.complex128)
    vectors[..., 0, 0] = c
    vectors[..., 1, 0] = phase * s
    vectors[..., 0, 1] = s
    vectors[..., 1, 1] = -phase * c
    return vectors


def _grid_values(objective: GridObjective, local_rho: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    # basis_a is the computational basis in local coordinates: <b|a> = conj(V[a, b]), <a|rho|b> = (rho V)[a, b]
    table = vectors.conj() * np.einsum("ij,...jb->...ib", local_rho, vectors)
    if objective is GridObjective.Q_NRE:
        return np.sum(np.abs(table.imag), axis=(-2, -1))
    if objective is GridObjective.Q_NCL:
        return np.sum(np.abs(table), axis=(-2, -1)) - 1.0
    if objective is GridObjective.EPSILON:
        p_b = np.real(np.sum(table, axis=-2))
        safe = np.where(p_b > settings.postselection_threshold, p_b, np.inf)
        return np.sqrt(np.sum(table.imag**2 / safe[..., None, :], axis=(-2, -1)))
    populations = np.real(np.diag(local_rho))
    classical = np.abs(vectors) ** 2 * populations[:, None]
    return np.sum(np.abs(2.0 * (table.real - classical)), axis=(-2, -1))


def qubit_grid_supremum(
    objective: GridObjective,
    rho: DensityOperator,
    basis_a: PvmBasis,
    resolution: Optional[int] = None,
    zoom_levels: int = 3,
) -> GridResult:
    """
    Maximize a second-basis objective over a dense ``(alpha, beta)`` grid of qubit bases.

    The coarse grid has ``resolution`` points on ``[0, pi]`` and on ``[0, 2 pi)``;
    each zoom level then re-grids the neighbourhood of the best cell. The result
    is a lower estimate of the supremum whose gap shrinks with the final cell size.
    The returned angles describe the second basis in ``basis_a`` coordinates.

    Raises:
        NotQubitError: If ``d != 2``
    """
    _require_qubit(rho, basis_a)
    resolution = resolution or settings.grid_resolution
    va = basis_a.vectors
    local_rho = va.conj().T @ rho.matrix @ va

    alphas = np.linspace(0.0, np.pi, resolution)
    betas = np.linspace(0.0, 2.0 * np.pi, resolution, endpoint=False)
    step_alpha, step_beta = alphas[1] - alphas[0], betas[1] - betas[0]
    best = (-np.inf, 0.0, 0.0)
    for _ in range(zoom_levels + 1):
        values = _grid_values(objective, local_rho, _grid_vectors(alphas, betas))
        i, j = np.unravel_index(int(np.argmax(values)), values.shape)
        if values[i, j] > best[0]:
            best = (float(values[i, j]), float(alphas[i]), float(betas[j]))
        alphas = np.linspace(best[1] - 2 * step_alpha, best[1] + 2 * step_alpha, ZOOM_RESOLUTION)
        betas = np.linspace(best[2] - 2 * step_beta, best[2] + 2 * step_beta, ZOOM_RESOLUTION)
        step_alpha, step_beta = alphas[1] - alphas[0], betas[1] - betas[0]
    return GridResult(value=best[0], alpha=best[1], beta=best[2])


def qubit_additive_closed_form(r: float, phi_z: float, alpha: float, beta_minus_phi01: float) -> float:
    """``2 r |sin phi_z| |sin alpha| |sin(beta - phi01)|``: right-hand side of the additive NRe trade-off on a qubit."""
    return float(2.0 * r * abs(np.sin(phi_z)) * abs(np.sin(alpha)) * abs(np.sin(beta_minus_phi01)))


@dataclass(frozen=True)
class ScanResult:
    """Additive trade-off over an ``(alpha, phi_z)`` grid at fixed ``r`` and ``beta - phi01``."""

    r: float
    beta_minus_phi01: float
    alphas: RealVector
    phi_zs: RealVector
    numeric: np.ndarray
    closed_form: np.ndarray
    lhs: np.ndarray

    @property
    def max_deviation(self) -> float:
        return float(np.max(np.abs(self.numeric - self.closed_form))) if self.numeric.size else 0.0

    @property
    def min_slack(self) -> float:
        return float(np.min(self.lhs - self.numeric)) if self.numeric.size else 0.0

    def rows(self) -> Iterator[tuple[float, float, float, float, float]]:
        for i, alpha in enumerate(self.alphas):
            for j, phi_z in enumerate(self.phi_zs):
                yield float(alpha), float(phi_z), float(self.lhs[i, j]), float(self.numeric[i, j]), float(self.closed_form[i, j])


def appendix_c_scan(
    r: float = 1.0,
    beta_minus_phi01: float = np.pi / 2,
    resolution: int = 50,
    phi01: float = 0.0,
) -> ScanResult:
    """
    Evaluate the qubit additive NRe trade-off on an ``(alpha, phi_z)`` grid.

    The state has Bloch radius ``r``, polar angle ``phi_z`` and azimuth ``phi01``;
    the first basis is computational and the second is :func:`qubit_basis` at
    ``(alpha, phi01 + beta_minus_phi01)``. The numeric right-hand side uses the
    exact qubit spectra ``(1, -1)``; the left-hand side sums the closed-form
    maximal nonrealities of both bases.
    """
    alphas = np.linspace(0.0, np.pi, resolution)
    phi_zs = np.linspace(0.0, np.pi, resolution)
    numeric = np.zeros((resolution, resolution))
    closed = np.zeros((resolution, resolution))
    lhs = np.zeros((resolution, resolution))

    basis_a = PvmBasis.computational(2)
    balanced = SpectrumParams.balanced(2).values
    a_obs = Observable(basis_a, balanced)
    for j, phi_z in enumerate(phi_zs):
        rho = bloch_state_from_angles(QubitAngles(r=r, phi_z=float(phi_z), phi_01=phi01))
        q_a = qubit_analytic(rho, basis_a).q_nre
        for i, alpha in enumerate(alphas):
            basis_b = qubit_basis(float(alpha), phi01 + beta_minus_phi01)
            numeric[i, j] = commutator_bound(a_obs, Observable(basis_b, balanced), rho).value
            closed[i, j] = qubit_additive_closed_form(r, float(phi_z), float(alpha), beta_minus_phi01)
            lhs[i, j] = q_a + qubit_analytic(rho, basis_b).q_nre
    return ScanResult(r, beta_minus_phi01, alphas, phi_zs, numeric, closed, lhs)
