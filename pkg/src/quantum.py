"""Validated quantum domain types and the KD, weak-value and three-term decomposition constructions."""

import hashlib
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import numpy.typing as npt

from src.config import settings
from src.exceptions import (
    DegenerateShiftedOperatorError,
    DimensionMismatchError,
    InvariantError,
    NotQubitError,
    ZeroOperatorError,
    ZeroPostselectionProbabilityError,
)
from src.linalg import (
    ComplexMatrix,
    RealVector,
    as_matrix,
    eig_hermitian,
    hermiticity_defect,
    projector,
    require_square,
)

STATE_TOLERANCE = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def _fingerprint(kind: str, matrix: np.ndarray) -> str:
    digest = hashlib.sha1(np.round(matrix, 12).tobytes()).hexdigest()[:12]
    return f"{kind}:{digest}"


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, positive semidefinite, unit-trace matrix."""

    matrix: ComplexMatrix
    label: str = ""

    def __post_init__(self) -> None:
        m = as_matrix(self.matrix)
        require_square(m)
        defect = hermiticity_defect(m)
        if defect > STATE_TOLERANCE:
            raise InvariantError("hermitian defect", defect)
        m = 0.5 * (m + m.conj().T)
        trace = float(np.trace(m).real)
        if abs(trace - 1.0) > STATE_TOLERANCE:
            raise InvariantError("trace", trace)
        min_eigenvalue = float(np.linalg.eigvalsh(m)[0])
        if min_eigenvalue < -STATE_TOLERANCE:
            raise InvariantError("min eigenvalue", min_eigenvalue)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def ref(self) -> str:
        return self.label or _fingerprint("rho", self.matrix)

    @classmethod
    def pure(cls, vector: npt.ArrayLike, label: str = "") -> "DensityOperator":
        psi = np.asarray(vector, dtype=np.complex128).reshape(-1)
        return cls(projector(psi / np.linalg.norm(psi)), label=label)

    @classmethod
    def maximally_mixed(cls, d: int) -> "DensityOperator":
        return cls(np.eye(d, dtype=np.complex128) / d, label=f"I/{d}")

    def expectation(self, operator: np.ndarray) -> complex:
        """``Tr{X rho}``."""
        return complex(np.trace(operator @ self.matrix))


@dataclass(frozen=True)
class PvmBasis:
    """Rank-1 PVM given by the orthonormal columns ``|x_0>, ..., |x_{d-1}>``."""

    vectors: ComplexMatrix
    label: str = ""

    def __post_init__(self) -> None:
        v = as_matrix(self.vectors)
        require_square(v)
        defect = float(np.max(np.abs(v.conj().T @ v - np.eye(v.shape[0])))) if v.size else 0.0
        if defect > STATE_TOLERANCE:
            raise InvariantError("orthonormal columns", defect)
        object.__setattr__(self, "vectors", v)

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def ref(self) -> str:
        return self.label or _fingerprint("basis", self.projectors())

    @classmethod
    def computational(cls, d: int) -> "PvmBasis":
        return cls(np.eye(d, dtype=np.complex128), label=f"computational-{d}")

    @classmethod
    def from_unitary(cls, unitary: npt.ArrayLike, label: str = "") -> "PvmBasis":
        return cls(np.asarray(unitary, dtype=np.complex128), label=label)

    @classmethod
    def eigenbasis(cls, hermitian: npt.ArrayLike, label: str = "") -> "PvmBasis":
        """Eigenbasis in ascending eigenvalue order."""
        return cls(eig_hermitian(hermitian).eigenvectors, label=label)

    def vector(self, index: int) -> np.ndarray:
        return self.vectors[:, index]

    def projector(self, index: int) -> ComplexMatrix:
        return projector(self.vectors[:, index])

    def projectors(self) -> np.ndarray:
        """Stack of projectors, shape ``(d, d, d)`` indexed by outcome first."""
        return np.einsum("ix,jx->xij", self.vectors, self.vectors.conj())

    def mutual_overlaps(self, other: "PvmBasis") -> RealVector:
        """Matrix of ``|<x|y>|^2`` with rows indexed by this basis."""
        _require_same_dim(self, other)
        return np.abs(self.vectors.conj().T @ other.vectors) ** 2


@dataclass(frozen=True)
class Observable:
    """Hermitian operator ``A = sum_a a Pi_a`` stored as basis and real spectrum."""

    basis: PvmBasis
    spectrum: RealVector

    def __post_init__(self) -> None:
        values = np.asarray(self.spectrum, dtype=np.float64).reshape(-1)
        if values.shape[0] != self.basis.dim:
            raise DimensionMismatchError(f"spectrum has {values.shape[0]} values for dimension {self.basis.dim}")
        if not np.all(np.isfinite(values)):
            raise InvariantError("finite spectrum")
        object.__setattr__(self, "spectrum", values)

    @classmethod
    def from_matrix(cls, hermitian: npt.ArrayLike) -> "Observable":
        system = eig_hermitian(hermitian)
        return cls(PvmBasis(system.eigenvectors), system.eigenvalues)

    @property
    def dim(self) -> int:
        return self.basis.dim

    def matrix(self) -> ComplexMatrix:
        v = self.basis.vectors
        return (v * self.spectrum) @ v.conj().T

    def operator_norm(self) -> float:
        return float(np.max(np.abs(self.spectrum)))

    def normalized(self) -> ComplexMatrix:
        """``A / ||A||_inf``."""
        norm = self.operator_norm()
        if norm <= 0.0:
            raise ZeroOperatorError("cannot normalize an operator with zero spectrum")
        return self.matrix() / norm

    def shifted_norm(self, rho: DensityOperator) -> float:
        """``||A - Tr{A rho} I||_inf``."""
        _require_same_dim(self, rho)
        mean = float(np.real(rho.expectation(self.matrix())))
        return float(np.max(np.abs(self.spectrum - mean)))

    def shifted_normalized(self, rho: DensityOperator) -> ComplexMatrix:
        """``A / ||A - Tr{A rho} I||_inf``."""
        norm = self.shifted_norm(rho)
        if norm <= settings.degenerate_threshold:
            raise DegenerateShiftedOperatorError(f"||A - <A>I||_inf = {norm:.3e}")
        return self.matrix() / norm

    def affine(self, scale: float, shift: float = 0.0) -> "Observable":
        """``scale * A + shift * I`` on the same eigenbasis."""
        return Observable(self.basis, scale * self.spectrum + shift)


@dataclass(frozen=True)
class KdDistribution:
    """Table ``Pr_KD(a, b | rho) = Tr{Pi_b Pi_a rho}`` with provenance."""

    table: ComplexMatrix
    state_ref: str = ""
    basis_a_ref: str = ""
    basis_b_ref: str = ""

    @property
    def dims(self) -> tuple[int, int]:
        return int(self.table.shape[0]), int(self.table.shape[1])

    def total(self) -> complex:
        return complex(np.sum(self.table))

    def marginal_a(self) -> np.ndarray:
        """``sum_b Pr(a, b)``, equal to ``Tr{Pi_a rho}``."""
        return np.sum(self.table, axis=1)

    def marginal_b(self) -> np.ndarray:
        """``sum_a Pr(a, b)``, equal to ``Tr{Pi_b rho}``."""
        return np.sum(self.table, axis=0)


@dataclass(frozen=True)
class JohansenTerms:
    """Joint two-measurement probability plus the two quantum modification terms."""

    classical: RealVector
    real_mod: RealVector
    imag_mod: RealVector

    def reconstruct(self) -> ComplexMatrix:
        """``classical + real_mod / 2 - i imag_mod / 2``."""
        return self.classical + 0.5 * self.real_mod - 0.5j * self.imag_mod


@dataclass
class QubitAngles:
    """Bloch-sphere description of a qubit state: radius, polar angle and azimuth."""

    r: float
    phi_z: float
    phi_01: float = field(default=0.0)


def _require_same_dim(*objects: object) -> None:
    dims = {getattr(o, "dim") for o in objects}
    if len(dims) != 1:
        raise DimensionMismatchError(f"inconsistent dimensions {sorted(dims)}")


def kd_table(rho: np.ndarray, va: np.ndarray, vb: np.ndarray) -> ComplexMatrix:
    """Unvalidated kernel of :func:`kd_distribution` on raw arrays; columns of ``va``/``vb`` are the basis vectors."""
    overlaps = va.T @ vb.conj()  # [a, b] = <b|a>
    elements = va.conj().T @ rho @ vb  # [a, b] = <a|rho|b>
    return overlaps * elements


def sequential_table(rho: np.ndarray, va: np.ndarray, vb: np.ndarray) -> RealVector:
    """Joint probability ``Tr{Pi_b Pi_a rho Pi_a} = |<a|b>|^2 <a|rho|a>`` of measuring ``a`` then ``b``."""
    populations = np.real(np.einsum("ia,ij,ja->a", va.conj(), rho, va))
    return np.abs(va.conj().T @ vb) ** 2 * populations[:, None]


def kd_distribution(rho: DensityOperator, basis_a: PvmBasis, basis_b: PvmBasis) -> KdDistribution:
    """
    Kirkwood-Dirac quasiprobability ``Tr{Pi_b Pi_a rho} = <b|a><a|rho|b>``.

    Rows follow the construction order of ``basis_a``, columns that of ``basis_b``.

    Raises:
        DimensionMismatchError: If the dimensions differ
    """
    _require_same_dim(rho, basis_a, basis_b)
    return KdDistribution(
        table=kd_table(rho.matrix, basis_a.vectors, basis_b.vectors),
        state_ref=rho.ref,
        basis_a_ref=basis_a.ref,
        basis_b_ref=basis_b.ref,
    )


def weak_value(
    a: int,
    rho: DensityOperator,
    basis_a: PvmBasis,
    post_state: npt.ArrayLike,
    threshold: Optional[float] = None,
) -> complex:
    """
    Weak value ``Tr{Pi_b Pi_a rho} / Tr{Pi_b rho}`` of ``Pi_a`` postselected on ``|b>``.

    Raises:
        ZeroPostselectionProbabilityError: If ``Tr{Pi_b rho}`` is not above ``threshold``
    """
    _require_same_dim(rho, basis_a)
    threshold = settings.postselection_threshold if threshold is None else threshold
    b = np.asarray(post_state, dtype=np.complex128).reshape(-1)
    if b.shape[0] != rho.dim:
        raise DimensionMismatchError(f"post-selected state has length {b.shape[0]} for dimension {rho.dim}")
    probability = float(np.real(b.conj() @ rho.matrix @ b))
    if probability <= threshold:
        raise ZeroPostselectionProbabilityError(f"Tr{{Pi_b rho}} = {probability:.3e}")
    va = basis_a.vector(a)
    numerator = (b.conj() @ va) * (va.conj() @ rho.matrix @ b)
    return complex(numerator / probability)


def nonselective_binary_update(rho: DensityOperator, proj: np.ndarray) -> DensityOperator:
    """
    Lueders update ``Pi rho Pi + (I - Pi) rho (I - Pi)`` for the binary measurement ``{Pi, I - Pi}``.

    Raises:
        DimensionMismatchError: If the projector and state shapes differ
        InvariantError: If ``proj`` is not a Hermitian rank-1 projector
    """
    p = as_matrix(proj)
    if p.shape != rho.matrix.shape:
        raise DimensionMismatchError(f"projector shape {p.shape} vs state shape {rho.matrix.shape}")
    defect = hermiticity_defect(p)
    if defect > STATE_TOLERANCE:
        raise InvariantError("hermiticity defect", defect, "binary update projector")
    idempotence = float(np.max(np.abs(p @ p - p)))
    if idempotence > STATE_TOLERANCE:
        raise InvariantError("idempotence defect", idempotence, "binary update projector")
    rank = float(np.real(np.trace(p)))
    if abs(rank - 1.0) > STATE_TOLERANCE:
        raise InvariantError("projector rank", rank, "binary update needs a rank-1 projector")
    q = np.eye(rho.dim) - p
    return DensityOperator(p @ rho.matrix @ p + q @ rho.matrix @ q)


def phase_rotation(proj_a: np.ndarray, angle: float = np.pi / 2) -> ComplexMatrix:
    """Exact ``exp(i angle Pi_a) = I + (exp(i angle) - 1) Pi_a`` for a projector."""
    p = as_matrix(proj_a)
    return np.eye(p.shape[0], dtype=np.complex128) + (np.exp(1j * angle) - 1.0) * p


def rotated_projector(proj_b: np.ndarray, proj_a: np.ndarray, angle: float = np.pi / 2) -> ComplexMatrix:
    """
    ``Pi_{b|a}^{angle} = exp(i angle Pi_a) Pi_b exp(-i angle Pi_a)``.

    Raises:
        DimensionMismatchError: If the projectors have different shapes
    """
    pb, pa = as_matrix(proj_b), as_matrix(proj_a)
    if pb.shape != pa.shape:
        raise DimensionMismatchError(f"projector shapes {pb.shape} and {pa.shape} differ")
    u = phase_rotation(pa, angle)
    return u @ pb @ u.conj().T


def rotated_basis(basis_b: PvmBasis, proj_a: np.ndarray, angle: float = np.pi / 2) -> PvmBasis:
    """The family ``{Pi_{b|a}^{angle}}_b`` as a basis; it is again a rank-1 PVM."""
    u = phase_rotation(proj_a, angle)
    if u.shape[0] != basis_b.dim:
        raise DimensionMismatchError(f"projector dimension {u.shape[0]} vs basis dimension {basis_b.dim}")
    return PvmBasis(u @ basis_b.vectors)


def disturbance_operators(rho: DensityOperator, basis_a: PvmBasis) -> np.ndarray:
    """Stack of ``rho - rho_{Pi_a}`` over ``a``, shape ``(d, d, d)``."""
    _require_same_dim(rho, basis_a)
    projectors = basis_a.projectors()
    r = rho.matrix
    # rho - rho_P = P rho + rho P - 2 P rho P
    return projectors @ r + r @ projectors - 2.0 * projectors @ r @ projectors


def johansen_decomposition(rho: DensityOperator, basis_a: PvmBasis, basis_b: PvmBasis) -> JohansenTerms:
    """
    Split the KD table into a joint probability and two modification terms.

    ``classical(a, b) = Tr{Pi_b Pi_a rho Pi_a}``, ``real_mod(a, b) = Tr{(rho - rho_{Pi_a}) Pi_b}``
    and ``imag_mod(a, b)`` is the expectation of ``rho - rho_{Pi_a}`` on ``Pi_b`` rotated by
    ``exp(-i Pi_a pi/2)``, so ``classical + real_mod/2 - i imag_mod/2`` is the KD table.

    Raises:
        DimensionMismatchError: If the dimensions differ
    """
    _require_same_dim(rho, basis_a, basis_b)
    vb = basis_b.vectors
    classical = sequential_table(rho.matrix, basis_a.vectors, vb)

    deltas = disturbance_operators(rho, basis_a)
    real_mod = np.real(np.einsum("ib,aij,jb->ab", vb.conj(), deltas, vb))

    imag_mod = np.empty_like(real_mod)
    for a in range(basis_a.dim):
        u = phase_rotation(basis_a.projector(a), -np.pi / 2)
        rotated = u @ vb
        imag_mod[a] = np.real(np.einsum("ib,ij,jb->b", rotated.conj(), deltas[a], rotated))
    return JohansenTerms(classical=classical, real_mod=real_mod, imag_mod=imag_mod)


def reconstruct_state(dist: KdDistribution, basis_a: PvmBasis, basis_b: PvmBasis) -> DensityOperator:
    """
    Invert a KD table: ``rho = sum_{a,b} Pr(a, b) |a><b| / <b|a>``.

    Raises:
        ZeroPostselectionProbabilityError: If some ``<b|a>`` vanishes (the table is then not informationally complete)
    """
    _require_same_dim(basis_a, basis_b)
    va, vb = basis_a.vectors, basis_b.vectors
    overlaps = (vb.conj().T @ va).T
    if np.min(np.abs(overlaps)) <= settings.postselection_threshold:
        raise ZeroPostselectionProbabilityError("bases have a vanishing overlap <b|a>")
    weights = dist.table / overlaps
    return DensityOperator(va @ weights @ vb.conj().T)


def purity(rho: DensityOperator) -> float:
    """``Tr{rho^2}``."""
    return float(np.real(np.trace(rho.matrix @ rho.matrix)))


def bloch_state(r_vector: npt.ArrayLike) -> DensityOperator:
    """Qubit state ``(I + r . sigma) / 2``."""
    rx, ry, rz = np.asarray(r_vector, dtype=np.float64)
    matrix = 0.5 * (np.eye(2) + rx * PAULI_X + ry * PAULI_Y + rz * PAULI_Z)
    return DensityOperator(matrix)


def bloch_vector(rho: DensityOperator) -> RealVector:
    if rho.dim != 2:
        raise NotQubitError(f"Bloch vector needs d = 2, got {rho.dim}")
    return np.array([np.real(rho.expectation(p)) for p in (PAULI_X, PAULI_Y, PAULI_Z)])


def bloch_state_from_angles(angles: QubitAngles) -> DensityOperator:
    """State with Bloch radius ``r``, polar angle ``phi_z`` and azimuth ``phi_01``."""
    r, theta, azimuth = angles.r, angles.phi_z, angles.phi_01
    return bloch_state([r * np.sin(theta) * np.cos(azimuth), r * np.sin(theta) * np.sin(azimuth), r * np.cos(theta)])
