"""Dense complex matrix kernel used by every other module."""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.linalg import qr

from src.exceptions import (
    InvalidDimensionError,
    InvalidRankError,
    InvariantError,
    NotHermitianError,
    NotSquareError,
)

ComplexMatrix = npt.NDArray[np.complex128]
RealVector = npt.NDArray[np.float64]

HERMITIAN_TOLERANCE = 1e-10


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues in ascending order with the matching unitary of column eigenvectors."""

    eigenvalues: RealVector
    eigenvectors: ComplexMatrix

    def reconstruct(self) -> ComplexMatrix:
        """Return ``V diag(lambda) V^dagger``."""
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T


def as_matrix(entries: npt.ArrayLike) -> ComplexMatrix:
    """Coerce to a finite complex128 2-D array."""
    matrix = np.asarray(entries, dtype=np.complex128)
    if matrix.ndim != 2:
        raise NotSquareError(f"expected a 2-D matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise InvariantError("finite entries", detail="matrix contains NaN or Inf")
    return matrix


def is_square(matrix: np.ndarray) -> bool:
    """Check if matrix is square."""
    return matrix.ndim == 2 and matrix.shape[0] == matrix.shape[1]


def require_square(matrix: np.ndarray) -> None:
    if not is_square(matrix):
        raise NotSquareError(f"expected a square matrix, got shape {matrix.shape}")


def hermiticity_defect(matrix: np.ndarray) -> float:
    """Largest entry of ``|M - M^dagger|``."""
    require_square(matrix)
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def require_hermitian(matrix: np.ndarray, tol: float = HERMITIAN_TOLERANCE) -> None:
    defect = hermiticity_defect(matrix)
    if defect > tol:
        raise NotHermitianError(f"max |M - M^dagger| = {defect:.3e} exceeds {tol:.1e}")


def commutator(x: np.ndarray, y: np.ndarray) -> ComplexMatrix:
    """``[X, Y]_- = XY - YX``."""
    return x @ y - y @ x


def anticommutator(x: np.ndarray, y: np.ndarray) -> ComplexMatrix:
    """``[X, Y]_+ = XY + YX``."""
    return x @ y + y @ x


def projector(vector: np.ndarray) -> ComplexMatrix:
    """Rank-1 projector ``|v><v|`` for a unit vector."""
    column = np.asarray(vector, dtype=np.complex128).reshape(-1)
    return np.outer(column, column.conj())


def eig_hermitian(matrix: npt.ArrayLike, tol: float = HERMITIAN_TOLERANCE) -> EigenSystem:
    """
    Eigendecomposition of a Hermitian matrix.

    The input is symmetrized before handing it to LAPACK, so entries that are
    Hermitian only to within ``tol`` still yield an exactly unitary eigenbasis.
    Inside a degenerate cluster the eigenvectors are orthonormal but otherwise
    arbitrary.

    Args:
        matrix: Square matrix, Hermitian within ``tol`` (max entry of ``|M - M^dagger|``)
        tol: Hermiticity tolerance

    Returns:
        EigenSystem with ascending eigenvalues

    Raises:
        NotSquareError: If the matrix is not square
        NotHermitianError: If the Hermiticity tolerance is violated
    """
    m = as_matrix(matrix)
    require_square(m)
    require_hermitian(m, tol)
    eigenvalues, eigenvectors = np.linalg.eigh(0.5 * (m + m.conj().T))
    return EigenSystem(eigenvalues=eigenvalues.astype(np.float64), eigenvectors=eigenvectors)


def singular_values(matrix: npt.ArrayLike) -> RealVector:
    m = as_matrix(matrix)
    require_square(m)
    return np.linalg.svd(m, compute_uv=False)


def trace_norm(matrix: npt.ArrayLike) -> float:
    """Schatten 1-norm ``Tr sqrt(M M^dagger)``, the sum of singular values."""
    return float(np.sum(singular_values(matrix)))


def operator_norm(matrix: npt.ArrayLike) -> float:
    """Largest eigenvalue modulus of a Hermitian matrix."""
    m = as_matrix(matrix)
    require_square(m)
    require_hermitian(m)
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvalsh(0.5 * (m + m.conj().T)))))


def sign_operator(matrix: npt.ArrayLike) -> ComplexMatrix:
    """
    Hermitian unitary ``sum sign(lambda) |v><v|`` of a Hermitian matrix.

    Zero eigenvalues are mapped to +1 so the result always has unit operator norm.
    """
    system = eig_hermitian(matrix)
    signs = np.where(system.eigenvalues < 0.0, -1.0, 1.0)
    return (system.eigenvectors * signs) @ system.eigenvectors.conj().T


def ginibre(rows: int, cols: int, rng: np.random.Generator) -> ComplexMatrix:
    """Matrix of i.i.d. standard complex Gaussians."""
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


def haar_random_unitary(d: int, seed: int | np.random.Generator) -> ComplexMatrix:
    """
    Haar-random unitary from the QR decomposition of a Ginibre matrix.

    The phases of R's diagonal are moved into Q so the distribution is exactly Haar.

    Raises:
        InvalidDimensionError: If ``d < 1``
    """
    if d < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {d}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = ginibre(d, d, rng)
    q, r = qr(z)
    diagonal = np.diag(r)
    phases = diagonal / np.abs(diagonal)
    return q * phases


def random_density(
    d: int,
    rank: int,
    seed: int | np.random.Generator,
    eigenvalues: npt.ArrayLike | None = None,
) -> ComplexMatrix:
    """
    Random density matrix of a given rank.

    Without ``eigenvalues`` the state is ``G G^dagger / Tr`` for a ``d x rank``
    Ginibre matrix ``G`` (induced measure). With ``eigenvalues`` the spectrum is
    fixed and only the eigenbasis is Haar-random.

    Raises:
        InvalidDimensionError: If ``d < 1``
        InvalidRankError: If ``rank`` is outside ``[1, d]`` or inconsistent with ``eigenvalues``
    """
    if d < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {d}")
    if not 1 <= rank <= d:
        raise InvalidRankError(f"rank must satisfy 1 <= rank <= {d}, got {rank}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

    if eigenvalues is not None:
        spectrum = np.asarray(eigenvalues, dtype=np.float64)
        if spectrum.shape != (d,) or np.any(spectrum < 0.0):
            raise InvalidRankError("eigenvalues must be d nonnegative numbers")
        if int(np.count_nonzero(spectrum > 1e-12)) != rank:
            raise InvalidRankError(f"eigenvalues have rank {np.count_nonzero(spectrum > 1e-12)}, expected {rank}")
        spectrum = spectrum / spectrum.sum()
        u = haar_random_unitary(d, rng)
        rho = (u * spectrum) @ u.conj().T
    else:
        g = ginibre(d, rank, rng)
        rho = g @ g.conj().T
        rho = rho / np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


def random_hermitian(d: int, rng: np.random.Generator) -> ComplexMatrix:
    """GUE-like Hermitian matrix, used by property suites."""
    g = ginibre(d, d, rng)
    return 0.5 * (g + g.conj().T)
