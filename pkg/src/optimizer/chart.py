"""Coordinate charts: complex Givens products for rank-1 PVM bases and pinned spectra for normalized observables."""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from src.exceptions import BadParameterCountError, InvalidDimensionError, InvariantError
from src.linalg import ComplexMatrix, RealVector
from src.quantum import PvmBasis

# Chart point: rotation angles, block phases, then column phases.
PvmParams = RealVector


def pair_indices(d: int) -> list[tuple[int, int]]:
    """Ordered two-level blocks ``(i, j)``, ``i < j``."""
    return [(i, j) for i in range(d) for j in range(i + 1, d)]


def param_count(d: int) -> int:
    """``d(d-1)/2`` rotation angles, ``d(d-1)/2`` block phases and ``d-1`` column phases."""
    if d < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {d}")
    return d * d - 1


def givens_block(theta: float, phi: float) -> ComplexMatrix:
    """
    Two-level unitary whose columns are ``cos(theta/2)|i> + e^{i phi} sin(theta/2)|j>``
    and ``sin(theta/2)|i> - e^{i phi} cos(theta/2)|j>``.
    """
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    phase = np.exp(1j * phi)
    return np.array([[c, s], [phase * s, -phase * c]], dtype=np.complex128)


def decode_unitary(params: npt.ArrayLike, d: int) -> ComplexMatrix:
    """
    Unitary for a chart point, without validation of the result.

    Layout: rotation angles for :func:`pair_indices`, then the block phases in
    the same order, then the phases of columns ``1..d-1``.

    Raises:
        BadParameterCountError: If the parameter vector does not have ``d^2 - 1`` entries
    """
    x = np.asarray(params, dtype=np.float64).reshape(-1)
    expected = param_count(d)
    if x.shape[0] != expected:
        raise BadParameterCountError(f"dimension {d} needs {expected} parameters, got {x.shape[0]}")
    pairs = pair_indices(d)
    n_pairs = len(pairs)
    thetas, phis, column_phases = x[:n_pairs], x[n_pairs : 2 * n_pairs], x[2 * n_pairs :]

    u = np.eye(d, dtype=np.complex128)
    for (i, j), theta, phi in zip(pairs, thetas, phis):
        block = givens_block(theta, phi)
        u[:, [i, j]] = u[:, [i, j]] @ block
    if d > 1:
        u[:, 1:] *= np.exp(1j * column_phases)
    return u


def decode_pvm(params: npt.ArrayLike, d: int) -> PvmBasis:
    """Rank-1 PVM basis for a chart point; all-zero parameters give the computational projectors."""
    return PvmBasis(decode_unitary(params, d))


def random_params(d: int, rng: np.random.Generator) -> PvmParams:
    """Uniform chart point: angles in ``[0, pi]``, phases in ``[0, 2 pi)``."""
    n_pairs = d * (d - 1) // 2
    thetas = rng.uniform(0.0, np.pi, n_pairs)
    phases = rng.uniform(0.0, 2.0 * np.pi, n_pairs + max(d - 1, 0))
    return np.concatenate([thetas, phases])


@dataclass(frozen=True)
class SpectrumParams:
    """Real spectrum in ``[-1, 1]^d`` with at least one entry of modulus 1, so ``||A||_inf = 1``."""

    values: RealVector

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64).reshape(-1)
        if values.size == 0 or np.any(np.abs(values) > 1.0 + 1e-12):
            raise InvariantError("spectrum within [-1, 1]")
        if abs(float(np.max(np.abs(values))) - 1.0) > 1e-12:
            raise InvariantError("max |spectrum|", float(np.max(np.abs(values))))
        object.__setattr__(self, "values", values)

    @classmethod
    def pinned(cls, free: npt.ArrayLike, d: int, pinned_index: int = 0) -> "SpectrumParams":
        """Entry ``pinned_index`` fixed to +1, the ``d - 1`` others mapped into ``[-1, 1]`` by ``sin``."""
        x = np.asarray(free, dtype=np.float64).reshape(-1)
        if x.shape[0] != d - 1:
            raise BadParameterCountError(f"dimension {d} needs {d - 1} free eigenvalues, got {x.shape[0]}")
        return cls(np.insert(np.sin(x), pinned_index % d, 1.0))

    @classmethod
    def balanced(cls, d: int) -> "SpectrumParams":
        """``(1, -1, 1, -1, ...)``; for ``d = 2`` this is the exact qubit optimum."""
        return cls(np.array([1.0 if k % 2 == 0 else -1.0 for k in range(d)]))

    def to_list(self) -> list[float]:
        return [float(v) for v in self.values]
