"""Shared fixtures: the textbook qubit states and bases, and small search configurations."""

import numpy as np
import pytest

from src.models import OptConfig, SuiteConfig
from src.quantum import DensityOperator, PvmBasis

SQRT_HALF = 1.0 / np.sqrt(2.0)


@pytest.fixture
def z_basis() -> PvmBasis:
    return PvmBasis.computational(2)


@pytest.fixture
def x_basis() -> PvmBasis:
    """Columns ``|+>`` and ``|->``."""
    return PvmBasis(SQRT_HALF * np.array([[1, 1], [1, -1]], dtype=np.complex128))


@pytest.fixture
def y_basis() -> PvmBasis:
    """Columns ``(|0> + i|1>)/sqrt 2`` and ``(|0> - i|1>)/sqrt 2``."""
    return PvmBasis(SQRT_HALF * np.array([[1, 1], [1j, -1j]], dtype=np.complex128))


@pytest.fixture
def plus_state() -> DensityOperator:
    return DensityOperator.pure([1, 1])


@pytest.fixture
def zero_state() -> DensityOperator:
    return DensityOperator.pure([1, 0])


@pytest.fixture
def psi_state() -> DensityOperator:
    """``(|0> + e^{i pi/4} |1>) / sqrt 2``."""
    return DensityOperator.pure([1, np.exp(1j * np.pi / 4)])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def fast_cfg() -> OptConfig:
    return OptConfig(restarts=8, max_iterations=3000, tolerance=1e-10, seed=11)


@pytest.fixture
def small_suite_config() -> SuiteConfig:
    return SuiteConfig(instances=2, restarts=4, grid_resolution=96)
