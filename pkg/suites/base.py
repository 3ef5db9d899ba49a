"""Common machinery for seeded verification suites."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from src.config import settings
from src.linalg import haar_random_unitary, random_density, random_hermitian
from src.models import BoundReport, OptConfig, SuiteConfig
from src.quantum import DensityOperator, Observable, PvmBasis


@dataclass(frozen=True)
class InstanceTask:
    """One unit of suite work: a global instance index and its dimension."""

    index: int
    dim: int


class VerificationSuite(ABC):
    """
    A family of checks run on seeded random instances.

    Every instance draws from its own stream derived from the master seed and
    the instance index, so results do not depend on how instances are
    distributed over workers.
    """

    name: str = ""
    description: str = ""
    default_dims: List[int] = [2, 3]
    default_instances: int = 100
    fixed_dims: Optional[List[int]] = None

    def __init__(self, config: SuiteConfig, seed: int):
        self.config = config
        self.seed = seed

    @property
    def dims(self) -> List[int]:
        if self.fixed_dims is not None:
            return self.fixed_dims
        return self.config.dims or self.default_dims

    @property
    def instances_per_dim(self) -> int:
        return self.default_instances if self.config.instances is None else self.config.instances

    def plan(self) -> List[InstanceTask]:
        tasks: List[InstanceTask] = []
        for d in self.dims:
            for _ in range(self.instances_per_dim):
                tasks.append(InstanceTask(index=len(tasks), dim=d))
        return tasks

    @abstractmethod
    def check(self, task: InstanceTask) -> List[BoundReport]:
        """Run every check of this suite on one instance."""

    # Helpers shared by the suites.

    @property
    def slack(self) -> float:
        return self.config.inequality_slack()

    def rng(self, task: InstanceTask) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(task.index,)))

    def opt(self, task: InstanceTask, **overrides: int) -> OptConfig:
        """Search configuration with a per-instance seed."""
        instance_seed = int(np.random.SeedSequence(self.seed, spawn_key=(task.index, 1)).generate_state(1)[0])
        cfg = self.config.opt_config(seed=instance_seed)
        return cfg.model_copy(update=overrides) if overrides else cfg

    def grid_resolution(self) -> int:
        return self.config.grid_resolution or settings.grid_resolution

    @staticmethod
    def random_state(d: int, rng: np.random.Generator, rank: Optional[int] = None) -> DensityOperator:
        return DensityOperator(random_density(d, rank or int(rng.integers(1, d + 1)), rng))

    @staticmethod
    def random_basis(d: int, rng: np.random.Generator) -> PvmBasis:
        return PvmBasis(haar_random_unitary(d, rng))

    @staticmethod
    def random_observable(d: int, rng: np.random.Generator) -> Observable:
        return Observable.from_matrix(random_hermitian(d, rng))

    @staticmethod
    def witness(task: InstanceTask, extra: str = "") -> str:
        return f"instance={task.index} d={task.dim}" + (f" {extra}" if extra else "")
