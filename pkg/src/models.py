"""Core data models: optimizer and suite configuration, verification reports and the instance file schema."""

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Annotated, Any, Dict, List, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.config import settings
from src.exceptions import ReportIoError, SchemaError
from src.quantum import DensityOperator, Observable, PvmBasis

# A right-hand side within rounding of zero counts as non-positive.
TRIVIAL_RHS_TOLERANCE = 1e-12


class ReportFormat(str, Enum):
    """Supported report encodings."""

    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class TradeoffKind(str, Enum):
    """Two-basis trade-off relations between measures of one state."""

    NRE_PRODUCT = "nre-product"
    NRE_ADDITIVE = "nre-additive"
    NCL_PRODUCT = "ncl-product"
    L1_PRODUCT = "l1-product"
    L1_ADDITIVE = "l1-additive"
    L1_RS_PRODUCT = "l1-rs-product"
    L1_RS_ADDITIVE = "l1-rs-additive"
    EPSILON_PRODUCT = "epsilon-product"
    DELTA_PRODUCT = "delta-product"

    @property
    def inequality_id(self) -> str:
        return _INEQUALITY_IDS[self]

    @property
    def uses_commutator(self) -> bool:
        """Right-hand side built from ``|Tr{[A~, B~] rho}|`` rather than the shifted root term."""
        return self in {
            TradeoffKind.NRE_PRODUCT,
            TradeoffKind.NRE_ADDITIVE,
            TradeoffKind.L1_PRODUCT,
            TradeoffKind.L1_ADDITIVE,
            TradeoffKind.EPSILON_PRODUCT,
        }


_INEQUALITY_IDS = {
    TradeoffKind.NRE_PRODUCT: "prop3",
    TradeoffKind.NRE_ADDITIVE: "additive",
    TradeoffKind.NCL_PRODUCT: "prop5",
    TradeoffKind.L1_PRODUCT: "cor3",
    TradeoffKind.L1_ADDITIVE: "cor3-additive",
    TradeoffKind.L1_RS_PRODUCT: "cor5",
    TradeoffKind.L1_RS_ADDITIVE: "cor5-additive",
    TradeoffKind.EPSILON_PRODUCT: "cor5b",
    TradeoffKind.DELTA_PRODUCT: "cor6b",
}


class OptConfig(BaseModel):
    """Multi-restart search configuration."""

    model_config = ConfigDict(frozen=True)

    restarts: int = Field(default=32, ge=1)
    max_iterations: int = Field(default=2000, ge=1)
    tolerance: float = Field(default=1e-9, gt=0)
    seed: int = Field(default=0)
    workers: int = Field(default=1, ge=1, description="Threads used to run restarts")

    @classmethod
    def from_settings(cls, **overrides: Any) -> "OptConfig":
        values: Dict[str, Any] = {
            "restarts": settings.restarts,
            "max_iterations": settings.max_iterations,
            "tolerance": settings.optimizer_tolerance,
            "seed": settings.default_seed,
            "workers": settings.workers,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class BoundReport(BaseModel):
    """One verified inequality ``lhs >= rhs``."""

    inequality_id: str = Field(description="Claim being checked, e.g. lemma1 or prop3")
    lhs: float
    rhs: float
    slack: float = Field(description="lhs - rhs")
    passed: bool
    trivially_satisfied: bool = Field(default=False, description="rhs <= 0 up to rounding")
    heuristic: bool = Field(default=False, description="Both sides are best-found suprema")
    witness: str = Field(default="")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "inequality_id": "lemma1",
                "lhs": 0.7071067811865476,
                "rhs": 0.5,
                "slack": 0.2071067811865476,
                "passed": True,
                "trivially_satisfied": False,
                "heuristic": False,
                "witness": "d=2",
            }
        }
    )

    @classmethod
    def check(
        cls,
        inequality_id: str,
        lhs: float,
        rhs: float,
        tolerance: Optional[float] = None,
        heuristic: bool = False,
        witness: str = "",
    ) -> "BoundReport":
        """Evaluate ``lhs >= rhs`` with additive slack ``tolerance`` (default ``settings.inequality_slack``)."""
        tolerance = settings.inequality_slack if tolerance is None else tolerance
        slack = float(lhs) - float(rhs)
        return cls(
            inequality_id=inequality_id,
            lhs=float(lhs),
            rhs=float(rhs),
            slack=slack,
            passed=slack >= -tolerance,
            trivially_satisfied=float(rhs) <= TRIVIAL_RHS_TOLERANCE,
            heuristic=heuristic,
            witness=witness,
        )

    @classmethod
    def agreement(cls, inequality_id: str, deviation: float, tolerance: float, witness: str = "") -> "BoundReport":
        """Identity check recorded as ``tolerance >= deviation``."""
        report = cls.check(inequality_id, lhs=tolerance, rhs=deviation, tolerance=0.0, witness=witness)
        return report.model_copy(update={"trivially_satisfied": False})


class SuiteConfig(BaseModel):
    """Parameters of one verification-suite run; loadable from YAML."""

    instances: Optional[int] = Field(default=None, ge=0, description="Instances per dimension; suite default when unset")
    dims: Optional[List[int]] = Field(default=None, description="Dimensions to sample; suite default when unset")
    seed: Optional[int] = Field(default=None)
    restarts: Optional[int] = Field(default=None, ge=1)
    max_iterations: Optional[int] = Field(default=None, ge=1)
    tolerance: Optional[float] = Field(default=None, gt=0)
    slack: Optional[float] = Field(default=None, ge=0)
    workers: int = Field(default=1, ge=1)
    grid_resolution: Optional[int] = Field(default=None, ge=8)

    @model_validator(mode="after")
    def _dims_positive(self) -> "SuiteConfig":
        if self.dims is not None and (not self.dims or any(d < 1 for d in self.dims)):
            raise ValueError("dims must be a non-empty list of positive integers")
        return self

    @classmethod
    def from_yaml(cls, path: str | Path) -> "SuiteConfig":
        """
        Load a suite configuration file.

        Raises:
            ReportIoError: If the file cannot be read
            SchemaError: If the document does not validate
        """
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ReportIoError(f"cannot read suite config {path}: {e}") from e
        try:
            document = yaml.safe_load(text) or {}
        except yaml.YAMLError as e:
            raise SchemaError(f"invalid YAML in {path}", [str(e)]) from e
        if not isinstance(document, dict):
            raise SchemaError(f"invalid suite config {path}", ["top level: expected a mapping"])
        try:
            return cls.model_validate(document)
        except ValueError as e:
            raise SchemaError(f"invalid suite config {path}", [str(e)]) from e

    def effective_seed(self) -> int:
        return settings.default_seed if self.seed is None else self.seed

    def opt_config(self, seed: Optional[int] = None) -> OptConfig:
        return OptConfig.from_settings(
            restarts=self.restarts,
            max_iterations=self.max_iterations,
            tolerance=self.tolerance,
            seed=self.effective_seed() if seed is None else seed,
        )

    def inequality_slack(self) -> float:
        return settings.inequality_slack if self.slack is None else self.slack


class SuiteReport(BaseModel):
    """Outcome of a verification suite."""

    suite_name: str
    instances: int = Field(ge=0)
    checks: List[BoundReport] = Field(default_factory=list)
    failures: int = Field(default=0, ge=0)
    seed: int
    seed_source: str = Field(default="default", description="cli, config, env or default")
    wall_time: float = Field(default=0.0, ge=0, description="Seconds; excluded from reproducibility comparisons")

    @model_validator(mode="after")
    def _failures_match_checks(self) -> "SuiteReport":
        expected = sum(1 for c in self.checks if not c.passed)
        if self.failures != expected:
            raise ValueError(f"failures = {self.failures} but {expected} checks did not pass")
        return self

    @classmethod
    def assemble(
        cls,
        suite_name: str,
        instances: int,
        checks: List[BoundReport],
        seed: int,
        seed_source: str,
        wall_time: float,
    ) -> "SuiteReport":
        return cls(
            suite_name=suite_name,
            instances=instances,
            checks=checks,
            failures=sum(1 for c in checks if not c.passed),
            seed=seed,
            seed_source=seed_source,
            wall_time=wall_time,
        )

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def comparable(self) -> Dict[str, Any]:
        """JSON-ready dump without ``wall_time``."""
        return self.model_dump(mode="json", exclude={"wall_time"})


# Instance file schema. Complex entries are ``[re, im]`` pairs; matrices are lists of rows.


ComplexPair = Annotated[List[float], Field(min_length=2, max_length=2)]


class InstanceDocument(BaseModel):
    """On-disk form of an :class:`Instance`."""

    model_config = ConfigDict(extra="forbid")

    dim: int = Field(ge=1)
    label: str = Field(default="")
    rho: List[List[ComplexPair]]
    basis_a: List[List[ComplexPair]]
    basis_b: Optional[List[List[ComplexPair]]] = Field(default=None)
    spectrum_a: Optional[List[float]] = Field(default=None)
    spectrum_b: Optional[List[float]] = Field(default=None)


@dataclass(frozen=True)
class Instance:
    """A state with one or two measurement bases and optional observable spectra."""

    rho: DensityOperator
    basis_a: PvmBasis
    basis_b: Optional[PvmBasis] = None
    label: str = ""
    spectrum_a: Optional[List[float]] = None
    spectrum_b: Optional[List[float]] = None

    @property
    def dim(self) -> int:
        return self.rho.dim

    def observable_a(self) -> Optional[Observable]:
        return None if self.spectrum_a is None else Observable(self.basis_a, self.spectrum_a)

    def observable_b(self) -> Optional[Observable]:
        if self.spectrum_b is None or self.basis_b is None:
            return None
        return Observable(self.basis_b, self.spectrum_b)
