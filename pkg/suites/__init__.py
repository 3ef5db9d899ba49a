"""Verification suite package initialization."""

from typing import Dict, List, Optional, Type

from src.exceptions import UnknownSuiteError
from src.models import SuiteConfig
from suites.base import InstanceTask, VerificationSuite
from suites.determinism import DeterminismSuite
from suites.pointwise import JohansenSuite, Lemma1Suite, Lemma2Suite
from suites.qubit import AppendixCSuite, GridOracleSuite, QubitExactSuite
from suites.suprema import (
    CeilingsSuite,
    Cor5aSuite,
    Cor6aSuite,
    OrderingSuite,
    Prop1Suite,
    Prop2Suite,
    Prop4Suite,
)
from suites.tradeoffs import (
    AdditiveSuite,
    Cor5bSuite,
    Cor6bSuite,
    L1TradeoffSuite,
    Prop3Suite,
    Prop5Suite,
)

SUITES: Dict[str, Type[VerificationSuite]] = {
    suite.name: suite
    for suite in (
        Lemma1Suite,
        Lemma2Suite,
        Prop1Suite,
        Prop2Suite,
        Prop3Suite,
        Prop4Suite,
        Prop5Suite,
        AdditiveSuite,
        OrderingSuite,
        Cor5aSuite,
        Cor5bSuite,
        Cor6aSuite,
        Cor6bSuite,
        JohansenSuite,
        QubitExactSuite,
        AppendixCSuite,
        CeilingsSuite,
        L1TradeoffSuite,
        GridOracleSuite,
        DeterminismSuite,
    )
}


def list_suites() -> List[str]:
    """Registered suite names in registration order."""
    return list(SUITES)


def create_suite(name: str, config: Optional[SuiteConfig] = None, seed: Optional[int] = None) -> VerificationSuite:
    """
    Create a registered verification suite.

    Args:
        name: Suite name, e.g. ``lemma1`` or ``qubit-exact``
        config: Run parameters; defaults to an empty :class:`SuiteConfig`
        seed: Master seed; defaults to the configuration's effective seed

    Returns:
        Configured suite instance

    Raises:
        UnknownSuiteError: If ``name`` is not registered
    """
    try:
        suite_class = SUITES[name]
    except KeyError:
        raise UnknownSuiteError(f"unknown suite {name!r}; choose one of: {', '.join(SUITES)}") from None
    config = config or SuiteConfig()
    return suite_class(config, config.effective_seed() if seed is None else seed)


__all__ = [
    "SUITES",
    "InstanceTask",
    "VerificationSuite",
    "create_suite",
    "list_suites",
    "Lemma1Suite",
    "Lemma2Suite",
    "JohansenSuite",
    "Prop1Suite",
    "Prop2Suite",
    "Prop3Suite",
    "Prop4Suite",
    "Prop5Suite",
    "AdditiveSuite",
    "OrderingSuite",
    "CeilingsSuite",
    "Cor5aSuite",
    "Cor5bSuite",
    "Cor6aSuite",
    "Cor6bSuite",
    "L1TradeoffSuite",
    "QubitExactSuite",
    "AppendixCSuite",
    "GridOracleSuite",
    "DeterminismSuite",
]
