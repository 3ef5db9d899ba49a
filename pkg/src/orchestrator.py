"""Orchestrator for running verification suites and assembling their reports."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from src.models import BoundReport, SuiteConfig, SuiteReport
from suites import InstanceTask, VerificationSuite, create_suite

logger = logging.getLogger(__name__)


class SuiteOrchestrator:
    """
    Runs one verification suite over its planned instances.

    Workflow:
    1. The suite plans its instance tasks from the configuration
    2. Tasks run sequentially or on a thread pool (``config.workers``)
    3. Checks are concatenated in instance order into a SuiteReport
    """

    def __init__(self, suite: VerificationSuite, seed_source: str = "default"):
        """
        Initialize the orchestrator.

        Args:
            suite: Configured suite to run
            seed_source: Where the master seed came from: ``cli``, ``config``, ``env`` or ``default``
        """
        self.suite = suite
        self.seed_source = seed_source

    def _run_tasks(self, tasks: List[InstanceTask]) -> List[List[BoundReport]]:
        workers = self.suite.config.workers
        if workers > 1 and len(tasks) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                return list(pool.map(self.suite.check, tasks))
        return [self.suite.check(task) for task in tasks]

    def run(self) -> SuiteReport:
        """
        Run every planned instance and assemble the report.

        Returns:
            SuiteReport whose checks are in instance order regardless of scheduling
        """
        suite = self.suite
        tasks = suite.plan()
        logger.info(
            "suite started",
            extra={"suite": suite.name, "instances": len(tasks), "seed": suite.seed, "seed_source": self.seed_source},
        )
        started = time.perf_counter()
        checks = [check for per_task in self._run_tasks(tasks) for check in per_task]
        report = SuiteReport.assemble(
            suite_name=suite.name,
            instances=len(tasks),
            checks=checks,
            seed=suite.seed,
            seed_source=self.seed_source,
            wall_time=time.perf_counter() - started,
        )
        log = logger.info if report.ok else logger.warning
        log(
            "suite finished",
            extra={
                "suite": suite.name,
                "instances": report.instances,
                "checks": len(report.checks),
                "failures": report.failures,
                "seed": report.seed,
                "wall_time": report.wall_time,
            },
        )
        return report


def run_suite(
    name: str,
    config: Optional[SuiteConfig] = None,
    seed: Optional[int] = None,
    seed_source: str = "default",
) -> SuiteReport:
    """
    Create the named suite and run it.

    Args:
        name: Registered suite name
        config: Run parameters
        seed: Master seed; defaults to the configuration's effective seed
        seed_source: Echoed into the report

    Raises:
        UnknownSuiteError: If ``name`` is not registered
    """
    return SuiteOrchestrator(create_suite(name, config, seed), seed_source).run()
