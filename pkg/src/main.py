"""Command-line entry point: ``kdq compute | optimize | verify | scan | random | suites``."""

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from src import __version__
from src.config import settings
from src.exceptions import KdError, SchemaError
from src.logging_config import configure_logging
from src.measures import (
    commutator_bound,
    disturbance_term,
    imag_mod_term,
    l1_coherence,
    mse_sq_term,
    ncl,
    nre,
    robertson_bound,
    rs_bound,
    rs_root,
    trace_norm_asymmetry,
)
from src.models import Instance, OptConfig, ReportFormat, SuiteConfig
from src.optimizer import OptResult, appendix_c_scan, delta, epsilon, q_ncl, q_nre, sup_robertson, sup_rs
from src.orchestrator import run_suite
from src.quantum import DensityOperator, PvmBasis, kd_distribution
from src.storage import (
    emit_document,
    emit_instance,
    emit_report,
    kd_table_csv,
    parse_instance,
    random_instance,
    scan_csv,
)
from suites import SUITES

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2

SEARCHES: Dict[str, Callable[[DensityOperator, PvmBasis, OptConfig], OptResult]] = {
    "q_nre": q_nre,
    "q_ncl": q_ncl,
    "epsilon": epsilon,
    "delta": delta,
    "sup_robertson": sup_robertson,
    "sup_rs": sup_rs,
}


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="Master seed (default: KDQ_DEFAULT_SEED or 0)")
    parser.add_argument("--restarts", type=int, default=None, help="Optimizer restarts")
    parser.add_argument("--tol", type=float, default=None, help="Nelder-Mead xatol/fatol")
    parser.add_argument("--workers", type=int, default=None, help="Worker threads")
    parser.add_argument("--out", default=None, help="Output file (default: stdout)")
    parser.add_argument("--log-level", default=None, help="Log level (default: KDQ_LOG_LEVEL or INFO)")
    parser.add_argument("--log-format", choices=["json", "text"], default=None, help="Log record format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kdq", description="Kirkwood-Dirac quantumness measures, bounds and their verification.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="KD table and fixed-input measures of an instance")
    compute.add_argument("instance", help="Instance file (needs basis_b)")
    compute.add_argument("--table", default=None, help="Also write the KD table CSV here")
    _common(compute)

    optimize = sub.add_parser("optimize", help="Best-found suprema for one instance")
    optimize.add_argument("instance", help="Instance file")
    optimize.add_argument("--quantity", choices=["all", *SEARCHES], default="all")
    optimize.add_argument("--max-iterations", type=int, default=None)
    _common(optimize)

    verify = sub.add_parser("verify", help="Run a verification suite")
    verify.add_argument("suite", help="Suite name; see `kdq suites`")
    verify.add_argument("--config", default=None, help="YAML suite configuration")
    verify.add_argument("--instances", type=int, default=None, help="Instances per dimension")
    verify.add_argument("--dim", type=int, action="append", default=None, help="Dimension to sample; repeatable")
    verify.add_argument("--format", choices=[f.value for f in ReportFormat], default=ReportFormat.JSON.value)
    verify.add_argument("--grid-resolution", type=int, default=None)
    _common(verify)

    scan = sub.add_parser("scan", help="Qubit additive trade-off over (alpha, phi_z) as CSV")
    scan.add_argument("--r", type=float, default=1.0, help="Bloch radius")
    scan.add_argument("--beta-minus-phi01", type=float, default=float(np.pi / 2))
    scan.add_argument("--phi01", type=float, default=0.0)
    scan.add_argument("--resolution", type=int, default=50)
    _common(scan)

    random = sub.add_parser("random", help="Write a seeded random instance")
    random.add_argument("--dim", type=int, required=True)
    random.add_argument("--rank", type=int, default=None)
    random.add_argument("--single-basis", action="store_true", help="Omit basis_b")
    random.add_argument("--spectra", action="store_true", help="Include observable spectra")
    random.add_argument("--label", default="")
    _common(random)

    suites = sub.add_parser("suites", help="List registered verification suites")
    _common(suites)
    return parser


def resolve_seed(cli_seed: Optional[int], config_seed: Optional[int] = None) -> Tuple[int, str]:
    """Effective seed and where it came from: ``cli``, ``config``, ``env`` or ``default``."""
    if cli_seed is not None:
        return cli_seed, "cli"
    if config_seed is not None:
        return config_seed, "config"
    return settings.default_seed, settings.seed_source()


def _opt_config(args: argparse.Namespace, seed: int) -> OptConfig:
    return OptConfig.from_settings(
        restarts=args.restarts,
        tolerance=args.tol,
        workers=args.workers,
        max_iterations=getattr(args, "max_iterations", None),
        seed=seed,
    )


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)


def _pair_measures(instance: Instance) -> Dict[str, float]:
    a, b = instance.observable_a(), instance.observable_b()
    values: Dict[str, float] = {}
    if a is not None:
        values["asymmetry"] = trace_norm_asymmetry(a, instance.rho, normalized=True).value
    if a is not None and b is not None:
        values["robertson_bound"] = robertson_bound(a, b, instance.rho).value
        values["commutator_bound"] = commutator_bound(a, b, instance.rho).value
        values["rs_root"] = rs_root(a, b, instance.rho).value
        values["rs_bound"] = rs_bound(a, b, instance.rho).value
    return values


def cmd_compute(args: argparse.Namespace) -> int:
    instance = parse_instance(args.instance)
    if instance.basis_b is None:
        raise SchemaError(f"invalid instance {args.instance}", ["basis_b: required by compute"])
    rho, basis_a, basis_b = instance.rho, instance.basis_a, instance.basis_b
    dist = kd_distribution(rho, basis_a, basis_b)
    if args.table:
        kd_table_csv(dist, args.table)

    measures: Dict[str, Any] = {
        "label": instance.label,
        "dim": instance.dim,
        "nre": nre(dist).value,
        "ncl": ncl(dist).value,
        "l1_coherence": l1_coherence(rho, basis_a).value,
        "mse_sq": mse_sq_term(rho, basis_a, basis_b).value,
        "disturbance": disturbance_term(rho, basis_a, basis_b).value,
        "imag_mod": imag_mod_term(rho, basis_a, basis_b).value,
    }
    measures.update(_pair_measures(instance))
    _emit(emit_document(measures, args.out), args.out)
    return EXIT_OK


def _result_document(result: OptResult) -> Dict[str, Any]:
    return {
        "value": result.value,
        "converged": result.converged,
        "restarts_used": result.restarts_used,
        "best_restart": result.best_restart,
        "evaluations": result.evaluations,
        "witness_spectra": [s.to_list() for s in result.witness_spectra] if result.witness_spectra else None,
    }


def cmd_optimize(args: argparse.Namespace) -> int:
    instance = parse_instance(args.instance)
    seed, source = resolve_seed(args.seed)
    cfg = _opt_config(args, seed)
    names: Sequence[str] = list(SEARCHES) if args.quantity == "all" else [args.quantity]
    results = {}
    for name in names:
        result = SEARCHES[name](instance.rho, instance.basis_a, cfg)
        logger.info("search finished", extra={"quantity": name, "value": result.value, "converged": result.converged})
        results[name] = _result_document(result)
    document = {"label": instance.label, "dim": instance.dim, "seed": seed, "seed_source": source, "results": results}
    _emit(emit_document(document, args.out), args.out)
    return EXIT_OK


def _suite_config(args: argparse.Namespace) -> SuiteConfig:
    base = SuiteConfig.from_yaml(args.config) if args.config else SuiteConfig()
    overrides = {
        "instances": args.instances,
        "dims": args.dim,
        "restarts": args.restarts,
        "tolerance": args.tol,
        "workers": args.workers,
        "grid_resolution": args.grid_resolution,
    }
    update = {k: v for k, v in overrides.items() if v is not None}
    return SuiteConfig.model_validate({**base.model_dump(), **update}) if update else base


def cmd_verify(args: argparse.Namespace) -> int:
    config = _suite_config(args)
    seed, source = resolve_seed(args.seed, config.seed)
    report = run_suite(args.suite, config, seed=seed, seed_source=source)
    _emit(emit_report(report, args.format, args.out), args.out)
    return EXIT_OK if report.ok else EXIT_FAILURES


def cmd_scan(args: argparse.Namespace) -> int:
    scan = appendix_c_scan(r=args.r, beta_minus_phi01=args.beta_minus_phi01, resolution=args.resolution, phi01=args.phi01)
    logger.info("scan finished", extra={"max_deviation": scan.max_deviation, "min_slack": scan.min_slack})
    _emit(scan_csv(scan, args.out), args.out)
    return EXIT_OK


def cmd_random(args: argparse.Namespace) -> int:
    seed, _ = resolve_seed(args.seed)
    instance = random_instance(
        args.dim, seed, rank=args.rank, with_basis_b=not args.single_basis, with_spectra=args.spectra, label=args.label
    )
    _emit(emit_instance(instance, args.out), args.out)
    return EXIT_OK


def cmd_suites(args: argparse.Namespace) -> int:
    text = "".join(f"{name}\t{suite.description}\n" for name, suite in SUITES.items())
    _emit(text, None)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "compute": cmd_compute,
    "optimize": cmd_optimize,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "random": cmd_random,
    "suites": cmd_suites,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI.

    Returns:
        0 on success, 1 when a suite reports failures, 2 on usage, schema or invariant errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    configure_logging(args.log_level, args.log_format)

    try:
        return COMMANDS[args.command](args)
    except (KdError, ValidationError) as e:
        print(f"[error] {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
