"""Example usage script demonstrating the library."""

from pathlib import Path

import numpy as np

from src.measures import ncl, nre, robertson_bound
from src.models import OptConfig, SuiteConfig
from src.optimizer import appendix_c_scan, q_nre, qubit_analytic, sup_robertson
from src.orchestrator import run_suite
from src.quantum import johansen_decomposition, kd_distribution
from src.storage import parse_instance, render_report

CONFIG_DIR = Path(__file__).parent


def show_instance():
    """Load the example instance and print its KD table and measures."""
    instance = parse_instance(CONFIG_DIR / "example-instance.json")
    dist = kd_distribution(instance.rho, instance.basis_a, instance.basis_b)
    print(f"\nInstance {instance.label!r} (d = {instance.dim})")
    print(np.array2string(dist.table, precision=4))
    print(f"  NRe = {nre(dist).value:.6f}  NCl = {ncl(dist).value:.6f}")

    terms = johansen_decomposition(instance.rho, instance.basis_a, instance.basis_b)
    print(f"  max |real_mod| = {np.max(np.abs(terms.real_mod)):.6f}")
    bound = robertson_bound(instance.observable_a(), instance.observable_b(), instance.rho)
    print(f"  Robertson bound = {bound.value:.6f}")
    return instance


def optimize(instance):
    """Maximal nonreality over second bases, compared with the qubit closed form."""
    cfg = OptConfig(restarts=8, seed=1)
    found = q_nre(instance.rho, instance.basis_a, cfg)
    exact = qubit_analytic(instance.rho, instance.basis_a)
    print(f"\nq_nre search = {found.value:.9f}, closed form = {exact.q_nre:.9f}")
    print(f"  {sup_robertson(instance.rho, instance.basis_a, cfg).summary()}")


def scan():
    """Additive trade-off of a pure qubit on a coarse grid."""
    result = appendix_c_scan(resolution=9)
    print(f"\nScan: max |numeric - closed form| = {result.max_deviation:.2e}, min slack = {result.min_slack:.6f}")


def verify():
    """Run a small lemma suite and print the text summary."""
    report = run_suite("lemma1", SuiteConfig(instances=10, dims=[2, 3]), seed=7, seed_source="cli")
    print()
    print(render_report(report, "text"))


def main():
    """Run demo."""
    print("=" * 60)
    print("Kirkwood-Dirac bounds - Demo")
    print("=" * 60)

    instance = show_instance()
    optimize(instance)
    scan()
    verify()

    print("=" * 60)
    print("Demo completed!")
    print("=" * 60)


if __name__ == "__main__":
    main()
