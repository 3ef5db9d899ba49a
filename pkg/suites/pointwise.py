"""Pointwise suites: fixed-input lower bounds and the three-term decomposition identity."""

from typing import List

import numpy as np

from src.config import settings
from src.measures import (
    disturbance_term,
    imag_mod_term,
    l1_coherence,
    ncl,
    nre,
    robertson_bound,
    rs_bound,
)
from src.models import BoundReport
from src.quantum import johansen_decomposition, kd_distribution
from suites.base import InstanceTask, VerificationSuite


class Lemma1Suite(VerificationSuite):
    """NRe of the KD table of two observables' eigenbases is at least the normalized commutator bound."""

    name = "lemma1"
    description = "nre(kd(rho, eig A, eig B)) >= |Tr{B~ [A~, rho]}| / 2"
    default_dims = [2, 3, 4, 5]
    default_instances = 1000

    def check(self, task: InstanceTask) -> List[BoundReport]:
        rng = self.rng(task)
        rho = self.random_state(task.dim, rng)
        a = self.random_observable(task.dim, rng)
        b = self.random_observable(task.dim, rng)
        dist = kd_distribution(rho, a.basis, b.basis)
        return [
            BoundReport.check(
                "lemma1",
                nre(dist).value,
                robertson_bound(a, b, rho).value,
                tolerance=settings.identity_tolerance,
                witness=self.witness(task),
            ),
            BoundReport.check(
                "nre-ceiling",
                l1_coherence(rho, a.basis).value,
                nre(dist).value,
                tolerance=settings.identity_tolerance,
                witness=self.witness(task),
            ),
        ]


class Lemma2Suite(VerificationSuite):
    """NCl is at least the shifted-normalized bound, and at most the l1 coherence."""

    name = "lemma2"
    description = "l1(rho) >= ncl(kd(rho, eig A, eig B)) >= rs_root / 2 - 1"
    default_dims = [2, 3, 4, 5]
    default_instances = 1000

    def check(self, task: InstanceTask) -> List[BoundReport]:
        rng = self.rng(task)
        rho = self.random_state(task.dim, rng)
        a = self.random_observable(task.dim, rng)
        b = self.random_observable(task.dim, rng)
        value = ncl(kd_distribution(rho, a.basis, b.basis)).value
        return [
            BoundReport.check(
                "lemma2",
                value,
                rs_bound(a, b, rho).value,
                tolerance=settings.identity_tolerance,
                witness=self.witness(task),
            ),
            BoundReport.check(
                "ncl-ceiling",
                l1_coherence(rho, a.basis).value,
                value,
                tolerance=settings.identity_tolerance,
                witness=self.witness(task),
            ),
        ]


class JohansenSuite(VerificationSuite):
    """The joint probability plus both modification terms rebuilds the KD table exactly."""

    name = "johansen"
    description = "classical + real_mod/2 - i imag_mod/2 == kd table"
    default_dims = [2, 3, 4, 5, 6]
    default_instances = 200

    def check(self, task: InstanceTask) -> List[BoundReport]:
        rng = self.rng(task)
        rho = self.random_state(task.dim, rng)
        basis_a = self.random_basis(task.dim, rng)
        basis_b = self.random_basis(task.dim, rng)
        dist = kd_distribution(rho, basis_a, basis_b)
        terms = johansen_decomposition(rho, basis_a, basis_b)
        tol = settings.identity_tolerance
        half_disturbance = 0.5 * disturbance_term(rho, basis_a, basis_b).value
        half_imag = 0.5 * imag_mod_term(rho, basis_a, basis_b).value
        return [
            BoundReport.agreement(
                "johansen-identity",
                float(np.max(np.abs(terms.reconstruct() - dist.table))),
                tol,
                witness=self.witness(task),
            ),
            BoundReport.agreement(
                "johansen-normalization",
                abs(float(np.sum(terms.classical)) - 1.0),
                tol,
                witness=self.witness(task),
            ),
            BoundReport.check(
                "johansen-classical-nonnegative",
                float(np.min(terms.classical)),
                0.0,
                tolerance=1e-12,
                witness=self.witness(task),
            ),
            BoundReport.check(
                "johansen-ncl",
                half_disturbance + half_imag,
                ncl(dist).value,
                tolerance=tol,
                witness=self.witness(task),
            ),
        ]
