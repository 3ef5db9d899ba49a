"""Suprema over bases and spectra, with exact qubit oracles."""

from src.optimizer.chart import PvmParams, SpectrumParams, decode_pvm, decode_unitary, param_count, random_params
from src.optimizer.qubit import (
    GridObjective,
    QubitSolution,
    appendix_c_scan,
    qubit_additive_closed_form,
    qubit_analytic,
    qubit_basis,
    qubit_grid_supremum,
)
from src.optimizer.search import OptResult, maximize
from src.optimizer.suprema import (
    PairExpression,
    delta,
    epsilon,
    q_ncl,
    q_nre,
    sup_pair_spectra,
    sup_robertson,
    sup_rs,
    tradeoff_bound,
)

__all__ = [
    "PvmParams",
    "SpectrumParams",
    "decode_pvm",
    "decode_unitary",
    "param_count",
    "random_params",
    "GridObjective",
    "QubitSolution",
    "appendix_c_scan",
    "qubit_additive_closed_form",
    "qubit_analytic",
    "qubit_basis",
    "qubit_grid_supremum",
    "OptResult",
    "maximize",
    "PairExpression",
    "delta",
    "epsilon",
    "q_ncl",
    "q_nre",
    "sup_pair_spectra",
    "sup_robertson",
    "sup_rs",
    "tradeoff_bound",
]
