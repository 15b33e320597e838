"""Exact finite-time Landau-Zener driving in a bounded parameter space.

Three analytic propagators (linear sweep, constant metric speed along the
same line, circular arc), an independent numerical oracle, infidelity
observables and the Landau-Zener / adiabatic-perturbation approximations.
"""

from .analytic import (
    analytic_solver,
    evaluate,
    evolve_series,
    initial_state,
    solve_path_a,
    solve_path_b,
    solve_path_c,
)
from .approx import (
    ApproximationReport,
    LZWindow,
    apt_envelope,
    apt_final_infidelity,
    apt_general_second_order,
    approximation_report,
    crossover_time,
    diabatic_limit,
    lz_final_infidelity,
    lz_validity_window,
)
from .model import ParamPoint, PathSpec, eigensystem, hamiltonian, metric_length, path_point
from .observables import (
    final_infidelity,
    find_infidelity_zeros,
    instantaneous_infidelity,
    path_c_closed_infidelity,
)
from .oracle import GeneralPath, IntegratorControl, compare_series, propagate
from .series import AmplitudePair, EvolutionSeries

__version__ = "0.1.0"

__all__ = [
    "AmplitudePair",
    "ApproximationReport",
    "EvolutionSeries",
    "GeneralPath",
    "IntegratorControl",
    "LZWindow",
    "ParamPoint",
    "PathSpec",
    "analytic_solver",
    "apt_envelope",
    "apt_final_infidelity",
    "apt_general_second_order",
    "approximation_report",
    "compare_series",
    "crossover_time",
    "diabatic_limit",
    "eigensystem",
    "evaluate",
    "evolve_series",
    "final_infidelity",
    "find_infidelity_zeros",
    "hamiltonian",
    "initial_state",
    "instantaneous_infidelity",
    "lz_final_infidelity",
    "lz_validity_window",
    "metric_length",
    "path_c_closed_infidelity",
    "path_point",
    "propagate",
    "solve_path_a",
    "solve_path_b",
    "solve_path_c",
]
