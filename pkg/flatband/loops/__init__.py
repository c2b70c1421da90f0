"""
Loop calculus: configurations, perturbation series and extremal loops.
"""

from .configs import FootprintCap, LoopConfig, SimpleLoop, enumerate_configs, enumerate_simple_loops
from .series import (
    ResummedTable, config_growth, heuristic_epsilon, resummed_table, series_coefficient,
    series_vs_eigenvalue_check, taylor_coefficients,
)
from .extremal import (
    Certificate, ExtremalReport, certify_all, extremal_report, extremal_search, non_cancelable_check,
    symmetric_extremal_search, theorem_disjunction, verify_obstruction,
)
from .permutations import special_permutation_decompose
