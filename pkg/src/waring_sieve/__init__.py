"""Exact Odlyzko-Stanley subset counts and Waring numbers over prime fields."""
from .bounds import (
    BoundParams,
    check_exp_sum,
    check_lemma31,
    check_open_problem,
    check_os_total,
    check_thm11,
    check_zhu_wan,
    fit_epsilon,
    solvability_range,
)
from .combinatorics import (
    PartitionType,
    box_identity_check,
    cycle_index_eval,
    cycle_index_identity_check,
    enumerate_types,
    sieve_identity_check,
)
from .counters import (
    CountTable,
    IntegralityError,
    count_dp,
    count_genfun,
    count_newton,
    count_odlyzko_stanley,
    count_tables,
    decomposition_audit,
    odlyzko_stanley_tables,
    total_count,
)
from .domain import ValuedDomain
from .field import NotPrimeError, PrimeModulus, character_profile, power_structure
from .kernels import BACKEND
from .report import BoundReport
from .waring import WaringResult, gamma_distinct, gamma_ordinary, waring_bound_suite

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundParams",
    "BoundReport",
    "CountTable",
    "IntegralityError",
    "NotPrimeError",
    "PartitionType",
    "PrimeModulus",
    "ValuedDomain",
    "WaringResult",
    "box_identity_check",
    "character_profile",
    "check_exp_sum",
    "check_lemma31",
    "check_open_problem",
    "check_os_total",
    "check_thm11",
    "check_zhu_wan",
    "count_dp",
    "count_genfun",
    "count_newton",
    "count_odlyzko_stanley",
    "count_tables",
    "cycle_index_eval",
    "cycle_index_identity_check",
    "decomposition_audit",
    "enumerate_types",
    "fit_epsilon",
    "gamma_distinct",
    "gamma_ordinary",
    "odlyzko_stanley_tables",
    "power_structure",
    "sieve_identity_check",
    "solvability_range",
    "total_count",
    "waring_bound_suite",
]
