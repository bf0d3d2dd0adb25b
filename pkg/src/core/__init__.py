"""Moteur de factorisation BAPFactor."""

from .space import norm, dual_norm, support_maximize, section_extreme_points
from .operator import apply, compose, operator_norm, range_basis, restricted_operator_norm
from .auerbach import auerbach_system, auerbach_projections, verify_auerbach
from .telescope import (
    NetVariant,
    BlockTruncationOracle,
    telescope,
    partial_sums,
    net_tolerance,
    certify_finite_set,
    bap_from_pointwise,
    pointwise_from_bap
)
from .splitting import split_block, index_map, build_splitting, verify_partial_sums
from .yspace import (
    y_norm,
    lift,
    sum_j,
    verify_factorization,
    basis_monotonicity_check,
    certificate_from_factorization
)
from .scenarios import gen_scenario, load_scenario, save_scenario
from .pipeline import FactorisationPipeline

__all__ = [
    "norm",
    "dual_norm",
    "support_maximize",
    "section_extreme_points",
    "apply",
    "compose",
    "operator_norm",
    "range_basis",
    "restricted_operator_norm",
    "auerbach_system",
    "auerbach_projections",
    "verify_auerbach",
    "NetVariant",
    "BlockTruncationOracle",
    "telescope",
    "partial_sums",
    "net_tolerance",
    "certify_finite_set",
    "bap_from_pointwise",
    "pointwise_from_bap",
    "split_block",
    "index_map",
    "build_splitting",
    "verify_partial_sums",
    "y_norm",
    "lift",
    "sum_j",
    "verify_factorization",
    "basis_monotonicity_check",
    "certificate_from_factorization",
    "gen_scenario",
    "load_scenario",
    "save_scenario",
    "FactorisationPipeline"
]
