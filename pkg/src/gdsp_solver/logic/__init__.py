"""Solvers, decompositions and verifiers for gdsp-solver."""

from .covering_lp import check_feasible, cutset_lower_bound, solve_covering_lp
from .flow_bridge import build_flow_network, rate_one_feasible
from .graph_ops import check_smooth, compute_frontiers, validate_instance
from .linear_codes import build_mds_single_file, hyperedge_verify, verify_valid
from .oracle import brute_force_optimum, certify_match
from .superposition import sup, theorem1_decompose, theorem2_decompose

__all__ = [
    "validate_instance",
    "check_smooth",
    "compute_frontiers",
    "solve_covering_lp",
    "check_feasible",
    "cutset_lower_bound",
    "verify_valid",
    "hyperedge_verify",
    "build_mds_single_file",
    "sup",
    "theorem1_decompose",
    "theorem2_decompose",
    "brute_force_optimum",
    "certify_match",
    "build_flow_network",
    "rate_one_feasible",
]
