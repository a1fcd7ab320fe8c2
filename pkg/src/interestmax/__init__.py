"""Interest maximization on social networks under LTM and ICM diffusion."""

from .datasets import load_dataset
from .diffusion import (
    ICM,
    LTM,
    DiffusionResult,
    icm_diffuse,
    icm_estimate,
    interest_sum,
    ltm_diffuse,
)
from .estimators import (
    BruteForceSelector,
    LevelBasedGreedy,
    MaxDegreeFirst,
    MaxProfitBasedGreedy,
    ProfitBasedGreedy,
)
from .exact import brute_force_opt, ilp_export, mcp_reduce, render_lp, verify_assignment
from .graph import (
    Graph,
    assign_interest,
    compute_edge_probs,
    compute_thresholds,
    graph_stats,
    load_edge_list,
    read_edge_list,
)
from .heuristics import HeuristicConfig, lbgh, level_based_order, mdfh, mpbgh, pbgh

__version__ = "0.1.0"

__all__ = [
    "BruteForceSelector",
    "DiffusionResult",
    "Graph",
    "HeuristicConfig",
    "ICM",
    "LTM",
    "LevelBasedGreedy",
    "MaxDegreeFirst",
    "MaxProfitBasedGreedy",
    "ProfitBasedGreedy",
    "assign_interest",
    "brute_force_opt",
    "compute_edge_probs",
    "compute_thresholds",
    "graph_stats",
    "icm_diffuse",
    "icm_estimate",
    "ilp_export",
    "interest_sum",
    "lbgh",
    "level_based_order",
    "load_dataset",
    "load_edge_list",
    "ltm_diffuse",
    "mcp_reduce",
    "mdfh",
    "mpbgh",
    "pbgh",
    "read_edge_list",
    "render_lp",
    "verify_assignment",
]
