"""Exact solver toolkit for the maximum-weight connected subgraph problem.

Find a node subset of a node-weighted undirected graph that induces a
connected subgraph of maximum total weight, optionally forced to contain
a set of root nodes. The toolkit combines reduction rules, decomposition
along cut vertices and cut pairs with optimum-preserving gadgets, and an
exact branch-and-bound core, all validated against a brute-force oracle.
"""

from .errors import (
    BudgetExhaustedError,
    InfeasibleError,
    MwcsError,
    ParseError,
    SizeLimitError,
)
from .graph import (
    ReductionTrace,
    Solution,
    WeightedGraph,
    expand_solution,
    induced_weight,
    is_connected_subset,
    isolate,
    merge,
    remove,
)
from .io import Instance, dump_instance, dump_solution, load_instance
from .oracle import brute_force, brute_force_grow, brute_force_pcst
from .pipeline import MODES, PipelineResult, solve_graph
from .preprocess import PreprocessConfig, RuleReport, preprocess
from .solver import (
    BackoffSchedule,
    CutConstraint,
    FractionalPoint,
    check_feasible,
    emit_ilp,
    primal_heuristic,
    separate_fractional,
    separate_integral,
    solve_rooted,
    solve_unrooted,
    tree_dp,
)
from .transforms import PCSTInstance, mwcs_solution_to_pcst, mwcs_to_pcst, pcst_to_mwcs
from .decompose import (
    BlockCutTree,
    DecomposeReport,
    SPQRDecomposition,
    block_cut_tree,
    process_bicomponent,
    process_tricomponent,
    replace_negative_tricomponent,
    solve_mwcs,
    spqr_decomposition,
)

__all__ = [
    "BackoffSchedule",
    "BlockCutTree",
    "BudgetExhaustedError",
    "CutConstraint",
    "DecomposeReport",
    "FractionalPoint",
    "InfeasibleError",
    "Instance",
    "MODES",
    "MwcsError",
    "PCSTInstance",
    "ParseError",
    "PipelineResult",
    "PreprocessConfig",
    "ReductionTrace",
    "RuleReport",
    "SPQRDecomposition",
    "SizeLimitError",
    "Solution",
    "WeightedGraph",
    "block_cut_tree",
    "brute_force",
    "brute_force_grow",
    "brute_force_pcst",
    "check_feasible",
    "dump_instance",
    "dump_solution",
    "emit_ilp",
    "expand_solution",
    "induced_weight",
    "is_connected_subset",
    "isolate",
    "load_instance",
    "merge",
    "mwcs_solution_to_pcst",
    "mwcs_to_pcst",
    "pcst_to_mwcs",
    "preprocess",
    "primal_heuristic",
    "process_bicomponent",
    "process_tricomponent",
    "remove",
    "replace_negative_tricomponent",
    "separate_fractional",
    "separate_integral",
    "solve_graph",
    "solve_mwcs",
    "solve_rooted",
    "solve_unrooted",
    "spqr_decomposition",
    "tree_dp",
]
