"""End-to-end solve pipelines: plain, preprocessed, and divide-and-conquer.

All three modes answer in original node ids and agree on optima; they
differ in how much structure they exploit before the exact core runs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .decompose import DecomposeReport, best_removed_candidate, solve_mwcs
from .errors import MwcsError
from .graph import (
    ReductionTrace,
    Solution,
    WeightedGraph,
    expand_solution,
    induced_weight,
    is_connected_subset,
)
from .preprocess import PreprocessConfig, preprocess
from .solver import BackoffSchedule, primal_heuristic, solve_rooted, solve_unrooted

MODES = ("no-pre", "pre", "dc")


@dataclass
class PipelineResult:
    solution: Solution
    report: DecomposeReport | None = None
    reduced_nodes: int | None = None
    reduced_edges: int | None = None
    reduced_components: int | None = None


def _deadline(time_limit):
    if time_limit is None:
        return None, None
    if time_limit <= 0:
        return None, 0  # zero budget: bounds only, fully deterministic
    return time.monotonic() + time_limit, None


def _expand_and_verify(original, trace, sol: Solution, allow_empty: bool,
                       rooted: bool) -> Solution:
    expanded = expand_solution(trace, sol.nodes)
    value = induced_weight(original, expanded) if expanded else 0.0
    if not rooted:
        # reductions may hide the best single node of an all-nonpositive
        # graph; with roots the constraint makes such fallbacks infeasible
        fallback = best_removed_candidate(trace, original)
        if fallback is not None and fallback[0] > value:
            value, expanded = fallback
        if allow_empty and value < 0.0:
            expanded, value = frozenset(), 0.0
    if expanded and not is_connected_subset(original, expanded):
        raise MwcsError("internal error: expanded witness is disconnected")
    if sol.is_optimal:
        return Solution.optimal(expanded, value)
    return Solution.with_gap(expanded, value, max(sol.upper, value))


def solve_graph(g: WeightedGraph, mode: str = "dc", roots=None, *,
                allow_empty: bool = False, time_limit: float | None = None,
                preprocess_config: PreprocessConfig | None = None) -> PipelineResult:
    """Solve a copy of ``g`` with the selected pipeline.

    ``roots`` forces those nodes into the solution. A ``time_limit`` of 0
    returns heuristic bounds without search; positive limits are a
    wall-clock budget after which the best known solution is returned
    with its bounds.
    """
    if mode not in MODES:
        raise MwcsError(f"unknown mode {mode!r}")
    root_set = frozenset(roots or ())
    deadline, node_budget = _deadline(time_limit)
    backoff = BackoffSchedule()

    if node_budget == 0:
        return _zero_budget(g, root_set, allow_empty)

    if mode == "no-pre":
        work = g.copy()
        if root_set:
            sol = solve_rooted(work, root_set, deadline=deadline, backoff=backoff)
        else:
            sol = solve_unrooted(work, allow_empty=allow_empty, deadline=deadline,
                                 backoff=backoff)
        return PipelineResult(sol)

    if mode == "dc" and not root_set:
        work = g.copy()
        trace = ReductionTrace.identity(work)
        sol, report = solve_mwcs(work, trace, allow_empty=allow_empty,
                                 deadline=deadline,
                                 preprocess_config=preprocess_config)
        return PipelineResult(sol, report=report)

    # preprocessing followed by the plain core ("pre"; also "dc" with roots,
    # where the unrooted block calculus does not apply)
    work = g.copy()
    trace = ReductionTrace.identity(work)
    preprocess(work, trace, config=preprocess_config, protected=root_set)
    reduced_stats = (work.node_count(), work.edge_count(), len(work.components()))
    if root_set:
        sol = solve_rooted(work, root_set, deadline=deadline, backoff=backoff)
    else:
        sol = solve_unrooted(work, allow_empty=allow_empty, deadline=deadline,
                             backoff=backoff)
    expanded = _expand_and_verify(g, trace, sol, allow_empty, bool(root_set))
    result = PipelineResult(expanded)
    result.reduced_nodes, result.reduced_edges, result.reduced_components = reduced_stats
    return result


def _zero_budget(g: WeightedGraph, root_set, allow_empty: bool) -> PipelineResult:
    if g.node_count() == 0:
        return PipelineResult(Solution.optimal(frozenset(), 0.0))
    heur = primal_heuristic(g, None, root_set or None)
    lower, nodes = heur.objective, heur.nodes
    if allow_empty and not root_set and lower < 0.0:
        lower, nodes = 0.0, frozenset()
    upper = sum(w for w in g.weight.values() if w > 0.0)
    upper += sum(g.weight[r] for r in root_set if g.weight[r] <= 0.0)
    if upper <= lower + 1e-12:
        return PipelineResult(Solution.optimal(nodes, lower))
    return PipelineResult(Solution.with_gap(nodes, lower, upper))
