"""Three-phase fixpoint preprocessing engine.

Phase one holds the cheap rules (isolated negative removal, adjacent
positive merging, negative chain merging), phase two removes mirrored
negative hubs, phase three runs the least-cost bypass test. Later-phase
progress restarts the engine from phase one, so the result is a global
fixpoint.

Rules accept an optional ``scope`` (a mutable set of node ids they may
alter, kept up to date as they merge and remove) and a ``protected`` set
of ids they must never touch; reads may consult the whole graph either
way.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

from .graph import ReductionTrace, WeightedGraph, merge, remove


@dataclass
class RuleReport:
    rule: str
    applications: int = 0
    nodes_removed: int = 0
    nodes_merged: int = 0
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return {
            "rule": self.rule,
            "applications": self.applications,
            "nodes_removed": self.nodes_removed,
            "nodes_merged": self.nodes_merged,
            "elapsed": self.elapsed,
        }


@dataclass
class PreprocessConfig:
    phase1: bool = True
    phase2: bool = True
    phase3: bool = True


def _pool(g: WeightedGraph, scope, protected):
    if scope is None:
        return [v for v in g.sorted_nodes() if v not in protected]
    return [v for v in sorted(scope) if v in g.weight and v not in protected]


def _scope_drop(scope, nodes):
    if scope is not None:
        scope.difference_update(nodes)


def _scope_add(scope, node):
    if scope is not None:
        scope.add(node)


def rule_isolated_negative(g, t, scope=None, protected=frozenset()) -> RuleReport:
    """Delete every degree-0 node with strictly negative weight."""
    start = time.perf_counter()
    report = RuleReport("isolated_negative")
    victims = [v for v in _pool(g, scope, protected)
               if g.degree(v) == 0 and g.weight[v] < 0.0]
    if victims:
        remove(g, t, victims)
        _scope_drop(scope, victims)
        report.applications = len(victims)
        report.nodes_removed = len(victims)
    report.elapsed = time.perf_counter() - start
    return report


def rule_merge_adjacent_positive(g, t, scope=None, protected=frozenset()) -> RuleReport:
    """Merge every maximal cluster of adjacent strictly positive nodes."""
    start = time.perf_counter()
    report = RuleReport("merge_adjacent_positive")
    pool = {v for v in _pool(g, scope, protected) if g.weight[v] > 0.0}
    visited: set[int] = set()
    clusters = []
    for v in sorted(pool):
        if v in visited:
            continue
        cluster = g.component_of(v, within=pool)
        visited |= cluster
        if len(cluster) >= 2:
            clusters.append(cluster)
    for cluster in clusters:
        new = merge(g, t, cluster)
        _scope_drop(scope, cluster)
        _scope_add(scope, new)
        report.applications += 1
        report.nodes_merged += len(cluster)
    report.elapsed = time.perf_counter() - start
    return report


def _chain_components(g, eligible):
    """Components of the subgraph induced by degree-2 candidates."""
    remaining = set(eligible)
    comps = []
    while remaining:
        comp = g.component_of(min(remaining), within=remaining)
        remaining -= comp
        comps.append(comp)
    comps.sort(key=min)
    return comps


def rule_negative_chain(g, t, scope=None, protected=frozenset()) -> RuleReport:
    """Merge every maximal chain of degree-2 strictly negative nodes.

    A fully negative cycle drops its largest id so the rest forms a chain;
    the multigraph left behind collapses through adjacency dedup. Chains
    of a single node are left alone (merging one node only relabels it).
    """
    start = time.perf_counter()
    report = RuleReport("negative_chain")
    while True:
        eligible = {v for v in _pool(g, scope, protected)
                    if g.degree(v) == 2 and g.weight[v] < 0.0}
        merged_any = False
        for comp in _chain_components(g, eligible):
            if len(comp) < 2:
                continue
            is_cycle = all(len(g.adj[v] & comp) == 2 for v in comp)
            chain = comp - {max(comp)} if is_cycle else comp
            if len(chain) < 2:
                continue
            new = merge(g, t, chain)
            _scope_drop(scope, chain)
            _scope_add(scope, new)
            report.applications += 1
            report.nodes_merged += len(chain)
            merged_any = True
        if not merged_any:
            break
    report.elapsed = time.perf_counter() - start
    return report


def rule_mirrored_hubs(g, t, scope=None, protected=frozenset()) -> RuleReport:
    """Drop dominated negative twins.

    Two negative nodes with identical neighborhoods (which forces them to
    be nonadjacent) are interchangeable in any solution, so only the one
    with the larger weight is kept; weight ties keep the larger id.
    Adjacent pairs are deliberately not covered.
    """
    start = time.perf_counter()
    report = RuleReport("mirrored_hubs")
    groups: dict[frozenset, list[int]] = {}
    for v in g.sorted_nodes():
        if g.weight[v] < 0.0:
            groups.setdefault(frozenset(g.adj[v]), []).append(v)
    removable_pool = set(_pool(g, scope, protected))
    victims = []
    for signature in sorted(groups, key=sorted):
        members = groups[signature]
        if len(members) < 2:
            continue
        keep = max(members, key=lambda v: (g.weight[v], v))
        victims.extend(v for v in members if v != keep and v in removable_pool)
    if victims:
        remove(g, t, victims)
        _scope_drop(scope, victims)
        report.applications = len(victims)
        report.nodes_removed = len(victims)
    report.elapsed = time.perf_counter() - start
    return report


def _bypass_distance(g, source, target):
    """Dijkstra distance from ``source`` to ``target``.

    Entering a node ``b`` costs ``max(-w(b), 0)``; the source itself is
    free, the target's own cost is charged like any other hop.
    """
    dist = {source: 0.0}
    heap = [(0.0, source)]
    done = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == target:
            return d
        for nb in sorted(g.adj[u]):
            if nb in done:
                continue
            nd = d + max(-g.weight[nb], 0.0)
            if nb not in dist or nd < dist[nb]:
                dist[nb] = nd
                heapq.heappush(heap, (nd, nb))
    return None


def rule_least_cost(g, t, scope=None, protected=frozenset()) -> RuleReport:
    """Remove degree-2 negative nodes with a strictly cheaper bypass.

    For such a node ``v`` with neighbors ``u`` and ``w``, the whole graph
    is searched for a directed path from ``u`` to ``w`` under arc costs
    ``max(-w(b), 0)`` charged on the entered endpoint; a distance strictly
    below ``-w(v)`` makes ``v`` redundant. Paths through ``v`` itself can
    never win, so they need no special casing.
    """
    start = time.perf_counter()
    report = RuleReport("least_cost")
    for v in _pool(g, scope, protected):
        if v not in g.weight or g.degree(v) != 2 or g.weight[v] >= 0.0:
            continue
        u, w = sorted(g.adj[v])
        d = _bypass_distance(g, u, w)
        if d is not None and d < -g.weight[v]:
            remove(g, t, [v])
            _scope_drop(scope, [v])
            report.applications += 1
            report.nodes_removed += 1
    report.elapsed = time.perf_counter() - start
    return report


PHASE1_RULES = (rule_isolated_negative, rule_merge_adjacent_positive, rule_negative_chain)


def preprocess(g: WeightedGraph, t: ReductionTrace, config: PreprocessConfig | None = None,
               scope=None, protected=frozenset()) -> list[RuleReport]:
    """Run the rules to a global fixpoint and return one report per run.

    Phase one loops its three rules until none applies; any application in
    phase two or three restarts from phase one.
    """
    cfg = config or PreprocessConfig()
    reports: list[RuleReport] = []

    def run(rule) -> int:
        rep = rule(g, t, scope=scope, protected=protected)
        reports.append(rep)
        return rep.applications

    while True:
        if cfg.phase1:
            while sum(run(rule) for rule in PHASE1_RULES) > 0:
                pass
        if cfg.phase2 and run(rule_mirrored_hubs) > 0:
            continue
        if cfg.phase3 and run(rule_least_cost) > 0:
            continue
        break
    return reports
