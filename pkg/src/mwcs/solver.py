"""Exact solving of unrooted and rooted instances on (small) graphs.

The mandatory engine is a best-first branch and bound over node
inclusion/exclusion decisions with a reachability upper bound, seeded and
refreshed by a spanning-tree primal heuristic. Connectivity reasoning is
shared with two standalone separation routines (integral and fractional)
and with emission/validation of the matching 0/1 formulation; the
fractional routine would drive an external LP relaxation, which is an
optional plug-in and not needed by the exact engine.
"""

from __future__ import annotations

import heapq
import itertools
import math
import time
from collections import deque
from dataclasses import dataclass, field

from .errors import BudgetExhaustedError, InfeasibleError, MwcsError
from .graph import (
    Solution,
    WeightedGraph,
    induced_weight,
    is_connected_subset,
)

VIOLATION_TOL = 1e-6


# -- trees --------------------------------------------------------------------


def tree_dp(tree: WeightedGraph, root: int, roots=None):
    """Optimal connected superset of ``roots`` in a tree, rooted at ``root``.

    Returns ``(value, witness)`` where ``value[v]`` is the best achievable
    weight of a connected set that contains ``v`` and all required nodes in
    the subtree below ``v``, and ``witness`` realizes ``value[root]``.
    Required nodes anywhere below a child force that child; optional
    children contribute only when their value is positive. Linear time,
    iterative, so paths of any length are fine.
    """
    if root not in tree.weight:
        raise MwcsError(f"unknown root {root}")
    required = frozenset(roots or ())
    unknown = required - tree.weight.keys()
    if unknown:
        raise MwcsError(f"unknown required nodes {sorted(unknown)}")
    if required and root not in required:
        raise MwcsError("the DP root must be one of the required nodes")
    n = tree.node_count()
    if tree.edge_count() != n - 1:
        raise MwcsError("input graph is not a tree")

    parent: dict[int, int | None] = {root: None}
    order = [root]
    stack = [root]
    while stack:
        u = stack.pop()
        for nb in tree.adj[u]:
            if nb not in parent:
                parent[nb] = u
                order.append(nb)
                stack.append(nb)
    if len(order) != n:
        raise MwcsError("input graph is not a tree")

    value: dict[int, float] = {}
    forced: dict[int, bool] = {}
    for u in reversed(order):
        total = tree.weight[u]
        need = u in required
        for nb in tree.adj[u]:
            if nb == parent[u]:
                continue
            if forced[nb]:
                total += value[nb]
                need = True
            elif value[nb] > 0.0:
                total += value[nb]
        value[u] = total
        forced[u] = need

    witness = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for nb in tree.adj[u]:
            if nb != parent[u] and parent[nb] == u and (forced[nb] or value[nb] > 0.0):
                witness.add(nb)
                stack.append(nb)
    return value, frozenset(witness)


# -- primal heuristic ---------------------------------------------------------


@dataclass(frozen=True)
class FractionalPoint:
    """A relaxation point: selection values ``x`` and root values ``y``."""

    x: dict[int, float]
    y: dict[int, float] | None = None

    def problems(self, tol: float = 1e-9) -> list[str]:
        out = []
        for v, val in self.x.items():
            if not -tol <= val <= 1.0 + tol:
                out.append(f"x[{v}] out of [0,1]")
        if self.y is not None:
            for v, val in self.y.items():
                if val < -tol or val > self.x.get(v, 0.0) + tol:
                    out.append(f"y[{v}] out of [0, x[{v}]]")
            if abs(sum(sorted(self.y.values())) - 1.0) > 1e-6:
                out.append("root values do not sum to 1")
        return out


class _DisjointSets:
    def __init__(self, items):
        self.parent = {v: v for v in items}

    def find(self, v):
        p = self.parent
        while p[v] != v:
            p[v] = p[p[v]]
            v = p[v]
        return v

    def union(self, u, v) -> bool:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        self.parent[ru] = rv
        return True


def _spanning_tree(g: WeightedGraph, comp, xbar) -> WeightedGraph:
    """Kruskal minimum spanning tree of one component under costs 2-(x_u+x_v)."""
    edges = []
    for u in sorted(comp):
        for v in sorted(g.adj[u]):
            if u < v and v in comp:
                cost = 2.0 - (xbar.get(u, 1.0) + xbar.get(v, 1.0))
                edges.append((cost, u, v))
    edges.sort()
    tree = WeightedGraph()
    for v in comp:
        tree.add_node(g.weight[v], node_id=v)
    dsu = _DisjointSets(comp)
    picked = 0
    for _, u, v in edges:
        if dsu.union(u, v):
            tree.add_edge(u, v)
            picked += 1
            if picked == len(comp) - 1:
                break
    return tree


def primal_heuristic(g: WeightedGraph, point: FractionalPoint | None = None,
                     roots=None) -> Solution:
    """Feasible solution from a minimum spanning tree plus the tree DP.

    Edge costs are ``2 - (x_u + x_v)`` under the given point (all-ones when
    none is supplied). Unrooted, every positively weighted node is tried as
    the DP root; rooted, the tree is rooted once at the smallest root. The
    result is always feasible, so its objective lower-bounds the optimum.
    """
    roots = frozenset(roots or ())
    unknown = roots - g.weight.keys()
    if unknown:
        raise MwcsError(f"unknown root nodes {sorted(unknown)}")
    if g.node_count() == 0:
        return Solution.with_gap((), 0.0, math.inf)
    xbar = point.x if point is not None else {}

    if roots:
        comp = g.component_of(min(roots))
        if not roots <= comp:
            raise InfeasibleError("root nodes fall into different components")
        tree = _spanning_tree(g, comp, xbar)
        value, witness = tree_dp(tree, min(roots), roots)
        return Solution.with_gap(witness, value[min(roots)], math.inf)

    best_val = None
    best_nodes = None
    for comp in g.components():
        tree = None
        for r in sorted(comp):
            if g.weight[r] <= 0.0:
                continue
            if tree is None:
                tree = _spanning_tree(g, comp, xbar)
            value, witness = tree_dp(tree, r)
            if best_val is None or value[r] > best_val:
                best_val, best_nodes = value[r], witness
    if best_val is None:
        # no positive node anywhere: best single node
        single = max(g.sorted_nodes(), key=lambda v: (g.weight[v], -v))
        best_val, best_nodes = g.weight[single], frozenset((single,))
    return Solution.with_gap(best_nodes, best_val, math.inf)


# -- separation ----------------------------------------------------------------


@dataclass(frozen=True)
class CutConstraint:
    """One node-separator inequality: the target node, its set S, and its boundary."""

    target: int
    inside: frozenset[int]
    boundary: frozenset[int]


def boundary_of(g: WeightedGraph, nodes) -> frozenset[int]:
    node_set = set(nodes)
    out = set()
    for v in node_set:
        out |= g.adj[v]
    return frozenset(out - node_set)


def _selected_set(g, x) -> set[int]:
    if isinstance(x, dict):
        return {v for v, val in x.items() if val >= 0.5}
    return set(x)


def separate_integral(g: WeightedGraph, x, y=None, roots=None) -> list[CutConstraint]:
    """Violated connectivity cuts at an integral point.

    Every connected component of the selected subgraph that misses the root
    (unrooted: the unique node with ``y = 1``; rooted: each node of
    ``roots``) yields one cut with ``S`` the component itself. An empty
    result means the selection is connected to the root(s).
    """
    selected = _selected_set(g, x)
    unknown = selected - g.weight.keys()
    if unknown:
        raise MwcsError(f"unknown selected nodes {sorted(unknown)}")

    root_set: frozenset[int]
    if roots is not None:
        root_set = frozenset(roots)
    else:
        if y is None:
            raise MwcsError("unrooted separation needs root indicators")
        chosen = sorted(v for v, val in y.items() if val >= 0.5)
        if len(chosen) != 1 or chosen[0] not in selected:
            raise MwcsError("root indicators must select exactly one chosen node")
        root_set = frozenset(chosen)

    cuts = []
    remaining = set(selected)
    while remaining:
        comp = g.component_of(min(remaining), within=remaining)
        remaining -= comp
        if root_set <= comp:
            continue
        non_root = sorted(comp - root_set)
        if not non_root:
            continue
        cuts.append(CutConstraint(non_root[0], frozenset(comp), boundary_of(g, comp)))
    cuts.sort(key=lambda c: c.target)
    return cuts


@dataclass
class SupportDigraph:
    """Node-split digraph with capacities taken from a fractional point."""

    size: int
    arcs: dict[tuple[int, int], float]
    source: int | None
    entry: dict[int, int]
    exit: dict[int, int]
    root_index: dict[int, int]


def build_support_digraph(g: WeightedGraph, point: FractionalPoint,
                          roots=None) -> SupportDigraph:
    """Auxiliary digraph for min-cut separation.

    Unrooted: every node ``v`` splits into ``v1 -> v2`` with capacity
    ``x_v``, edges become unit arcs ``u2 -> v1`` both ways, and an
    artificial source feeds every ``v1`` with capacity ``y_v``. Rooted:
    root nodes stay unsplit and feed their non-root neighbors with unit
    arcs; edges between two roots contribute nothing.
    """
    arcs: dict[tuple[int, int], float] = {}
    entry: dict[int, int] = {}
    exit_: dict[int, int] = {}
    root_index: dict[int, int] = {}
    counter = itertools.count()

    if roots is None:
        if point.y is None:
            raise MwcsError("unrooted support digraph needs root values")
        source = next(counter)
        for v in g.sorted_nodes():
            entry[v] = next(counter)
            exit_[v] = next(counter)
            arcs[(entry[v], exit_[v])] = point.x.get(v, 0.0)
            arcs[(source, entry[v])] = point.y.get(v, 0.0)
        for u, v in g.edges():
            arcs[(exit_[u], entry[v])] = 1.0
            arcs[(exit_[v], entry[u])] = 1.0
        return SupportDigraph(next(counter), arcs, source, entry, exit_, root_index)

    root_set = frozenset(roots)
    for r in sorted(root_set):
        root_index[r] = next(counter)
    for v in g.sorted_nodes():
        if v in root_set:
            continue
        entry[v] = next(counter)
        exit_[v] = next(counter)
        arcs[(entry[v], exit_[v])] = point.x.get(v, 0.0)
    for u, v in g.edges():
        if u in root_set and v in root_set:
            continue
        if u in root_set:
            arcs[(root_index[u], entry[v])] = 1.0
        elif v in root_set:
            arcs[(root_index[v], entry[u])] = 1.0
        else:
            arcs[(exit_[u], entry[v])] = 1.0
            arcs[(exit_[v], entry[u])] = 1.0
    return SupportDigraph(next(counter), arcs, None, entry, exit_, root_index)


def _max_flow(d: SupportDigraph, s: int, t: int):
    """Edmonds-Karp max flow; returns the value and the residual source side."""
    residual: list[dict[int, float]] = [dict() for _ in range(d.size)]
    for (a, b), cap in d.arcs.items():
        residual[a][b] = residual[a].get(b, 0.0) + cap
        residual[b].setdefault(a, 0.0)
    neighbors = [sorted(res) for res in residual]

    flow = 0.0
    while True:
        parent: dict[int, int] = {s: s}
        queue = deque((s,))
        while queue and t not in parent:
            u = queue.popleft()
            for nb in neighbors[u]:
                if nb not in parent and residual[u][nb] > 1e-12:
                    parent[nb] = u
                    queue.append(nb)
        if t not in parent:
            break
        bottleneck = math.inf
        v = t
        while v != s:
            u = parent[v]
            bottleneck = min(bottleneck, residual[u][v])
            v = u
        v = t
        while v != s:
            u = parent[v]
            residual[u][v] -= bottleneck
            residual[v][u] += bottleneck
            v = u
        flow += bottleneck

    reach = {s}
    queue = deque((s,))
    while queue:
        u = queue.popleft()
        for nb in neighbors[u]:
            if nb not in reach and residual[u][nb] > 1e-12:
                reach.add(nb)
                queue.append(nb)
    return flow, reach


def separate_fractional(g: WeightedGraph, point: FractionalPoint, roots=None,
                        tol: float = VIOLATION_TOL) -> list[CutConstraint]:
    """Violated connectivity cuts at a fractional point via min cuts.

    For every node with positive selection value (and, rooted, every root)
    a min cut from the source to the node's exit copy is computed; a cut
    value below the selection value witnesses a violated inequality. The
    set ``S`` is read off the sink side of the cut and its boundary is
    recomputed from the graph, then the violation is re-verified before
    the cut is emitted.
    """
    cuts = []
    seen_insides = set()
    if roots is None:
        d = build_support_digraph(g, point)
        sources = [d.source]
    else:
        root_set = frozenset(roots)
        d = build_support_digraph(g, point, root_set)
        sources = [d.root_index[r] for r in sorted(root_set)]

    for src in sources:
        for v in g.sorted_nodes():
            xv = point.x.get(v, 0.0)
            if xv <= tol or v not in d.exit:
                continue
            flow, reach = _max_flow(d, src, d.exit[v])
            if flow >= xv - tol:
                continue
            inside = {u for u, ex in d.exit.items() if ex not in reach}
            for r, idx in d.root_index.items():
                if idx not in reach:
                    inside.add(r)
            if v not in inside:
                continue
            boundary = boundary_of(g, inside)
            lhs = sum(point.x.get(u, 0.0) for u in sorted(boundary))
            if roots is None:
                lhs += sum(point.y.get(u, 0.0) for u in sorted(inside))
            if xv > lhs + tol:
                key = (v, frozenset(inside))
                if key not in seen_insides:
                    seen_insides.add(key)
                    cuts.append(CutConstraint(v, frozenset(inside), boundary))
    cuts.sort(key=lambda c: (c.target, sorted(c.inside)))
    return cuts


# -- formulation ----------------------------------------------------------------


@dataclass(frozen=True)
class LinearConstraint:
    name: str
    coeffs: dict[str, float]
    sense: str  # "<=" or "="
    rhs: float

    def satisfied(self, values: dict[str, float], tol: float = 1e-9) -> bool:
        lhs = sum(c * values.get(var, 0.0) for var, c in sorted(self.coeffs.items()))
        if self.sense == "<=":
            return lhs <= self.rhs + tol
        return abs(lhs - self.rhs) <= tol


@dataclass
class IlpModel:
    objective: dict[str, float]
    constraints: list[LinearConstraint]
    variables: list[str]
    node_of_x: dict[str, int]
    node_of_y: dict[str, int] = field(default_factory=dict)


def build_model(g: WeightedGraph, roots=None, strengthen: bool = False) -> IlpModel:
    """Structured formulation; the exponential cut family is left to separation."""
    order = g.sorted_nodes()
    pos = {v: i + 1 for i, v in enumerate(order)}
    xvar = {v: f"x_{pos[v]}" for v in order}
    node_of_x = {xvar[v]: v for v in order}
    cons: list[LinearConstraint] = []

    if roots is None:
        yvar = {v: f"y_{pos[v]}" for v in order}
        node_of_y = {yvar[v]: v for v in order}
        cons.append(LinearConstraint(
            "one_root", {yvar[v]: 1.0 for v in order}, "=", 1.0))
        for v in order:
            cons.append(LinearConstraint(
                f"root_selected_{pos[v]}", {yvar[v]: 1.0, xvar[v]: -1.0}, "<=", 0.0))
        for v in order:
            coeffs = {xvar[v]: 1.0, yvar[v]: -1.0}
            for u in sorted(g.adj[v]):
                coeffs[xvar[u]] = coeffs.get(xvar[u], 0.0) - 1.0
            cons.append(LinearConstraint(f"neighbor_or_root_{pos[v]}", coeffs, "<=", 0.0))
        if strengthen:
            for v in order:
                if g.weight[v] < 0.0:
                    cons.append(LinearConstraint(
                        f"no_negative_root_{pos[v]}", {yvar[v]: 1.0}, "=", 0.0))
            for v in order:
                if g.weight[v] > 0.0:
                    coeffs = {yvar[u]: 1.0 for u in order if pos[u] > pos[v]}
                    coeffs[xvar[v]] = 1.0
                    cons.append(LinearConstraint(
                        f"smallest_root_{pos[v]}", coeffs, "<=", 1.0))
            for u, v in g.edges():
                for a, b in ((u, v), (v, u)):
                    if g.weight[a] > 0.0 and g.weight[b] < 0.0:
                        cons.append(LinearConstraint(
                            f"negative_follows_{pos[b]}_{pos[a]}",
                            {xvar[b]: 1.0, xvar[a]: -1.0}, "<=", 0.0))
            for v in order:
                if g.weight[v] < 0.0:
                    coeffs = {xvar[v]: 2.0}
                    for u in sorted(g.adj[v]):
                        coeffs[xvar[u]] = coeffs.get(xvar[u], 0.0) - 1.0
                    cons.append(LinearConstraint(
                        f"negative_passthrough_{pos[v]}", coeffs, "<=", 0.0))
        variables = [xvar[v] for v in order] + [yvar[v] for v in order]
        objective = {xvar[v]: g.weight[v] for v in order}
        return IlpModel(objective, cons, variables, node_of_x, node_of_y)

    root_set = frozenset(roots)
    unknown = root_set - g.weight.keys()
    if unknown:
        raise MwcsError(f"unknown root nodes {sorted(unknown)}")
    for r in sorted(root_set):
        cons.append(LinearConstraint(f"root_fixed_{pos[r]}", {xvar[r]: 1.0}, "=", 1.0))
    for v in order:
        if v in root_set:
            continue
        coeffs = {xvar[v]: 1.0}
        for u in sorted(g.adj[v]):
            coeffs[xvar[u]] = coeffs.get(xvar[u], 0.0) - 1.0
        cons.append(LinearConstraint(f"neighbor_needed_{pos[v]}", coeffs, "<=", 0.0))
    if strengthen:
        for u, v in g.edges():
            for a, b in ((u, v), (v, u)):
                if g.weight[a] > 0.0 and g.weight[b] < 0.0:
                    cons.append(LinearConstraint(
                        f"negative_follows_{pos[b]}_{pos[a]}",
                        {xvar[b]: 1.0, xvar[a]: -1.0}, "<=", 0.0))
    variables = [xvar[v] for v in order]
    objective = {xvar[v]: g.weight[v] for v in order}
    return IlpModel(objective, cons, variables, node_of_x)


def _coef(value: float) -> str:
    if value == int(value):
        return str(int(value))
    return repr(value)


def _terms(coeffs: dict[str, float], variables: list[str]) -> str:
    parts = []
    for var in variables:
        if var not in coeffs or coeffs[var] == 0.0:
            continue
        c = coeffs[var]
        if not parts:
            parts.append(f"- {_coef(-c)} {var}" if c < 0 else f"{_coef(c)} {var}")
        else:
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {_coef(abs(c))} {var}")
    return " ".join(parts) if parts else "0 " + variables[0]


def emit_ilp(g: WeightedGraph, roots=None, strengthen: bool = False) -> str:
    """Plain-text linear program with deterministic row and variable order."""
    model = build_model(g, roots, strengthen)
    lines = ["Maximize", f" obj: {_terms(model.objective, model.variables)}", "Subject To"]
    for con in model.constraints:
        op = "=" if con.sense == "=" else "<="
        lines.append(f" {con.name}: {_terms(con.coeffs, model.variables)} {op} {_coef(con.rhs)}")
    lines.append("Bounds")
    for var in model.variables:
        lines.append(f" 0 <= {var} <= 1")
    lines.append("Binaries")
    lines.append(" " + " ".join(model.variables))
    lines.append("End")
    return "\n".join(lines) + "\n"


def check_feasible(g: WeightedGraph, x, y=None, roots=None,
                   strengthen: bool = False):
    """Evaluate all structural constraints plus the lazy connectivity family.

    Returns ``(ok, violations)`` where violations mixes names of violated
    rows with the violated :class:`CutConstraint` objects found by
    integral separation.
    """
    model = build_model(g, roots, strengthen)
    selected = _selected_set(g, x)
    values = {var: (1.0 if node in selected else 0.0)
              for var, node in model.node_of_x.items()}
    if roots is None:
        ydict = y or {}
        for var, node in model.node_of_y.items():
            values[var] = 1.0 if ydict.get(node, 0.0) >= 0.5 else 0.0
    violations: list = [con.name for con in model.constraints
                        if not con.satisfied(values)]
    if selected:
        violations.extend(separate_integral(g, selected, y=y, roots=roots))
    return (not violations), violations


# -- branch and bound ------------------------------------------------------------


@dataclass
class BackoffSchedule:
    """Linearly growing waiting periods between expensive refresh attempts.

    ``ready`` advances the counter and reports whether an attempt is due;
    the caller then reports the outcome through ``record``, which resets
    the counter and, on success, lengthens the waiting period by one.
    """

    waiting_period: int = 1
    counter: int = 0

    def ready(self) -> bool:
        self.counter += 1
        return self.counter >= self.waiting_period

    def record(self, success: bool) -> None:
        self.counter = 0
        if success:
            self.waiting_period += 1


class _Budget:
    def __init__(self, node_budget=None, deadline=None):
        self.remaining = node_budget
        self.deadline = deadline

    def spend(self) -> bool:
        """Charge one expansion; False when the budget is gone."""
        if self.deadline is not None and time.monotonic() >= self.deadline:
            return False
        if self.remaining is not None:
            if self.remaining <= 0:
                return False
            self.remaining -= 1
        return True


def _reach_bound(g: WeightedGraph, included: frozenset, excluded: frozenset) -> float:
    """Upper bound on any completion of a partial in/out assignment.

    Forced weight plus the best radius-limited positive mass: a cheapest
    connection distance ``d(p)`` to every undecided positive comes from
    one Dijkstra out of the forced region (entering ``x`` costs
    ``max(0, -w(x))``, forced nodes are free), and a completion that
    collects positives out to radius ``r`` pays at least
    ``max(r, r_forced)`` in negative weight, where ``r_forced`` connects
    the forced nodes themselves. This dominates the plain sum of
    reachable positive weights. Returns ``-inf`` when the forced nodes
    can no longer be reconnected. Without forced nodes the bound is the
    best positive mass of any component of the graph minus the excluded
    nodes.
    """
    if not included:
        best = -math.inf
        remaining = set(g.weight) - excluded
        while remaining:
            comp = g.component_of(min(remaining), within=remaining)
            remaining -= comp
            best = max(best, sum(g.weight[v] for v in comp if g.weight[v] > 0.0))
        return best

    start = min(included)
    dist = {start: 0.0}
    heap = [(0.0, start)]
    done: dict[int, float] = {}
    while heap:
        d, x = heapq.heappop(heap)
        if x in done:
            continue
        done[x] = d
        for nb in g.adj[x]:
            if nb in excluded or nb in done:
                continue
            nd = d + (0.0 if nb in included else max(0.0, -g.weight[nb]))
            if nb not in dist or nd < dist[nb]:
                dist[nb] = nd
                heapq.heappush(heap, (nd, nb))
    if any(x not in done for x in included):
        return -math.inf
    base = sum(g.weight[x] for x in sorted(included))
    r_forced = max(done[x] for x in included)
    gains = sorted(
        (d, g.weight[p]) for p, d in done.items()
        if p not in included and g.weight[p] > 0.0
    )
    best = -r_forced
    acc = 0.0
    for d, w in gains:
        acc += w
        value = acc - max(d, r_forced)
        if value > best:
            best = value
    return base + best


def _component_search(g: WeightedGraph, roots: frozenset, budget: _Budget,
                      backoff: BackoffSchedule | None):
    """Best-first in/out search on one connected graph.

    Returns ``(value, nodes, upper, proved)``.
    """
    heur = primal_heuristic(g, None, roots or None)
    inc_val, inc_nodes = heur.objective, heur.nodes
    biased = FractionalPoint({v: 1.0 if g.weight[v] > 0.0 else 0.25 for v in g.nodes()})
    heur2 = primal_heuristic(g, biased, roots or None)
    if heur2.objective > inc_val:
        inc_val, inc_nodes = heur2.objective, heur2.nodes
    if not roots:
        single = max(g.sorted_nodes(), key=lambda v: (g.weight[v], -v))
        if g.weight[single] > inc_val:
            inc_val, inc_nodes = g.weight[single], frozenset((single,))

    root_ub = _reach_bound(g, roots, frozenset())
    heap = [(-root_ub, 0, roots, frozenset())]
    ticket = itertools.count(1)
    proved = False
    exhausted = False

    while heap:
        if not budget.spend():
            exhausted = True
            break
        neg_ub, _, included, excluded = heapq.heappop(heap)
        if -neg_ub <= inc_val + 1e-12:
            proved = True
            break

        if backoff is not None and backoff.ready():
            xbar = {v: 1.0 if v in included else 0.0 if v in excluded else 0.5
                    for v in g.nodes()}
            refreshed = primal_heuristic(g, FractionalPoint(xbar), roots or None)
            improved = refreshed.objective > inc_val
            if improved:
                inc_val, inc_nodes = refreshed.objective, refreshed.nodes
            backoff.record(improved)

        if included and is_connected_subset(g, included):
            w = induced_weight(g, included)
            if w > inc_val:
                inc_val, inc_nodes = w, included

        undecided_pool = g.weight.keys() - included - excluded
        if included:
            frontier = set()
            for u in included:
                frontier |= g.adj[u]
            candidates = frontier & undecided_pool
        else:
            candidates = undecided_pool
        if not candidates:
            continue
        branch = max(candidates, key=lambda v: (g.weight[v], -v))

        for child_inc, child_exc in (
            (included | {branch}, excluded),
            (included, excluded | {branch}),
        ):
            ub = _reach_bound(g, child_inc, child_exc)
            if ub > inc_val + 1e-12:
                heapq.heappush(heap, (-ub, next(ticket), child_inc, child_exc))
    else:
        proved = True

    if proved:
        upper = inc_val
    else:
        upper = max([inc_val] + [-entry[0] for entry in heap])
        if exhausted:
            upper = max(upper, root_ub if not heap else upper)
    return inc_val, inc_nodes, upper, proved


def bnb_drive(g: WeightedGraph, roots=None, *, allow_empty: bool = False,
              node_budget: int | None = None, deadline: float | None = None,
              require_optimal: bool = False,
              backoff: BackoffSchedule | None = None) -> Solution:
    """Best-first branch and bound over node decisions.

    ``node_budget`` limits subproblem expansions and ``deadline`` is an
    absolute ``time.monotonic`` stamp; on exhaustion the best known
    solution is returned with valid bounds (or ``BudgetExhaustedError``
    is raised when ``require_optimal``). Subproblem order is by best
    bound with creation-index tie-breaks, so runs are deterministic.
    """
    root_set = frozenset(roots or ())
    unknown = root_set - g.weight.keys()
    if unknown:
        raise MwcsError(f"unknown root nodes {sorted(unknown)}")
    if g.node_count() == 0:
        return Solution.optimal(frozenset(), 0.0)

    budget = _Budget(node_budget, deadline)
    if root_set:
        comp = g.component_of(min(root_set))
        if not root_set <= comp:
            raise InfeasibleError("root nodes fall into different components")
        comps = [comp]
    else:
        comps = g.components()

    best_val = None
    best_nodes: frozenset = frozenset()
    upper = -math.inf
    all_proved = True
    for comp in comps:
        sub = g.induced(comp)
        val, nodes, comp_upper, proved = _component_search(
            sub, root_set, budget, backoff)
        if best_val is None or val > best_val:
            best_val, best_nodes = val, nodes
        upper = max(upper, comp_upper)
        all_proved = all_proved and proved

    if allow_empty and not root_set and best_val < 0.0:
        best_val, best_nodes = 0.0, frozenset()
        upper = max(upper, 0.0)
    if all_proved:
        return Solution.optimal(best_nodes, best_val)
    if require_optimal:
        raise BudgetExhaustedError("search budget exhausted before optimality")
    return Solution.with_gap(best_nodes, best_val, upper)


def solve_unrooted(g: WeightedGraph, **kwargs) -> Solution:
    """Optimal connected subgraph; best nonempty unless ``allow_empty``."""
    return bnb_drive(g, None, **kwargs)


def solve_rooted(g: WeightedGraph, roots, **kwargs) -> Solution:
    """Optimal connected subgraph containing every node of ``roots``."""
    if not roots:
        raise MwcsError("rooted solve needs a nonempty root set")
    kwargs.pop("allow_empty", None)
    return bnb_drive(g, roots, **kwargs)


# -- optional LP-driven loop -------------------------------------------------------


def cutting_plane_loop(g: WeightedGraph, backend, roots=None,
                       strengthen: bool = True, max_rounds: int = 50):
    """Drive an external relaxation backend with lazily separated cuts.

    ``backend`` is called with ``(model, extra_cuts)`` and must return a
    :class:`FractionalPoint` or ``None``. The loop separates violated
    connectivity cuts at each returned point and stops when none remain.
    This is a plug-in seam for LP-based solving; the exact engine above
    does not depend on it.
    """
    model = build_model(g, roots, strengthen)
    cuts: list[CutConstraint] = []
    for _ in range(max_rounds):
        point = backend(model, cuts)
        if point is None:
            return None, cuts
        new = separate_fractional(g, point, roots)
        fresh = [c for c in new if c not in cuts]
        if not fresh:
            return point, cuts
        cuts.extend(fresh)
    return None, cuts
