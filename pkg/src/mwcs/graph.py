"""Node-weighted graph model and provenance-tracked reduction operations.

The three operations ``merge``, ``isolate`` and ``remove`` rewrite a graph
in place while a :class:`ReductionTrace` keeps enough bookkeeping to map
node sets of the reduced graph back to node sets of the original instance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import MwcsError


class WeightedGraph:
    """Mutable undirected graph with real node weights.

    Adjacency is stored as sets, so parallel edges collapse and self-loops
    are rejected. Node ids are integers; ids of supernodes created during
    reductions come from a counter that never reuses an id.
    """

    __slots__ = ("weight", "adj", "_next_id")

    def __init__(self):
        self.weight: dict[int, float] = {}
        self.adj: dict[int, set[int]] = {}
        self._next_id = 0

    # -- construction -----------------------------------------------------

    def add_node(self, weight: float = 0.0, node_id: int | None = None) -> int:
        if node_id is None:
            node_id = self._next_id
        if node_id in self.weight:
            raise MwcsError(f"node {node_id} already present")
        self.weight[node_id] = float(weight)
        self.adj[node_id] = set()
        if node_id >= self._next_id:
            self._next_id = node_id + 1
        return node_id

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise MwcsError(f"self-loop at node {u}")
        if u not in self.adj or v not in self.adj:
            raise MwcsError(f"edge ({u},{v}) references an unknown node")
        self.adj[u].add(v)
        self.adj[v].add(u)

    def delete_node(self, v: int) -> None:
        if v not in self.adj:
            raise MwcsError(f"unknown node {v}")
        for nb in self.adj[v]:
            self.adj[nb].discard(v)
        del self.adj[v]
        del self.weight[v]

    # -- queries -----------------------------------------------------------

    def __contains__(self, v: int) -> bool:
        return v in self.weight

    def __len__(self) -> int:
        return len(self.weight)

    def nodes(self):
        return self.weight.keys()

    def sorted_nodes(self) -> list[int]:
        return sorted(self.weight)

    def edges(self):
        """Iterate edges as sorted ``(u, v)`` pairs with ``u < v``."""
        for u in sorted(self.adj):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield (u, v)

    def node_count(self) -> int:
        return len(self.weight)

    def edge_count(self) -> int:
        return sum(len(nbs) for nbs in self.adj.values()) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self.adj and v in self.adj[u]

    # -- derived graphs ----------------------------------------------------

    def copy(self) -> "WeightedGraph":
        g = WeightedGraph()
        g.weight = dict(self.weight)
        g.adj = {v: set(nbs) for v, nbs in self.adj.items()}
        g._next_id = self._next_id
        return g

    def induced(self, nodes) -> "WeightedGraph":
        """Copy of the subgraph induced by ``nodes``, keeping node ids."""
        node_set = set(nodes)
        unknown = node_set - self.weight.keys()
        if unknown:
            raise MwcsError(f"unknown nodes {sorted(unknown)}")
        g = WeightedGraph()
        g.weight = {v: self.weight[v] for v in node_set}
        g.adj = {v: self.adj[v] & node_set for v in node_set}
        g._next_id = self._next_id
        return g

    def component_of(self, start: int, within=None) -> set[int]:
        """Nodes reachable from ``start``, optionally restricted to ``within``."""
        seen = {start}
        queue = deque((start,))
        while queue:
            u = queue.popleft()
            for nb in self.adj[u]:
                if nb not in seen and (within is None or nb in within):
                    seen.add(nb)
                    queue.append(nb)
        return seen

    def components(self) -> list[set[int]]:
        """Connected components, ordered by smallest member id."""
        remaining = set(self.weight)
        comps = []
        while remaining:
            comp = self.component_of(min(remaining), within=remaining)
            comps.append(comp)
            remaining -= comp
        comps.sort(key=min)
        return comps


# -- basic whole-set queries ----------------------------------------------


def is_connected_subset(g: WeightedGraph, nodes) -> bool:
    """Whether ``nodes`` induce a connected subgraph (empty set counts)."""
    node_set = set(nodes)
    unknown = node_set - g.weight.keys()
    if unknown:
        raise MwcsError(f"unknown nodes {sorted(unknown)}")
    if not node_set:
        return True
    reached = g.component_of(min(node_set), within=node_set)
    return len(reached) == len(node_set)


def induced_weight(g: WeightedGraph, nodes) -> float:
    """Sum of node weights over ``nodes`` (summed in sorted id order)."""
    node_set = set(nodes)
    unknown = node_set - g.weight.keys()
    if unknown:
        raise MwcsError(f"unknown nodes {sorted(unknown)}")
    return sum(g.weight[v] for v in sorted(node_set))


# -- provenance ------------------------------------------------------------


class ReductionTrace:
    """Maps live nodes of a reduced graph back to original node sets.

    ``origin[s]`` is the set of original nodes a live node ``s`` stands
    for. Nodes created by ``isolate`` duplicate origins of live nodes, so
    disjointness of origin sets is only guaranteed across nodes that are
    not isolate copies. ``removed_candidates`` remembers the provenance of
    every node deleted by ``remove``; drivers use it to recover the best
    single candidate in degenerate all-nonpositive instances.
    """

    __slots__ = ("origin", "log", "isolate_copies", "removed_candidates")

    def __init__(self):
        self.origin: dict[int, frozenset[int]] = {}
        self.log: list[tuple] = []
        self.isolate_copies: set[int] = set()
        self.removed_candidates: list[tuple[float, frozenset[int]]] = []

    @classmethod
    def identity(cls, g: WeightedGraph) -> "ReductionTrace":
        t = cls()
        t.origin = {v: frozenset((v,)) for v in g.weight}
        return t


def merge(g: WeightedGraph, t: ReductionTrace, nodes) -> int:
    """Collapse a connected node set into a fresh supernode.

    The supernode weighs the sum of the merged weights and is adjacent to
    every former outside neighbor of the set. Returns the new node id.
    """
    node_set = set(nodes)
    if not node_set:
        raise MwcsError("merge of an empty node set")
    if not is_connected_subset(g, node_set):
        raise MwcsError(f"merge of a disconnected node set {sorted(node_set)}")
    ordered = sorted(node_set)
    total = sum(g.weight[v] for v in ordered)
    outside = set()
    for v in ordered:
        outside |= g.adj[v]
    outside -= node_set
    new = g.add_node(total)
    for nb in outside:
        g.add_edge(new, nb)
    for v in ordered:
        g.delete_node(v)
    t.origin[new] = frozenset().union(*(t.origin[v] for v in ordered))
    if node_set & t.isolate_copies:
        t.isolate_copies.add(new)
    for v in ordered:
        del t.origin[v]
        t.isolate_copies.discard(v)
    t.log.append(("merge", tuple(ordered), new))
    return new


def isolate(g: WeightedGraph, t: ReductionTrace, nodes) -> int:
    """Add a degree-0 copy of a connected node set, leaving the set intact.

    The copy weighs the sum of the set's weights and duplicates its
    origins. Returns the new node id.
    """
    node_set = set(nodes)
    if not node_set:
        raise MwcsError("isolate of an empty node set")
    if not is_connected_subset(g, node_set):
        raise MwcsError(f"isolate of a disconnected node set {sorted(node_set)}")
    ordered = sorted(node_set)
    total = sum(g.weight[v] for v in ordered)
    new = g.add_node(total)
    t.origin[new] = frozenset().union(*(t.origin[v] for v in ordered))
    t.isolate_copies.add(new)
    t.log.append(("isolate", tuple(ordered), new))
    return new


def remove(g: WeightedGraph, t: ReductionTrace, nodes) -> None:
    """Delete nodes and their incident edges. Removing nothing is a no-op."""
    node_set = set(nodes)
    if not node_set:
        return
    unknown = node_set - g.weight.keys()
    if unknown:
        raise MwcsError(f"unknown nodes {sorted(unknown)}")
    ordered = sorted(node_set)
    for v in ordered:
        t.removed_candidates.append((g.weight[v], t.origin[v]))
        g.delete_node(v)
        del t.origin[v]
        t.isolate_copies.discard(v)
    t.log.append(("remove", tuple(ordered), ()))


def expand_solution(t: ReductionTrace, reduced) -> frozenset[int]:
    """Map a node set of the reduced graph to original node ids."""
    reduced_set = set(reduced)
    unknown = reduced_set - t.origin.keys()
    if unknown:
        raise MwcsError(f"nodes {sorted(unknown)} are not live in the trace")
    if not reduced_set:
        return frozenset()
    return frozenset().union(*(t.origin[v] for v in reduced_set))


# -- validation helpers (used heavily by the test suite) --------------------


def graph_problems(g: WeightedGraph) -> list[str]:
    """Structural defects of ``g``: asymmetry, loops, dangling adjacency."""
    problems = []
    for u, nbs in g.adj.items():
        if u in nbs:
            problems.append(f"self-loop at {u}")
        for v in nbs:
            if v not in g.adj:
                problems.append(f"adjacency of {u} mentions unknown node {v}")
            elif u not in g.adj[v]:
                problems.append(f"asymmetric edge ({u},{v})")
    if g.weight.keys() != g.adj.keys():
        problems.append("weight/adjacency key mismatch")
    return problems


def trace_problems(g: WeightedGraph, t: ReductionTrace,
                   original: WeightedGraph, tol: float = 1e-9) -> list[str]:
    """Consistency defects of a trace relative to the original instance."""
    problems = []
    if t.origin.keys() != g.weight.keys():
        problems.append("trace origins do not match live nodes")
    seen: dict[int, int] = {}
    for v in sorted(t.origin):
        org = t.origin[v]
        if not org:
            problems.append(f"empty origin for {v}")
            continue
        stray = org - original.weight.keys()
        if stray:
            problems.append(f"origin of {v} has unknown originals {sorted(stray)}")
            continue
        total = sum(original.weight[o] for o in sorted(org))
        if abs(total - g.weight.get(v, float("nan"))) > tol:
            problems.append(f"weight of {v} disagrees with its origin sum")
        if v not in t.isolate_copies:
            for o in org:
                if o in seen and seen[o] not in t.isolate_copies:
                    problems.append(f"original {o} owned by both {seen[o]} and {v}")
                seen[o] = v
    return problems


# -- solutions ---------------------------------------------------------------

STATUS_OPTIMAL = "optimal"
STATUS_GAP = "gap"


@dataclass(frozen=True)
class Solution:
    """A node subset with its objective value and optimality status."""

    nodes: frozenset[int]
    objective: float
    status: str
    lower: float
    upper: float

    @classmethod
    def optimal(cls, nodes, objective: float) -> "Solution":
        return cls(frozenset(nodes), objective, STATUS_OPTIMAL, objective, objective)

    @classmethod
    def with_gap(cls, nodes, lower: float, upper: float) -> "Solution":
        return cls(frozenset(nodes), lower, STATUS_GAP, lower, upper)

    @property
    def is_optimal(self) -> bool:
        return self.status == STATUS_OPTIMAL
