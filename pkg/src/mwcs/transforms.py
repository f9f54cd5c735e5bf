"""Reductions between the prize-collecting and node-weighted problems."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MwcsError, ParseError
from .graph import WeightedGraph

SplitMap = dict  # split node id -> (u, v) original edge


@dataclass
class PCSTInstance:
    """Prize-collecting instance: nonnegative node profits and edge costs."""

    profit: dict[int, float]
    cost: dict[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        normalized = {}
        for (u, v), c in self.cost.items():
            if u == v:
                raise MwcsError(f"self-loop at node {u}")
            if u not in self.profit or v not in self.profit:
                raise MwcsError(f"edge ({u},{v}) references an unknown node")
            if c < 0.0:
                raise MwcsError(f"negative cost on edge ({u},{v})")
            normalized[(min(u, v), max(u, v))] = float(c)
        self.cost = normalized
        for v, p in self.profit.items():
            if p < 0.0:
                raise MwcsError(f"negative profit at node {v}")

    def skeleton(self) -> WeightedGraph:
        g = WeightedGraph()
        for v in sorted(self.profit):
            g.add_node(self.profit[v], node_id=v)
        for u, v in sorted(self.cost):
            g.add_edge(u, v)
        return g


def pcst_to_mwcs(inst: PCSTInstance) -> tuple[WeightedGraph, SplitMap]:
    """Split every edge through a new node carrying the negated edge cost.

    The result has ``|V| + |E|`` nodes and ``2 |E|`` edges; original nodes
    keep their profit as weight.
    """
    g = WeightedGraph()
    for v in sorted(inst.profit):
        g.add_node(inst.profit[v], node_id=v)
    split_map: SplitMap = {}
    for u, v in sorted(inst.cost):
        s = g.add_node(-inst.cost[(u, v)])
        g.add_edge(u, s)
        g.add_edge(s, v)
        split_map[s] = (u, v)
    return g, split_map


def mwcs_solution_to_pcst(sol, split_map: SplitMap, inst: PCSTInstance):
    """Map a solution of the split graph back to a prize-collecting tree.

    Split nodes turn back into their edges; when the mapped edge set holds
    a cycle, the lexicographically smallest spanning tree of it is kept
    (only zero-cost edges can be dropped without changing optimal profit).
    Returns ``(tree_nodes, tree_edges, profit)``.
    """
    chosen = set(sol)
    tree_nodes = {v for v in chosen if v not in split_map}
    mapped_edges = []
    for s in sorted(chosen & split_map.keys()):
        u, v = split_map[s]
        if u not in chosen or v not in chosen:
            raise MwcsError(f"split node {s} selected without both endpoints")
        mapped_edges.append((min(u, v), max(u, v)))

    parent = {v: v for v in tree_nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    kept = []
    for u, v in sorted(mapped_edges):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            kept.append((u, v))
    profit = sum(inst.profit[v] for v in sorted(tree_nodes))
    profit -= sum(inst.cost[e] for e in kept)
    return frozenset(tree_nodes), tuple(kept), profit


def mwcs_to_pcst(g: WeightedGraph) -> tuple[PCSTInstance, float]:
    """Shift weights into nonnegative profits and uniform edge costs.

    With ``base = min(0, min weight)``, profits are ``w(v) - base`` and
    every edge costs ``-base``. Any spanning tree of a connected set ``S``
    then has profit ``w(S) - base``, so optima correspond with a constant
    offset. Returns the instance and ``base``.
    """
    if g.node_count() == 0:
        return PCSTInstance(profit={}, cost={}), 0.0
    base = min(0.0, min(g.weight.values()))
    profit = {v: g.weight[v] - base for v in g.sorted_nodes()}
    cost = {(u, v): -base for u, v in g.edges()}
    return PCSTInstance(profit=profit, cost=cost), base


def load_pcst_stp(text: str) -> PCSTInstance:
    """Parse a prize-collecting instance in the STP-style format.

    Edge lines carry a third token for the cost (``E u v cost``); the
    Terminals section holds node profits.
    """
    profit: dict[int, float] = {}
    cost: dict[tuple[int, int], float] = {}
    n_declared = None
    section = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            continue
        key = parts[0].lower()
        if section is None:
            if key == "section" and len(parts) > 1:
                section = parts[1].lower()
                if section not in ("graph", "terminals"):
                    section = "skip"
            continue
        if key == "end":
            section = None
            continue
        if section == "skip":
            continue
        if section == "graph":
            if key == "nodes":
                n_declared = int(parts[1])
                for v in range(1, n_declared + 1):
                    profit[v] = 0.0
            elif key == "edges":
                continue
            elif key == "e":
                if len(parts) < 4:
                    raise ParseError("edge line needs endpoints and a cost", lineno)
                u, v, c = int(parts[1]), int(parts[2]), float(parts[3])
                if n_declared is None or not (1 <= u <= n_declared and 1 <= v <= n_declared):
                    raise ParseError(f"edge ({u},{v}) out of range", lineno)
                if u == v:
                    raise ParseError(f"self-loop at node {u}", lineno)
                cost[(min(u, v), max(u, v))] = c
            else:
                raise ParseError(f"unexpected token {parts[0]!r} in Graph section", lineno)
        elif section == "terminals":
            if key == "terminals":
                continue
            if key == "t":
                v, p = int(parts[1]), float(parts[2])
                if v not in profit:
                    raise ParseError(f"node index {v} out of range", lineno)
                profit[v] = p
            else:
                raise ParseError(f"unexpected token {parts[0]!r} in Terminals section", lineno)
    if n_declared is None:
        raise ParseError("no Graph section with a Nodes line found")
    return PCSTInstance(profit=profit, cost=cost)
