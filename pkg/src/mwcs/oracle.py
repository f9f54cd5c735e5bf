"""Brute-force exact solvers used as ground truth by the test suite.

Two independent enumeration strategies are shipped and cross-checked
against each other: bitmask subset enumeration and recursive growth of
connected sets. A small brute force for prize-collecting instances
backs the transform tests.
"""

from __future__ import annotations

from .errors import InfeasibleError, MwcsError, SizeLimitError
from .graph import Solution, WeightedGraph

MAX_ORACLE_NODES = 25


def _sorted_selection(names, mask_bits):
    return tuple(names[i] for i in range(len(names)) if mask_bits >> i & 1)


def brute_force(g: WeightedGraph, roots=None, allow_empty: bool = False) -> Solution:
    """Exhaustive optimum by bitmask enumeration of all node subsets.

    Returns the best nonempty connected subset containing ``roots`` (the
    empty set competes with weight 0 when ``allow_empty``). Ties go to the
    lexicographically smallest selected set. Refuses graphs beyond
    ``MAX_ORACLE_NODES`` nodes.
    """
    n = g.node_count()
    if n > MAX_ORACLE_NODES:
        raise SizeLimitError(f"{n} nodes exceeds the oracle limit of {MAX_ORACLE_NODES}")
    names = g.sorted_nodes()
    index = {v: i for i, v in enumerate(names)}
    weights = [g.weight[v] for v in names]
    adj_mask = [0] * n
    for v, nbs in g.adj.items():
        m = 0
        for nb in nbs:
            m |= 1 << index[nb]
        adj_mask[index[v]] = m

    root_mask = 0
    if roots:
        unknown = set(roots) - set(index)
        if unknown:
            raise MwcsError(f"unknown root nodes {sorted(unknown)}")
        for r in roots:
            root_mask |= 1 << index[r]

    best_weight = None
    best_sel = None
    if allow_empty and not root_mask:
        best_weight, best_sel = 0.0, ()

    for mask in range(1, 1 << n):
        if mask & root_mask != root_mask:
            continue
        # flood fill over the selected bits
        seed = mask & -mask
        reach = seed
        frontier = seed
        while frontier:
            grow = 0
            m = frontier
            while m:
                b = m & -m
                m ^= b
                grow |= adj_mask[b.bit_length() - 1]
            frontier = grow & mask & ~reach
            reach |= frontier
        if reach != mask:
            continue
        w = 0.0
        m = mask
        while m:
            b = m & -m
            m ^= b
            w += weights[b.bit_length() - 1]
        if best_weight is None or w > best_weight:
            best_weight, best_sel = w, _sorted_selection(names, mask)
        elif w == best_weight:
            sel = _sorted_selection(names, mask)
            if sel < best_sel:
                best_sel = sel

    if best_weight is None:
        if root_mask:
            raise InfeasibleError("no connected subset contains all roots")
        return Solution.optimal(frozenset(), 0.0)
    return Solution.optimal(frozenset(best_sel), best_weight)


def brute_force_grow(g: WeightedGraph, roots=None, allow_empty: bool = False) -> Solution:
    """Exhaustive optimum by recursive growth of connected sets.

    Independent of :func:`brute_force`; used to double-check it.
    """
    n = g.node_count()
    if n > MAX_ORACLE_NODES:
        raise SizeLimitError(f"{n} nodes exceeds the oracle limit of {MAX_ORACLE_NODES}")
    root_set = frozenset(roots or ())
    unknown = root_set - g.weight.keys()
    if unknown:
        raise MwcsError(f"unknown root nodes {sorted(unknown)}")

    best: list = [None, None]  # weight, sorted tuple

    def consider(nodes: set):
        if root_set and not root_set <= nodes:
            return
        w = sum(g.weight[v] for v in sorted(nodes))
        sel = tuple(sorted(nodes))
        if best[0] is None or w > best[0] or (w == best[0] and sel < best[1]):
            best[0], best[1] = w, sel

    def grow(current: set, candidates: list, banned: set):
        consider(current)
        for i, v in enumerate(candidates):
            nxt = current | {v}
            new_banned = banned | set(candidates[: i + 1])
            new_cands = candidates[i + 1:] + sorted(
                nb for nb in g.adj[v]
                if nb not in nxt and nb not in new_banned and nb not in candidates
            )
            grow(nxt, new_cands, new_banned)

    for seed in g.sorted_nodes():
        # sets whose smallest member is `seed`
        banned = {v for v in g.weight if v < seed}
        grow({seed}, sorted(nb for nb in g.adj[seed] if nb not in banned), banned | {seed})

    if allow_empty and not root_set:
        if best[0] is None or best[0] < 0.0:
            best[0], best[1] = 0.0, ()
    if best[0] is None:
        if root_set:
            raise InfeasibleError("no connected subset contains all roots")
        return Solution.optimal(frozenset(), 0.0)
    return Solution.optimal(frozenset(best[1]), best[0])


def brute_force_pcst(instance) -> tuple[frozenset[int], float]:
    """Optimal prize-collecting tree by enumerating connected node sets.

    For each connected node set the best tree is a minimum spanning tree of
    the induced subgraph (edge costs are nonnegative). Returns the node set
    and its profit; the empty outcome is a single best node (profits are
    nonnegative, so singletons dominate the empty tree).
    """
    g = instance.skeleton()
    if g.node_count() > 20:
        raise SizeLimitError("prize-collecting brute force limited to 20 nodes")

    best_profit = None
    best_nodes = None

    def mst_cost(nodes) -> float:
        nodes = sorted(nodes)
        parent = {v: v for v in nodes}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        total = 0.0
        edges = sorted(
            (instance.cost[(u, v)], u, v)
            for (u, v) in instance.cost
            if u in parent and v in parent
        )
        for c, u, v in edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                total += c
        return total

    names = g.sorted_nodes()
    index = {v: i for i, v in enumerate(names)}
    adj_mask = [0] * len(names)
    for v, nbs in g.adj.items():
        m = 0
        for nb in nbs:
            m |= 1 << index[nb]
        adj_mask[index[v]] = m
    for mask in range(1, 1 << len(names)):
        seed = mask & -mask
        reach = seed
        frontier = seed
        while frontier:
            grow = 0
            m = frontier
            while m:
                b = m & -m
                m ^= b
                grow |= adj_mask[b.bit_length() - 1]
            frontier = grow & mask & ~reach
            reach |= frontier
        if reach != mask:
            continue
        nodes = {names[i] for i in range(len(names)) if mask >> i & 1}
        profit = sum(instance.profit[v] for v in sorted(nodes)) - mst_cost(nodes)
        sel = tuple(sorted(nodes))
        if best_profit is None or profit > best_profit or (
            profit == best_profit and sel < tuple(sorted(best_nodes))
        ):
            best_profit, best_nodes = profit, nodes
    return frozenset(best_nodes), best_profit
