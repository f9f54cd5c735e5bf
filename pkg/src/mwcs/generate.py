"""Random instance generators for tests, demos and the bench harness.

All generators take a ``random.Random`` so corpora are reproducible.
"""

from __future__ import annotations

import random

from .graph import WeightedGraph
from .transforms import PCSTInstance


def gnp_instance(rng: random.Random, n: int, p: float,
                 weight_low: float = -10.0, weight_high: float = 10.0) -> WeightedGraph:
    """Erdos-Renyi graph with uniform node weights."""
    g = WeightedGraph()
    for v in range(1, n + 1):
        g.add_node(rng.uniform(weight_low, weight_high), node_id=v)
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < p:
                g.add_edge(u, v)
    return g


def random_tree(rng: random.Random, n: int,
                weight_low: float = -10.0, weight_high: float = 10.0) -> WeightedGraph:
    """Uniform-attachment random tree."""
    g = WeightedGraph()
    for v in range(1, n + 1):
        g.add_node(rng.uniform(weight_low, weight_high), node_id=v)
    for v in range(2, n + 1):
        g.add_edge(v, rng.randrange(1, v))
    return g


def _add_block(g: WeightedGraph, rng: random.Random, anchor: int | None,
               weight_low: float, weight_high: float) -> list[int]:
    """Glue one random biconnected block onto ``anchor`` (or start fresh)."""
    kind = rng.choice(("cycle", "clique", "theta"))
    size = {"cycle": rng.randint(3, 5), "clique": rng.randint(3, 4),
            "theta": rng.randint(4, 5)}[kind]
    fresh = size - (1 if anchor is not None else 0)
    nodes = [anchor] if anchor is not None else []
    for _ in range(fresh):
        nodes.append(g.add_node(rng.uniform(weight_low, weight_high)))
    if kind == "clique":
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                g.add_edge(nodes[i], nodes[j])
    else:
        for i in range(len(nodes)):
            g.add_edge(nodes[i], nodes[(i + 1) % len(nodes)])
        if kind == "theta" and len(nodes) >= 4:
            g.add_edge(nodes[0], nodes[2])
    return nodes


def glued_blocks_instance(rng: random.Random, target_nodes: int = 14,
                          weight_low: float = -10.0, weight_high: float = 10.0) -> WeightedGraph:
    """Multi-block graph built by gluing small blocks at cut vertices."""
    g = WeightedGraph()
    placed = _add_block(g, rng, None, weight_low, weight_high)
    while g.node_count() < target_nodes - 2:
        anchor = rng.choice(sorted(g.nodes()))
        placed = _add_block(g, rng, anchor, weight_low, weight_high)
    del placed
    return g


def sparse_instance(rng: random.Random, n: int, avg_degree: float,
                    positive_fraction: float,
                    positive_high: float = 10.0, negative_low: float = -10.0) -> WeightedGraph:
    """Sparse random graph with a controlled share of positive nodes."""
    g = WeightedGraph()
    for v in range(1, n + 1):
        if rng.random() < positive_fraction:
            w = rng.uniform(0.1, positive_high)
        else:
            w = rng.uniform(negative_low, -0.1)
        g.add_node(w, node_id=v)
    target_edges = int(n * avg_degree / 2)
    # a random spanning backbone keeps most nodes in one component
    order = list(range(1, n + 1))
    rng.shuffle(order)
    added = 0
    for i in range(1, n):
        g.add_edge(order[i], order[rng.randrange(0, i)])
        added += 1
    while added < target_edges:
        u, v = rng.randint(1, n), rng.randint(1, n)
        if u != v and not g.has_edge(u, v):
            g.add_edge(u, v)
            added += 1
    return g


def pocket_instance(rng: random.Random, n: int, target_edges: int,
                    positive_fraction: float,
                    positive_high: float = 10.0, negative_low: float = -10.0) -> WeightedGraph:
    """Sparse graph assembled as a tree of small biconnected pockets.

    Pockets (cycles, cliques, wheels) are glued at cut vertices until
    ``n`` nodes exist, then chords are added inside pockets until
    ``target_edges``; blocks therefore stay pocket-sized, which is the
    structure the decomposition layer exploits.
    """
    g = WeightedGraph()

    def weight():
        if rng.random() < positive_fraction:
            return rng.uniform(0.1, positive_high)
        return rng.uniform(negative_low, -0.1)

    pockets: list[list[int]] = []
    first = [g.add_node(weight()) for _ in range(3)]
    g.add_edge(first[0], first[1])
    g.add_edge(first[1], first[2])
    g.add_edge(first[0], first[2])
    pockets.append(first)
    while g.node_count() < n:
        kind = rng.choice(("cycle", "cycle", "clique", "wheel"))
        size = {"cycle": rng.randint(3, 8), "clique": rng.randint(3, 4),
                "wheel": rng.randint(5, 7)}[kind]
        size = min(size, n - g.node_count() + 1)
        if size < 3:
            size = 3
        anchor = rng.choice(sorted(g.nodes()))
        nodes = [anchor] + [g.add_node(weight()) for _ in range(size - 1)]
        if kind == "clique":
            for i in range(len(nodes)):
                for j in range(i + 1, len(nodes)):
                    g.add_edge(nodes[i], nodes[j])
        else:
            for i in range(len(nodes)):
                g.add_edge(nodes[i], nodes[(i + 1) % len(nodes)])
            if kind == "wheel":
                hub = nodes[0]
                for x in nodes[2:-1]:
                    g.add_edge(hub, x)
        pockets.append(nodes)
    attempts = 0
    while g.edge_count() < target_edges and attempts < 20 * target_edges:
        attempts += 1
        pocket = pockets[rng.randrange(len(pockets))]
        if len(pocket) < 4:
            continue
        u, v = rng.sample(pocket, 2)
        if u != v and not g.has_edge(u, v):
            g.add_edge(u, v)
    return g


def random_pcst(rng: random.Random, max_total: int = 16) -> PCSTInstance:
    """Small random prize-collecting instance.

    Sized so that the split transformation stays within ``max_total``
    nodes (original nodes plus one per edge).
    """
    n = rng.randint(2, max(2, max_total // 2))
    profit = {v: (rng.uniform(0.0, 8.0) if rng.random() < 0.7 else 0.0)
              for v in range(1, n + 1)}
    cost = {}
    budget = max_total - n
    # spanning path plus a few chords, one split node per edge
    order = list(range(1, n + 1))
    rng.shuffle(order)
    for i in range(1, n):
        if budget <= 0:
            break
        u, v = order[i - 1], order[i]
        cost[(min(u, v), max(u, v))] = rng.uniform(0.0, 4.0)
        budget -= 1
    attempts = 0
    while budget > 0 and attempts < 4 * n:
        attempts += 1
        u, v = rng.randint(1, n), rng.randint(1, n)
        if u != v and (min(u, v), max(u, v)) not in cost:
            cost[(min(u, v), max(u, v))] = rng.uniform(0.0, 4.0)
            budget -= 1
    return PCSTInstance(profit=profit, cost=cost)
