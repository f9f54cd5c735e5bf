import random

import pytest

from mwcs.graph import WeightedGraph


def build_graph(weights, edges=()):
    """Graph from ``{node: weight}`` plus an edge list."""
    g = WeightedGraph()
    for v, w in sorted(weights.items()):
        g.add_node(w, node_id=v)
    for u, v in edges:
        g.add_edge(u, v)
    return g


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
