import random

import pytest

from mwcs.errors import MwcsError
from mwcs.graph import (
    ReductionTrace,
    WeightedGraph,
    expand_solution,
    graph_problems,
    induced_weight,
    is_connected_subset,
    isolate,
    merge,
    remove,
    trace_problems,
)
from mwcs.oracle import brute_force

from conftest import build_graph


def fresh(weights, edges=()):
    g = build_graph(weights, edges)
    return g, ReductionTrace.identity(g)


class TestGraphBasics:
    def test_self_loop_rejected(self):
        g = build_graph({1: 0.0})
        with pytest.raises(MwcsError):
            g.add_edge(1, 1)

    def test_parallel_edges_collapse(self):
        g = build_graph({1: 0.0, 2: 0.0}, [(1, 2), (1, 2)])
        assert g.edge_count() == 1

    def test_edge_to_unknown_node(self):
        g = build_graph({1: 0.0})
        with pytest.raises(MwcsError):
            g.add_edge(1, 99)

    def test_components_ordering(self):
        g = build_graph({i: 0.0 for i in range(1, 7)}, [(2, 3), (5, 6)])
        comps = g.components()
        assert comps == [{1}, {2, 3}, {4}, {5, 6}]


class TestConnectivityQueries:
    def test_nonadjacent_pair_not_connected(self):
        g = build_graph({1: 1.0, 2: 1.0, 3: 1.0}, [(1, 2), (2, 3)])
        assert not is_connected_subset(g, {1, 3})

    def test_singleton_connected(self):
        g = build_graph({1: 1.0})
        assert is_connected_subset(g, {1})

    def test_empty_set_connected_by_convention(self):
        g = build_graph({1: 1.0})
        assert is_connected_subset(g, set())

    def test_induced_weight_sums(self):
        g = build_graph({1: 1.5, 2: -2.0, 3: 3.0})
        assert induced_weight(g, {1, 3}) == pytest.approx(4.5)
        assert induced_weight(g, set()) == 0.0


class TestMerge:
    def test_two_node_path_merges_to_isolated_supernode(self):
        g, t = fresh({1: 2.0, 2: 3.0}, [(1, 2)])
        s = merge(g, t, {1, 2})
        assert g.weight[s] == pytest.approx(5.0)
        assert g.degree(s) == 0

    def test_neighbors_are_union_minus_merged(self):
        # triangle a,b,c plus pendant d on c; merging {a, c} keeps {b, d}
        g, t = fresh({1: 1.0, 2: -2.0, 3: 4.0, 4: -1.0},
                     [(1, 2), (1, 3), (2, 3), (3, 4)])
        s = merge(g, t, {1, 3})
        assert g.weight[s] == pytest.approx(5.0)
        assert g.adj[s] == {2, 4}

    def test_singleton_merge_relabels(self):
        g, t = fresh({1: 2.5, 2: 0.0}, [(1, 2)])
        s = merge(g, t, {1})
        assert 1 not in g.weight
        assert g.weight[s] == pytest.approx(2.5)
        assert g.adj[s] == {2}

    def test_disconnected_merge_rejected(self):
        g, t = fresh({1: 1.0, 2: 1.0, 3: 1.0}, [(1, 2), (2, 3)])
        with pytest.raises(MwcsError):
            merge(g, t, {1, 3})

    def test_empty_merge_rejected(self):
        g, t = fresh({1: 1.0})
        with pytest.raises(MwcsError):
            merge(g, t, set())


class TestIsolate:
    def test_adjacent_pair_copied(self):
        g, t = fresh({1: 2.0, 2: 3.0}, [(1, 2)])
        s = isolate(g, t, {1, 2})
        assert g.weight[s] == pytest.approx(5.0)
        assert g.degree(s) == 0
        assert 1 in g.weight and 2 in g.weight

    def test_singleton_copy(self):
        g, t = fresh({1: -4.0})
        s = isolate(g, t, {1})
        assert g.weight[s] == pytest.approx(-4.0)

    def test_counts_change_by_one_node_zero_edges(self):
        g, t = fresh({1: 1.0, 2: 2.0, 3: -1.0}, [(1, 2), (2, 3)])
        n0, m0 = g.node_count(), g.edge_count()
        isolate(g, t, {1, 2})
        assert g.node_count() == n0 + 1
        assert g.edge_count() == m0


class TestRemove:
    def test_remove_isolated_node(self):
        g, t = fresh({1: -3.0, 2: 1.0, 3: 1.0}, [(2, 3)])
        remove(g, t, {1})
        assert g.node_count() == 2
        assert g.edge_count() == 1

    def test_remove_degree_three_node_drops_edges(self):
        g, t = fresh({i: 0.0 for i in range(1, 5)}, [(1, 2), (1, 3), (1, 4)])
        remove(g, t, {1})
        assert g.edge_count() == 0

    def test_remove_nothing_is_noop(self):
        g, t = fresh({1: 1.0})
        remove(g, t, set())
        assert g.node_count() == 1
        assert t.log == []

    def test_remove_unknown_node_rejected(self):
        g, t = fresh({1: 1.0})
        with pytest.raises(MwcsError):
            remove(g, t, {42})


class TestExpansion:
    def test_merge_expands_back(self):
        g, t = fresh({1: 2.0, 2: 3.0}, [(1, 2)])
        s = merge(g, t, {1, 2})
        assert expand_solution(t, {s}) == frozenset({1, 2})

    def test_empty_expansion(self):
        g, t = fresh({1: 1.0})
        assert expand_solution(t, set()) == frozenset()

    def test_expansion_weight_matches_original(self, rng):
        # random reductions, then expansion of the reduced optimum is a
        # connected original set of identical weight
        for _ in range(30):
            n = 12
            g = WeightedGraph()
            for v in range(1, n + 1):
                g.add_node(rng.uniform(-10, 10), node_id=v)
            for u in range(1, n + 1):
                for v in range(u + 1, n + 1):
                    if rng.random() < 0.3:
                        g.add_edge(u, v)
            original = g.copy()
            t = ReductionTrace.identity(g)
            for _ in range(6):
                live = sorted(g.weight)
                if not live:
                    break
                op = rng.choice(("merge", "isolate", "remove"))
                v = rng.choice(live)
                cluster = {v} | set(sorted(g.adj[v])[:2])
                if not is_connected_subset(g, cluster):
                    cluster = {v}
                if op == "merge":
                    merge(g, t, cluster)
                elif op == "isolate":
                    isolate(g, t, cluster)
                else:
                    remove(g, t, {v})
            assert not graph_problems(g)
            assert not trace_problems(g, t, original)
            if not g.node_count():
                continue
            best = brute_force(g)
            if not best.nodes:
                continue
            expanded = expand_solution(t, best.nodes)
            assert induced_weight(original, expanded) == pytest.approx(
                best.objective, abs=1e-9)


class TestTraceInvariants:
    def test_weight_consistency_after_mixed_ops(self):
        g, t = fresh({1: 1.0, 2: 2.0, 3: -3.0, 4: 0.5},
                     [(1, 2), (2, 3), (3, 4)])
        original = g.copy()
        merge(g, t, {1, 2})
        isolate(g, t, {3, 4})
        remove(g, t, {4})
        assert not graph_problems(g)
        assert not trace_problems(g, t, original)

    def test_origin_disjointness_without_isolates(self):
        g, t = fresh({1: 1.0, 2: 2.0, 3: 3.0}, [(1, 2), (2, 3)])
        original = g.copy()
        merge(g, t, {1, 2})
        assert not trace_problems(g, t, original)
        owners = [t.origin[v] for v in g.weight]
        assert len(frozenset().union(*owners)) == sum(len(o) for o in owners)
