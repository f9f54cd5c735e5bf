"""Divide and conquer over connected, biconnected and triconnected structure.

The driver peels leaf blocks off each connected component's block-cut
tree. Inside a block, two-cut separated pieces found by an SPQR-style
decomposition are replaced by small gadgets built from four rooted
sub-solves (or, for nonpositive pieces, by a cheapest connecting path),
and the remaining block collapses to a supernode plus, when the unrooted
and rooted block optima differ, one standalone candidate node.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field

from .errors import BudgetExhaustedError, MwcsError
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
from .preprocess import PreprocessConfig, preprocess
from .solver import primal_heuristic, solve_rooted, solve_unrooted


# -- block-cut structure -------------------------------------------------------


@dataclass
class BlockCutTree:
    """Blocks (bridges included as 2-node blocks) and cut vertices."""

    blocks: list[frozenset[int]]
    cut_vertices: frozenset[int]

    def degree(self, i: int) -> int:
        return len(self.blocks[i] & self.cut_vertices)

    def cut_vertices_of(self, i: int) -> frozenset[int]:
        return self.blocks[i] & self.cut_vertices


def block_cut_tree(g: WeightedGraph, component) -> BlockCutTree:
    """Biconnected decomposition of one connected node set (lowpoint DFS)."""
    comp = set(component)
    unknown = comp - g.weight.keys()
    if unknown:
        raise MwcsError(f"unknown nodes {sorted(unknown)}")
    if not is_connected_subset(g, comp):
        raise MwcsError("block-cut tree needs a connected node set")

    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    blocks: list[frozenset[int]] = []
    cuts: set[int] = set()
    edge_stack: list[tuple[int, int]] = []
    clock = 0

    root = min(comp) if comp else None
    if root is None:
        return BlockCutTree([], frozenset())
    disc[root] = low[root] = clock
    clock += 1
    root_children = 0
    stack = [(root, None, iter(sorted(g.adj[root] & comp)))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if w == parent:
                continue
            if w not in disc:
                edge_stack.append((v, w))
                disc[w] = low[w] = clock
                clock += 1
                stack.append((w, v, iter(sorted(g.adj[w] & comp))))
                advanced = True
                break
            if disc[w] < disc[v]:
                edge_stack.append((v, w))
                if disc[w] < low[v]:
                    low[v] = disc[w]
        if advanced:
            continue
        stack.pop()
        if not stack:
            continue
        u = stack[-1][0]
        if low[v] < low[u]:
            low[u] = low[v]
        if low[v] >= disc[u]:
            nodes = set()
            while edge_stack:
                a, b = edge_stack.pop()
                nodes.add(a)
                nodes.add(b)
                if (a, b) == (u, v):
                    break
            blocks.append(frozenset(nodes))
            if u == root:
                root_children += 1
            else:
                cuts.add(u)
    if root_children >= 2:
        cuts.add(root)
    blocks.sort(key=lambda b: (min(b), len(b), sorted(b)))
    return BlockCutTree(blocks, frozenset(cuts))


# -- SPQR-style decomposition ----------------------------------------------------


@dataclass
class SPQRDecomposition:
    """Two-cut separated pieces of a block.

    Every piece comes with the cut pair that separates its interior from
    the rest of the block; a block with no separation pair at all is a
    single piece with pair ``None``.
    """

    components: list[tuple[frozenset[int], frozenset[int] | None]]


def _adjacency_with_virtual(g: WeightedGraph, nodes, vedges):
    adj = {v: g.adj[v] & nodes for v in nodes}
    for ve in vedges:
        a, b = tuple(ve)
        adj[a] = adj[a] | {b}
        adj[b] = adj[b] | {a}
    return adj


def _components_from_adj(adj, nodes):
    remaining = set(nodes)
    comps = []
    while remaining:
        start = min(remaining)
        seen = {start}
        queue = deque((start,))
        while queue:
            u = queue.popleft()
            for nb in adj[u]:
                if nb in remaining and nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        comps.append(frozenset(seen))
        remaining -= seen
    comps.sort(key=min)
    return comps


def _articulation_points(adj, nodes) -> set[int]:
    nodes = set(nodes)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    aps: set[int] = set()
    clock = 0
    for root in sorted(nodes):
        if root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        root_children = 0
        stack = [(root, None, iter(sorted(adj[root] & nodes)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, v, iter(sorted(adj[w] & nodes))))
                    advanced = True
                    break
                if disc[w] < low[v]:
                    low[v] = disc[w]
            if advanced:
                continue
            stack.pop()
            if not stack:
                continue
            u = stack[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if u == root:
                root_children += 1
            elif low[v] >= disc[u]:
                aps.add(u)
        if root_children >= 2:
            aps.add(root)
    return aps


def _find_separation_pair(adj, nodes):
    """Smallest pair ``(a, b)`` whose removal disconnects the given graph."""
    node_list = sorted(nodes)
    if len(node_list) <= 3:
        return None
    for a in node_list:
        rest = set(node_list)
        rest.discard(a)
        arts = _articulation_points(adj, rest)
        if arts:
            return (a, min(arts))
    return None


def is_separation_pair(g: WeightedGraph, block, u: int, v: int) -> bool:
    """Brute-force check that removing ``{u, v}`` disconnects the block."""
    rest = set(block) - {u, v}
    if not rest:
        return False
    adj = {x: g.adj[x] & rest for x in rest}
    return len(_components_from_adj(adj, rest)) >= 2


def spqr_decomposition(g: WeightedGraph, block) -> SPQRDecomposition:
    """Recursively split a biconnected block at separation pairs.

    Each split hands every component that is free of the current boundary
    to a child (together with the pair and a virtual edge standing in for
    the rest of the block); the side carrying the boundary keeps
    splitting. Pieces with no separation pair of their own are emitted.
    """
    block = frozenset(block)
    if len(block) < 3:
        raise MwcsError("decomposition needs a block of at least 3 nodes")
    if not is_connected_subset(g, block):
        raise MwcsError("decomposition needs a connected block")
    base_adj = {v: g.adj[v] & block for v in block}
    if _articulation_points(base_adj, block):
        raise MwcsError("decomposition needs a biconnected block")

    pieces: list[tuple[frozenset[int], frozenset[int] | None]] = []

    def split(nodes: frozenset, vedges: frozenset, boundary: frozenset | None):
        adj = _adjacency_with_virtual(g, nodes, vedges)
        pair = _find_separation_pair(adj, nodes)
        if pair is None:
            pieces.append((nodes, boundary))
            return
        a, b = pair
        interior = set(nodes) - {a, b}
        parts = _components_from_adj(adj, interior)
        anchored = [p for p in parts if boundary and p & boundary]
        children = [p for p in parts if not (boundary and p & boundary)]
        parent_part = None
        if anchored:
            assert len(anchored) == 1, "boundary sides must stay connected"
            parent_part = anchored[0]
        pair_edge = frozenset((a, b))
        for p in children:
            child_nodes = p | {a, b}
            child_vedges = frozenset(ve for ve in vedges if ve <= child_nodes) | {pair_edge}
            split(frozenset(child_nodes), child_vedges, pair_edge)
        if parent_part is not None:
            parent_nodes = parent_part | {a, b} | boundary
            parent_vedges = frozenset(ve for ve in vedges if ve <= parent_nodes) | {pair_edge}
            split(frozenset(parent_nodes), parent_vedges, boundary)

    split(block, frozenset(), None)
    pieces.sort(key=lambda item: (min(item[0]), len(item[0]), sorted(item[0])))
    return SPQRDecomposition(pieces)


# -- solver adapter and reporting -------------------------------------------------


class CoreSolver:
    """Exact sub-solver used while building gadgets; raises when out of time."""

    def __init__(self, deadline: float | None = None):
        self.deadline = deadline

    def unrooted(self, sub: WeightedGraph) -> frozenset[int]:
        return solve_unrooted(sub, deadline=self.deadline, require_optimal=True).nodes

    def rooted(self, sub: WeightedGraph, roots) -> frozenset[int]:
        return solve_rooted(sub, roots, deadline=self.deadline, require_optimal=True).nodes


def _new_gadget_counters() -> dict[str, int]:
    return {
        "only_u": 0,
        "only_v": 0,
        "shared": 0,
        "bridge": 0,
        "anti_articulation": 0,
        "closure": 0,
        "skipped_disconnected": 0,
    }


@dataclass
class DecomposeReport:
    blocks: int = 0
    tricomponents_positive: int = 0
    tricomponents_negative: int = 0
    gadget_counters: dict[str, int] = field(default_factory=_new_gadget_counters)
    per_component: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "blocks": self.blocks,
            "positive_tricomponents": self.tricomponents_positive,
            "negative_tricomponents": self.tricomponents_negative,
            "gadget_counters": dict(self.gadget_counters),
            "components": list(self.per_component),
        }


# -- gadget construction -----------------------------------------------------------


def replace_negative_tricomponent(g: WeightedGraph, t: ReductionTrace, piece,
                                  u: int, v: int):
    """Reduce a nonpositive-interior piece to its cheapest connecting path.

    Interior nodes only serve to connect the cut pair, so a shortest
    ``u``-``v`` path under arc costs ``-w(entered node)`` (nonnegative on
    the interior) survives as one merged node; everything else goes.
    Returns ``(consumed, created)`` node-id sets.
    """
    piece = set(piece)
    interior = piece - {u, v}
    dist = {u: 0.0}
    parent: dict[int, int] = {}
    heap = [(0.0, u)]
    done = set()
    while heap:
        d, x = heapq.heappop(heap)
        if x in done:
            continue
        done.add(x)
        for nb in sorted(g.adj[x]):
            if nb not in interior or nb in done:
                continue
            nd = d + (-g.weight[nb])
            if nb not in dist or nd < dist[nb] or (nd == dist[nb] and x < parent[nb]):
                dist[nb] = nd
                parent[nb] = x
                heapq.heappush(heap, (nd, nb))

    last = None
    for x in sorted(g.adj[v]):
        if x == u:
            last = u
            break
        if x in dist and x in interior:
            if last is None or dist[x] < dist[last] or (dist[x] == dist[last] and x < last):
                last = x
    if last is None:
        raise MwcsError("cut pair is not connected inside the piece")

    path_interior = []
    x = last
    while x != u:
        path_interior.append(x)
        x = parent[x]
    path_interior.reverse()

    consumed = set()
    created = set()
    if path_interior:
        new = merge(g, t, path_interior)
        consumed.update(path_interior)
        created.add(new)
    leftovers = {x for x in interior if x in g.weight}
    remove(g, t, leftovers - created)
    consumed.update(leftovers - created)
    return consumed, created


def _gadget_plan(g, u, v, side_u, side_v, both):
    """Planned wiring of the two-cut gadget: node expansions and edges.

    Mirrors the construction in :func:`process_tricomponent`, including
    the absorption of one-sided role nodes into their cut-pair node and
    the closure edges.
    """
    only_u = side_u - side_v
    only_v = side_v - side_u
    shared = side_u & side_v
    bridge = both - (side_u | side_v)
    expansion = {"u": frozenset((u,)), "v": frozenset((v,))}
    edges = set()
    v1_separate = bool(only_u) and bool(shared)
    v2_separate = bool(only_v) and bool(shared)
    if only_u and not shared:
        expansion["u"] = frozenset({u} | only_u)
    if only_v and not shared:
        expansion["v"] = frozenset({v} | only_v)
    if v1_separate:
        expansion["v1"] = frozenset(only_u)
        edges.add(("u", "v1"))
    if v2_separate:
        expansion["v2"] = frozenset(only_v)
        edges.add(("v", "v2"))
    if shared:
        expansion["v3"] = frozenset(shared)
        edges.add(("u" if side_u <= side_v else "v1", "v3"))
        edges.add(("v" if side_v <= side_u else "v2", "v3"))
    if bridge:
        expansion["v4"] = frozenset(bridge)
        edges.add(("u", "v4"))
        edges.add(("v", "v4"))
    if not shared and not bridge and (only_u or only_v):
        edges.add(("u", "v"))
    if g.has_edge(u, v):
        edges.add(("u", "v"))
    return expansion, edges


def _certify_gadget(g, piece, expansion, edges) -> bool:
    """Check that every wired-connected gadget subset expands connectedly.

    Solutions of the reduced graph may use any connected subset of the
    gadget; each must map back to a connected set of the original piece,
    otherwise the rewiring could fabricate connectivity and overshoot the
    optimum. The gadget has at most six nodes, so all subsets are tried.
    """
    tags = sorted(expansion)
    adj = {tag: set() for tag in tags}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    sub = g.induced(piece)
    for mask in range(1, 1 << len(tags)):
        chosen = [tags[i] for i in range(len(tags)) if mask >> i & 1]
        seen = {chosen[0]}
        queue = [chosen[0]]
        chosen_set = set(chosen)
        while queue:
            x = queue.pop()
            for nb in adj[x]:
                if nb in chosen_set and nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        if len(seen) != len(chosen):
            continue
        expanded = frozenset().union(*(expansion[tag] for tag in chosen))
        if not is_connected_subset(sub, expanded):
            return False
    return True


def process_tricomponent(g: WeightedGraph, t: ReductionTrace, piece, u: int, v: int,
                         solver, counters=None):
    """Replace a two-cut separated piece by a four-role gadget.

    The roles come from the optima rooted at ``u`` alone (computed with
    ``v`` deleted), at ``v`` alone (with ``u`` deleted) and at both, plus
    the unrooted optimum of the piece which survives as a standalone
    candidate node. The replacement only happens when the planned wiring
    passes :func:`_certify_gadget`; skipping is always safe.

    Returns ``(changed, consumed, created_in_block)``.
    """
    if counters is None:
        counters = _new_gadget_counters()
    piece = set(piece)
    interior = piece - {u, v}
    sub_full = g.induced(piece)
    side_u = solver.rooted(g.induced(piece - {v}), {u}) - {u}
    side_v = solver.rooted(g.induced(piece - {u}), {v}) - {v}
    both = solver.rooted(sub_full, {u, v}) - {u, v}
    standalone = solver.unrooted(sub_full)

    only_u = side_u - side_v
    only_v = side_v - side_u
    shared = side_u & side_v
    bridge = both - (side_u | side_v)
    expansion, planned_edges = _gadget_plan(g, u, v, side_u, side_v, both)
    if not _certify_gadget(g, piece, expansion, planned_edges):
        counters["skipped_disconnected"] += 1
        return False, set(), set()

    consumed: set[int] = set()
    created: set[int] = set()
    isolate(g, t, standalone)

    cur_u, cur_v = u, v
    node_only_u = node_only_v = node_shared = node_bridge = None
    if only_u:
        node_only_u = merge(g, t, only_u)
        g.add_edge(cur_u, node_only_u)
        counters["only_u"] += 1
        consumed.update(only_u)
        created.add(node_only_u)
    if only_v:
        node_only_v = merge(g, t, only_v)
        g.add_edge(cur_v, node_only_v)
        counters["only_v"] += 1
        consumed.update(only_v)
        created.add(node_only_v)
    if not shared:
        if side_u:
            merged = merge(g, t, {cur_u, node_only_u})
            counters["anti_articulation"] += 1
            consumed.update({cur_u, node_only_u})
            created.discard(node_only_u)
            created.add(merged)
            cur_u, node_only_u = merged, None
        if side_v:
            merged = merge(g, t, {cur_v, node_only_v})
            counters["anti_articulation"] += 1
            consumed.update({cur_v, node_only_v})
            created.discard(node_only_v)
            created.add(merged)
            cur_v, node_only_v = merged, None
    else:
        node_shared = merge(g, t, shared)
        counters["shared"] += 1
        consumed.update(shared)
        created.add(node_shared)
        g.add_edge(cur_u if side_u <= side_v else node_only_u, node_shared)
        g.add_edge(cur_v if side_v <= side_u else node_only_v, node_shared)
    if bridge:
        node_bridge = merge(g, t, bridge)
        counters["bridge"] += 1
        consumed.update(bridge)
        created.add(node_bridge)
        g.add_edge(cur_u, node_bridge)
        g.add_edge(cur_v, node_bridge)
    if not shared and not bridge:
        if only_u:
            g.add_edge(cur_u, cur_v)
            counters["closure"] += 1
        if only_v:
            g.add_edge(cur_v, cur_u)
            counters["closure"] += 1

    leftovers = {x for x in interior if x in g.weight}
    remove(g, t, leftovers)
    consumed.update(leftovers)
    return True, consumed, created


# -- block processing ----------------------------------------------------------------


def _max_interior_weight(g, interior):
    return max((g.weight[x] for x in interior), default=-math.inf)


def process_bicomponent(g: WeightedGraph, t: ReductionTrace, block, c, solver,
                        report: DecomposeReport | None = None,
                        preprocess_between: bool = True):
    """Eliminate one leaf block of the block-cut tree.

    With no cut vertex the block collapses to its unrooted optimum. With a
    nonpositive interior it is preemptively deleted. Otherwise two-cut
    pieces avoiding ``c`` are gadget-replaced (nonpositive ones become
    paths), the block is re-preprocessed in between, and finally the block
    is replaced by its ``c``-rooted optimum merged into one node, plus the
    unrooted optimum as a standalone candidate when the two differ.
    """
    report = report or DecomposeReport()
    block = set(block)
    report.blocks += 1

    if c is None:
        best = solver.unrooted(g.induced(block))
        new_id = merge(g, t, best)
        remove(g, t, {x for x in block if x in g.weight and x != new_id})
        return

    interior = block - {c}
    if _max_interior_weight(g, interior) <= 0.0:
        remove(g, t, interior)
        return

    rounds = 0
    cap = 2 * len(block) + 8
    seen_pieces: set[frozenset[int]] = set()
    while len(block) >= 4 and rounds < cap:
        rounds += 1
        sub = g.induced(block)
        adj = {x: sub.adj[x] for x in block}
        if _articulation_points(adj, block):
            # in-block preprocessing split the block; let the outer loop
            # re-derive the block structure (progress already happened)
            return
        decomp = spqr_decomposition(g, block)
        eligible = [
            (nodes, pair) for nodes, pair in decomp.components
            if pair is not None and c not in nodes and len(nodes) >= 4
        ]
        eligible.sort(key=lambda item: (len(item[0]), sorted(item[0])))
        touched: set[int] = set()
        changed = False
        for nodes, pair in eligible:
            if nodes & touched or nodes in seen_pieces:
                continue
            seen_pieces.add(nodes)
            u, v = sorted(pair)
            piece_interior = set(nodes) - {u, v}
            if _max_interior_weight(g, piece_interior) <= 0.0:
                consumed, created = replace_negative_tricomponent(g, t, nodes, u, v)
                report.tricomponents_negative += 1
            else:
                did, consumed, created = process_tricomponent(
                    g, t, nodes, u, v, solver, report.gadget_counters)
                if did:
                    report.tricomponents_positive += 1
                else:
                    touched |= set(nodes)
                    continue
            changed = True
            touched |= consumed | created | set(nodes)
            block.difference_update(consumed)
            block.update(created)
        preprocessed = 0
        if preprocess_between:
            scope = block - {c}
            reports = preprocess(g, t, scope=scope)
            preprocessed = sum(r.applications for r in reports)
            block = scope | {c}
        if not changed and not preprocessed:
            break

    sub = g.induced(block)
    best_unrooted = solver.unrooted(sub)
    best_rooted = solver.rooted(sub, {c})
    if best_unrooted != best_rooted:
        isolate(g, t, best_unrooted)
    new_id = merge(g, t, best_rooted)
    remove(g, t, {x for x in block if x in g.weight and x != new_id})


# -- full driver ------------------------------------------------------------------


def _descendants(g: WeightedGraph, t: ReductionTrace, originals: frozenset) -> set[int]:
    return {s for s in g.weight if t.origin[s] & originals}


def best_removed_candidate(t: ReductionTrace, original: WeightedGraph,
                           tol: float = 1e-9):
    """Best feasible fallback solution the reduction may have hidden.

    Rules and gadget replacements can merge or delete the best single
    node of an all-nonpositive graph, where that single node is the
    optimum under best-nonempty semantics. The strongest single original
    node is therefore always a candidate, alongside the provenance of
    every deleted node (skipping entries whose origin is not connected
    in the original graph).
    """
    best = None
    if original.node_count():
        single = max(original.sorted_nodes(),
                     key=lambda v: (original.weight[v], -v))
        best = (original.weight[single], frozenset((single,)))
    for weight, origin in sorted(t.removed_candidates,
                                 key=lambda item: (-item[0], sorted(item[1]))):
        if best is not None and weight <= best[0]:
            break
        if not origin <= original.weight.keys():
            continue
        if not is_connected_subset(original, origin):
            continue
        if abs(induced_weight(original, origin) - weight) > tol:
            continue
        return weight, origin
    return best


def solve_mwcs(g: WeightedGraph, t: ReductionTrace | None = None, *,
               allow_empty: bool = False, deadline: float | None = None,
               preprocess_config: PreprocessConfig | None = None,
               report: DecomposeReport | None = None) -> tuple[Solution, DecomposeReport]:
    """Full divide-and-conquer solve; mutates ``g`` and returns original ids.

    Per connected component: preprocess, then peel degree-0/1 blocks until
    only isolated nodes remain, then keep the component's best node.
    Finally the best surviving node (checked against candidates deleted
    along the way) expands through the trace into the answer, which is
    verified against a pristine copy of the input. On deadline exhaustion
    a heuristic solution with trivial bounds is returned instead.
    """
    t = t or ReductionTrace.identity(g)
    report = report or DecomposeReport()
    original = g.copy()
    solver = CoreSolver(deadline=deadline)

    try:
        for comp in g.components():
            base_counts = (report.blocks, report.tricomponents_positive,
                           report.tricomponents_negative)
            originals = expand_solution(t, comp)
            scope = set(comp)
            preprocess(g, t, config=preprocess_config, scope=scope)
            while True:
                live = _descendants(g, t, originals)
                pending = None
                remaining = set(live)
                while remaining:
                    part = g.component_of(min(remaining), within=remaining)
                    remaining -= part
                    if len(part) < 2:
                        continue
                    bct = block_cut_tree(g, part)
                    for i, blk in enumerate(bct.blocks):
                        deg = bct.degree(i)
                        if deg <= 1:
                            key = (deg, min(blk))
                            if pending is None or key < pending[0]:
                                cut = min(bct.cut_vertices_of(i)) if deg == 1 else None
                                pending = (key, blk, cut)
                if pending is None:
                    break
                _, blk, cut = pending
                process_bicomponent(g, t, blk, cut, solver, report)
            live = _descendants(g, t, originals)
            if live:
                best = max(sorted(live), key=lambda x: (g.weight[x], -x))
                winner = merge(g, t, {best})
                live = _descendants(g, t, originals)
                remove(g, t, live - {winner})
            report.per_component.append({
                "blocks": report.blocks - base_counts[0],
                "positive_tricomponents": report.tricomponents_positive - base_counts[1],
                "negative_tricomponents": report.tricomponents_negative - base_counts[2],
            })
    except BudgetExhaustedError:
        heur = primal_heuristic(original)
        upper = sum(w for w in original.weight.values() if w > 0.0)
        lower, nodes = heur.objective, heur.nodes
        if allow_empty and lower < 0.0:
            lower, nodes = 0.0, frozenset()
        return Solution.with_gap(nodes, lower, max(upper, lower)), report

    best_value = None
    best_origin: frozenset[int] = frozenset()
    live = g.sorted_nodes()
    if live:
        winner = max(live, key=lambda x: (g.weight[x], -x))
        best_value = g.weight[winner]
        best_origin = t.origin[winner]
    fallback = best_removed_candidate(t, original)
    if fallback is not None and (best_value is None or fallback[0] > best_value):
        best_value, best_origin = fallback

    if best_value is None:
        return Solution.optimal(frozenset(), 0.0), report
    if allow_empty and best_value < 0.0:
        return Solution.optimal(frozenset(), 0.0), report

    if not is_connected_subset(original, best_origin):
        raise MwcsError("internal error: witness does not expand to a connected set")
    recomputed = induced_weight(original, best_origin)
    if abs(recomputed - best_value) > 1e-9:
        raise MwcsError("internal error: witness weight drifted during reduction")
    return Solution.optimal(best_origin, recomputed), report
