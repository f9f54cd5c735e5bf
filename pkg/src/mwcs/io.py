"""Instance and solution I/O.

Two instance formats are supported: a token-based STP-style text format
and a JSON format. Node names from the input are mapped onto internal
integer ids; writers emit deterministic, byte-stable output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ParseError
from .graph import Solution, WeightedGraph


@dataclass
class Instance:
    """Loaded problem: graph plus external node names and optional roots."""

    graph: WeightedGraph
    names: dict[int, object] = field(default_factory=dict)
    roots: set[int] = field(default_factory=set)

    def name_of(self, node: int):
        return self.names.get(node, node)

    def node_named(self, name):
        for node, n in self.names.items():
            if n == name or str(n) == str(name):
                return node
        raise ParseError(f"unknown node name {name!r}")


# -- STP-style format --------------------------------------------------------


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if parts:
            yield lineno, parts


def load_stp(text: str) -> Instance:
    """Parse the STP-style text format.

    Sections ``Graph`` (``Nodes n`` / ``Edges m`` / ``E u v`` lines),
    ``Terminals`` (``T v weight`` lines) and optional ``Roots`` (``R v``
    lines); keywords are case-insensitive, node indices run 1..n.
    Unknown weights default to 0, duplicate edges are dropped, self-loops
    are rejected.
    """
    g = WeightedGraph()
    n_declared = None
    section = None
    roots: set[int] = set()
    seen_graph = False

    def node_in_range(tok: str, lineno: int) -> int:
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"bad node index {tok!r}", lineno) from None
        if n_declared is None or not 1 <= v <= n_declared:
            raise ParseError(f"node index {v} out of range 1..{n_declared}", lineno)
        return v

    for lineno, parts in _tokens(text):
        key = parts[0].lower()
        if section is None:
            if key == "section":
                if len(parts) < 2:
                    raise ParseError("SECTION without a name", lineno)
                section = parts[1].lower()
                if section not in ("graph", "terminals", "roots"):
                    section = "skip"
            elif key == "eof":
                break
            continue
        if key == "end":
            section = None
            continue
        if section == "skip":
            continue
        if section == "graph":
            if key == "nodes":
                try:
                    n_declared = int(parts[1])
                except (IndexError, ValueError):
                    raise ParseError("bad Nodes line", lineno) from None
                if n_declared < 0:
                    raise ParseError("negative node count", lineno)
                for v in range(1, n_declared + 1):
                    g.add_node(0.0, node_id=v)
                seen_graph = True
            elif key == "edges":
                continue
            elif key == "e":
                if len(parts) < 3:
                    raise ParseError("edge line needs two endpoints", lineno)
                u = node_in_range(parts[1], lineno)
                v = node_in_range(parts[2], lineno)
                if u == v:
                    raise ParseError(f"self-loop at node {u}", lineno)
                g.add_edge(u, v)
            else:
                raise ParseError(f"unexpected token {parts[0]!r} in Graph section", lineno)
        elif section == "terminals":
            if key == "terminals":
                continue
            if key == "t":
                if len(parts) < 3:
                    raise ParseError("terminal line needs node and weight", lineno)
                v = node_in_range(parts[1], lineno)
                try:
                    w = float(parts[2])
                except ValueError:
                    raise ParseError(f"bad weight {parts[2]!r}", lineno) from None
                g.weight[v] = w
            else:
                raise ParseError(f"unexpected token {parts[0]!r} in Terminals section", lineno)
        elif section == "roots":
            if key == "roots":
                continue
            if key == "r":
                if len(parts) < 2:
                    raise ParseError("root line needs a node", lineno)
                roots.add(node_in_range(parts[1], lineno))
            else:
                raise ParseError(f"unexpected token {parts[0]!r} in Roots section", lineno)

    if not seen_graph:
        raise ParseError("no Graph section with a Nodes line found")
    names = {v: v for v in g.nodes()}
    return Instance(graph=g, names=names, roots=roots)


def dump_stp(inst: Instance) -> str:
    """Render an instance in the STP-style format with 1-based indices."""
    g = inst.graph
    order = g.sorted_nodes()
    pos = {v: i + 1 for i, v in enumerate(order)}
    lines = ["SECTION Graph", f"Nodes {len(order)}", f"Edges {g.edge_count()}"]
    for u, v in g.edges():
        lines.append(f"E {pos[u]} {pos[v]}")
    lines.append("END")
    lines.append("")
    lines.append("SECTION Terminals")
    weighted = [v for v in order if g.weight[v] != 0.0]
    lines.append(f"Terminals {len(weighted)}")
    for v in weighted:
        lines.append(f"T {pos[v]} {g.weight[v]!r}")
    lines.append("END")
    if inst.roots:
        lines.append("")
        lines.append("SECTION Roots")
        for r in sorted(inst.roots):
            lines.append(f"R {pos[r]}")
        lines.append("END")
    lines.append("")
    lines.append("EOF")
    return "\n".join(lines) + "\n"


# -- JSON format --------------------------------------------------------------


def load_json(text: str) -> Instance:
    """Parse ``{"nodes":[{"id","weight"}],"edges":[[u,v]],"roots":[...]}``."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}", exc.lineno) from None
    if not isinstance(payload, dict) or "nodes" not in payload:
        raise ParseError("JSON instance needs a 'nodes' array")
    g = WeightedGraph()
    names: dict[int, object] = {}
    by_name: dict = {}
    for entry in payload["nodes"]:
        if "id" not in entry:
            raise ParseError("node entry without an id")
        name = entry["id"]
        if name in by_name:
            raise ParseError(f"duplicate node id {name!r}")
        node = g.add_node(float(entry.get("weight", 0.0)))
        names[node] = name
        by_name[name] = node
    for pair in payload.get("edges", ()):
        if len(pair) != 2:
            raise ParseError(f"bad edge entry {pair!r}")
        u, v = pair
        if u not in by_name or v not in by_name:
            raise ParseError(f"edge {pair!r} references an unknown node")
        if by_name[u] == by_name[v]:
            raise ParseError(f"self-loop at node {u!r}")
        g.add_edge(by_name[u], by_name[v])
    roots = set()
    for name in payload.get("roots", ()):
        if name not in by_name:
            raise ParseError(f"unknown root {name!r}")
        roots.add(by_name[name])
    return Instance(graph=g, names=names, roots=roots)


def dump_json(inst: Instance) -> str:
    g = inst.graph
    order = g.sorted_nodes()
    payload = {
        "nodes": [{"id": inst.name_of(v), "weight": g.weight[v]} for v in order],
        "edges": [[inst.name_of(u), inst.name_of(v)] for u, v in g.edges()],
        "roots": sorted((inst.name_of(r) for r in inst.roots), key=str),
    }
    return json.dumps(payload, sort_keys=True) + "\n"


def load_instance(text: str, fmt: str) -> Instance:
    """Dispatch on ``fmt`` in {"stp", "json"}."""
    if fmt == "stp":
        return load_stp(text)
    if fmt == "json":
        return load_json(text)
    raise ParseError(f"unknown format {fmt!r}")


def dump_instance(inst: Instance, fmt: str) -> str:
    if fmt == "stp":
        return dump_stp(inst)
    if fmt == "json":
        return dump_json(inst)
    raise ParseError(f"unknown format {fmt!r}")


# -- solution output -----------------------------------------------------------


def _name_sort_key(x):
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return (0, x, "")
    return (1, 0, str(x))


def solution_payload(sol: Solution, names: dict[int, object] | None = None) -> dict:
    names = names or {}
    pretty = [names.get(v, v) for v in sol.nodes]
    return {
        "objective": sol.objective,
        "nodes": sorted(pretty, key=_name_sort_key),
        "status": sol.status,
        "lower": sol.lower,
        "upper": sol.upper,
    }


def dump_solution(sol: Solution, names: dict[int, object] | None = None) -> str:
    return json.dumps(solution_payload(sol, names), sort_keys=True) + "\n"
