"""Weighted multigraph substrate shared by every analysis module.

Graphs are immutable after construction: nodes are kept in a stable sorted
order, edges keep their construction ids, and all query results are returned
in that order so downstream output is byte-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

NodeId = Hashable

UNREACHABLE = math.inf


class GraphError(ValueError):
    """Malformed construction input or a reference to an unknown node."""


@dataclass(frozen=True)
class Edge:
    """A single edge; `id` is unique within its graph."""

    id: int
    source: NodeId
    target: NodeId

    def other(self, v: NodeId) -> NodeId:
        return self.target if v == self.source else self.source

    def is_loop(self) -> bool:
        return self.source == self.target


class Graph:
    """Undirected or directed multigraph with node and edge weights.

    Self-loops and parallel edges are allowed. In undirected mode an edge
    (u, v) is identical to (v, u). Instances must not be mutated after
    construction; derive new graphs instead.
    """

    __slots__ = (
        "nodes",
        "edges",
        "directed",
        "node_weights",
        "edge_weights",
        "relations",
        "_incident",
        "_out",
        "_in",
    )

    def __init__(
        self,
        nodes: Iterable[NodeId],
        edges: Sequence[Edge],
        directed: bool = False,
        node_weights: Mapping[NodeId, float] | None = None,
        edge_weights: Mapping[int, float] | None = None,
        relations: Mapping[int, str] | None = None,
    ):
        self.nodes: tuple[NodeId, ...] = tuple(sorted(set(nodes)))
        node_set = set(self.nodes)
        seen_ids: set[int] = set()
        for e in edges:
            if e.source not in node_set or e.target not in node_set:
                raise GraphError(f"edge {e.id} ({e.source!r}, {e.target!r}) has an endpoint outside the node set")
            if e.id in seen_ids:
                raise GraphError(f"duplicate edge id {e.id}")
            seen_ids.add(e.id)
        self.edges: tuple[Edge, ...] = tuple(edges)
        self.directed = directed
        self.node_weights: dict[NodeId, float] = {v: 1.0 for v in self.nodes}
        if node_weights:
            for v, w in node_weights.items():
                if v not in node_set:
                    raise GraphError(f"weight given for unknown node {v!r}")
                if w < 0:
                    raise GraphError(f"negative weight for node {v!r}")
                self.node_weights[v] = float(w)
        self.edge_weights: dict[int, float] = {e.id: 1.0 for e in self.edges}
        if edge_weights:
            for eid, w in edge_weights.items():
                if eid not in self.edge_weights:
                    raise GraphError(f"weight given for unknown edge id {eid}")
                if w < 0:
                    raise GraphError(f"negative weight for edge id {eid}")
                self.edge_weights[eid] = float(w)
        self.relations: dict[int, str] = {}
        if relations:
            for eid, label in relations.items():
                if eid not in self.edge_weights:
                    raise GraphError(f"relation given for unknown edge id {eid}")
                self.relations[eid] = str(label)

        # Incidence index: every edge touching v, self-loops listed once.
        incident: dict[NodeId, list[Edge]] = {v: [] for v in self.nodes}
        out: dict[NodeId, list[Edge]] = {v: [] for v in self.nodes}
        inc: dict[NodeId, list[Edge]] = {v: [] for v in self.nodes}
        for e in self.edges:
            incident[e.source].append(e)
            if not e.is_loop():
                incident[e.target].append(e)
            out[e.source].append(e)
            inc[e.target].append(e)
        self._incident = {v: tuple(es) for v, es in incident.items()}
        self._out = {v: tuple(es) for v, es in out.items()}
        self._in = {v: tuple(es) for v, es in inc.items()}

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_node(self, v: NodeId) -> bool:
        return v in self._incident

    def require_node(self, v: NodeId) -> None:
        if v not in self._incident:
            raise GraphError(f"unknown node {v!r}")

    def incident_edges(self, v: NodeId) -> tuple[Edge, ...]:
        """Edges touching `v` in edge-id order; a self-loop appears once."""
        self.require_node(v)
        return self._incident[v]

    def out_edges(self, v: NodeId) -> tuple[Edge, ...]:
        self.require_node(v)
        return self._out[v]

    def in_edges(self, v: NodeId) -> tuple[Edge, ...]:
        self.require_node(v)
        return self._in[v]

    def degree(self, v: NodeId) -> int:
        """Endpoint count at `v`; a self-loop contributes 2."""
        self.require_node(v)
        return sum(2 if e.is_loop() else 1 for e in self._incident[v])

    def neighbors(self, v: NodeId, direction: str = "any") -> tuple[NodeId, ...]:
        """Neighbor multiset of `v` in sorted order.

        Parallel edges repeat their endpoint; a self-loop contributes `v`
        once. On directed graphs `direction` may restrict to "in" or "out";
        the default unions both.
        """
        self.require_node(v)
        if direction == "any":
            edges = self._incident[v]
        elif direction == "out":
            edges = self._out[v]
        elif direction == "in":
            edges = self._in[v]
        else:
            raise GraphError(f"unknown direction filter {direction!r}")
        return tuple(sorted(e.other(v) for e in edges))

    def adjacent(self, v: NodeId) -> tuple[NodeId, ...]:
        """Distinct neighbors of `v` in sorted order (directions ignored)."""
        self.require_node(v)
        return tuple(sorted({e.other(v) for e in self._incident[v]}))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        kind = "digraph" if self.directed else "graph"
        return f"<{kind} n={self.n} m={self.m}>"


def build_graph(
    nodes: Iterable[NodeId],
    edges: Iterable[tuple[NodeId, NodeId]],
    directed: bool = False,
    node_weights: Mapping[NodeId, float] | None = None,
    edge_weights: Mapping[int, float] | None = None,
    relations: Mapping[int, str] | None = None,
) -> Graph:
    """Build a graph from endpoint pairs; edge ids follow input order."""
    edge_objs = [Edge(i, u, v) for i, (u, v) in enumerate(edges)]
    return Graph(nodes, edge_objs, directed, node_weights, edge_weights, relations)


def component_members(g: Graph) -> list[tuple[NodeId, ...]]:
    """Node sets of the connected components, directions ignored.

    Ordered by descending size, then by smallest member.
    """
    unvisited = set(g.nodes)
    comps: list[tuple[NodeId, ...]] = []
    for start in g.nodes:
        if start not in unvisited:
            continue
        unvisited.discard(start)
        stack = [start]
        members = [start]
        while stack:
            v = stack.pop()
            for w in g.adjacent(v):
                if w in unvisited:
                    unvisited.discard(w)
                    stack.append(w)
                    members.append(w)
        comps.append(tuple(sorted(members)))
    comps.sort(key=lambda ms: (-len(ms), ms[0] if ms else None))
    return comps


def connected_components(g: Graph) -> tuple[Graph, ...]:
    """Split into maximal connected induced subgraphs (the graph's modules)."""
    return tuple(induced_subgraph(g, members) for members in component_members(g))


def bfs_distances(g: Graph, source: NodeId) -> dict[NodeId, float]:
    """Hop-count geodesic distance from `source` to every node.

    Unreachable nodes map to `UNREACHABLE` (+inf). Edge weights and
    directions are ignored.
    """
    g.require_node(source)
    dist: dict[NodeId, float] = {v: UNREACHABLE for v in g.nodes}
    dist[source] = 0
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for w in g.adjacent(v):
                if dist[w] == UNREACHABLE:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def induced_subgraph(g: Graph, keep: Iterable[NodeId]) -> Graph:
    """Subgraph on `keep` with every edge whose endpoints both remain.

    Edge ids and all weights carry over from the parent graph.
    """
    keep_set = set(keep)
    for v in keep_set:
        g.require_node(v)
    edges = [e for e in g.edges if e.source in keep_set and e.target in keep_set]
    return Graph(
        keep_set,
        edges,
        g.directed,
        {v: g.node_weights[v] for v in keep_set},
        {e.id: g.edge_weights[e.id] for e in edges},
        {e.id: g.relations[e.id] for e in edges if e.id in g.relations},
    )


# -- edge-list text format ------------------------------------------------
#
# One edge per line: source target [weight [relation]], whitespace-separated
# (tabs canonical); `#` starts a comment; a line with a single token declares
# an isolated node so graphs round-trip losslessly.


def parse_edge_list(text: str, directed: bool = False) -> Graph:
    nodes: list[str] = []
    pairs: list[tuple[str, str]] = []
    weights: dict[int, float] = {}
    relations: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            nodes.append(parts[0])
            continue
        if len(parts) > 4:
            raise GraphError(f"line {lineno}: expected at most 4 fields, got {len(parts)}")
        u, v = parts[0], parts[1]
        eid = len(pairs)
        pairs.append((u, v))
        nodes.extend((u, v))
        if len(parts) >= 3:
            try:
                weights[eid] = float(parts[2])
            except ValueError as exc:
                raise GraphError(f"line {lineno}: bad weight {parts[2]!r}") from exc
        if len(parts) == 4:
            relations[eid] = parts[3]
    return build_graph(nodes, pairs, directed, edge_weights=weights, relations=relations)


def format_edge_list(g: Graph) -> str:
    """Canonical edge-list text for `g`; inverse of `parse_edge_list`."""
    lines = []
    covered: set[NodeId] = set()
    for e in g.edges:
        covered.add(e.source)
        covered.add(e.target)
        w = g.edge_weights[e.id]
        rel = g.relations.get(e.id)
        if rel is not None:
            lines.append(f"{e.source}\t{e.target}\t{w!r}\t{rel}")
        elif w != 1.0:
            lines.append(f"{e.source}\t{e.target}\t{w!r}")
        else:
            lines.append(f"{e.source}\t{e.target}")
    for v in g.nodes:
        if v not in covered:
            lines.append(str(v))
    return "\n".join(lines) + ("\n" if lines else "")


def format_dot(g: Graph, name: str = "g") -> str:
    """Graphviz DOT rendering with weights and relation labels as attributes."""
    kind, arrow = ("digraph", "->") if g.directed else ("graph", "--")
    lines = [f"{kind} {name} {{"]
    covered: set[NodeId] = set()
    for e in g.edges:
        covered.add(e.source)
        covered.add(e.target)
        attrs = []
        if g.edge_weights[e.id] != 1.0:
            attrs.append(f"weight={g.edge_weights[e.id]!r}")
        rel = g.relations.get(e.id)
        if rel is not None:
            attrs.append(f'label="{rel}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{e.source}" {arrow} "{e.target}"{suffix};')
    for v in g.nodes:
        if v not in covered:
            lines.append(f'  "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
