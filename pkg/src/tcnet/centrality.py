"""Classical centrality measures used as comparison points.

Shortest-path measures work on hop-count geodesics of the simple undirected
skeleton: parallel edges are collapsed, self-loops dropped, arc directions
ignored. Betweenness accumulates exact rationals internally and converts to
float only at the end, so results are independent of traversal order and can
be compared to a brute-force oracle with plain equality.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .graph import Graph, NodeId


@dataclass(frozen=True)
class CentralityReport:
    measure: str
    scores: dict[NodeId, float]
    edge_scores: dict[int, float] | None = None
    converged: bool = True
    flags: dict[NodeId, str] = field(default_factory=dict)


def _simple_adj(g: Graph) -> dict[NodeId, tuple[NodeId, ...]]:
    """Loop-free simple adjacency in sorted order, directions ignored."""
    return {v: tuple(w for w in g.adjacent(v) if w != v) for v in g.nodes}


def degree_centrality(g: Graph, mode: str = "total") -> CentralityReport:
    """Degree over n-1; `mode` picks in/out arcs on directed graphs."""
    if g.n < 2:
        raise ValueError("degree centrality needs at least 2 nodes")
    if mode == "total":
        raw = {v: g.degree(v) for v in g.nodes}
        label = "degree"
    elif mode in ("in", "out"):
        if not g.directed:
            raise ValueError(f"{mode}-degree requires a directed graph")
        pick = g.in_edges if mode == "in" else g.out_edges
        raw = {v: len(pick(v)) for v in g.nodes}
        label = f"{mode}_degree"
    else:
        raise ValueError(f"unknown degree mode {mode!r}")
    denom = g.n - 1
    return CentralityReport(label, {v: d / denom for v, d in raw.items()})


def _brandes(g: Graph) -> tuple[dict[NodeId, Fraction], dict[tuple[NodeId, NodeId], Fraction]]:
    """Per-node and per-endpoint-pair dependency sums over ordered (s, t) pairs."""
    adj = _simple_adj(g)
    node_acc: dict[NodeId, Fraction] = {v: Fraction(0) for v in g.nodes}
    pair_acc: dict[tuple[NodeId, NodeId], Fraction] = {}
    for s in g.nodes:
        stack: list[NodeId] = []
        preds: dict[NodeId, list[NodeId]] = {v: [] for v in g.nodes}
        sigma: dict[NodeId, int] = {v: 0 for v in g.nodes}
        sigma[s] = 1
        dist: dict[NodeId, int] = {s: 0}
        frontier = [s]
        while frontier:
            nxt: list[NodeId] = []
            for v in frontier:
                stack.append(v)
                for w in adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
                    if dist[w] == dist[v] + 1:
                        sigma[w] += sigma[v]
                        preds[w].append(v)
            frontier = nxt
        delta: dict[NodeId, Fraction] = {v: Fraction(0) for v in g.nodes}
        while stack:
            w = stack.pop()
            for v in preds[w]:
                c = Fraction(sigma[v], sigma[w]) * (1 + delta[w])
                delta[v] += c
                key = (v, w) if v <= w else (w, v)
                pair_acc[key] = pair_acc.get(key, Fraction(0)) + c
            if w != s:
                node_acc[w] += delta[w]
    return node_acc, pair_acc


def betweenness_centrality(g: Graph) -> CentralityReport:
    """Shortest-path betweenness over ordered pairs, normalized by (n-1)(n-2).

    Edge scores are the raw ordered-pair sums (no normalization); parallel
    edges share their pair's value, self-loops score 0.
    """
    if g.n < 3:
        raise ValueError("betweenness needs at least 3 nodes")
    node_acc, pair_acc = _brandes(g)
    denom = (g.n - 1) * (g.n - 2)
    scores = {v: float(node_acc[v] / denom) for v in g.nodes}
    edge_scores: dict[int, float] = {}
    for e in g.edges:
        if e.is_loop():
            edge_scores[e.id] = 0.0
        else:
            key = (e.source, e.target) if e.source <= e.target else (e.target, e.source)
            edge_scores[e.id] = float(pair_acc.get(key, Fraction(0)))
    return CentralityReport("betweenness", scores, edge_scores)


def closeness_centrality(g: Graph) -> CentralityReport:
    """(component size - 1) / sum of distances, within each component."""
    adj = _simple_adj(g)
    scores: dict[NodeId, float] = {}
    flags: dict[NodeId, str] = {}
    for v in g.nodes:
        dist = {v: 0}
        frontier = [v]
        total = 0
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        total += dist[w]
                        nxt.append(w)
            frontier = nxt
        if len(dist) < 2:
            scores[v] = 0.0
            flags[v] = "isolated"
        else:
            scores[v] = (len(dist) - 1) / total
    return CentralityReport("closeness", scores, flags=flags)


def pagerank(g: Graph, damping: float = 0.85, tol: float = 1e-10, max_iter: int = 100) -> CentralityReport:
    """Power iteration with uniform teleport; dangling mass spread uniformly.

    Undirected edges count as one arc each way; a directed graph keeps its
    arc directions. Parallel arcs weight the walk proportionally.
    """
    if g.n == 0:
        raise ValueError("pagerank needs a nonempty graph")
    if not 0.0 < damping < 1.0:
        raise ValueError(f"damping must be in (0, 1), got {damping}")
    in_arcs: dict[NodeId, list[NodeId]] = {v: [] for v in g.nodes}
    out_deg: dict[NodeId, int] = {v: 0 for v in g.nodes}
    for e in g.edges:
        in_arcs[e.target].append(e.source)
        out_deg[e.source] += 1
        if not g.directed or e.is_loop():
            in_arcs[e.source].append(e.target)
            out_deg[e.target] += 1
    n = g.n
    score = {v: 1.0 / n for v in g.nodes}
    converged = False
    for _ in range(max_iter):
        dangling = math.fsum(score[v] for v in g.nodes if out_deg[v] == 0)
        base = (1.0 - damping) / n + damping * dangling / n
        new = {
            v: base + damping * math.fsum(score[u] / out_deg[u] for u in in_arcs[v])
            for v in g.nodes
        }
        residual = math.fsum(abs(new[v] - score[v]) for v in g.nodes)
        score = new
        if residual < tol:
            converged = True
            break
    return CentralityReport("pagerank", score, converged=converged)


def hits(g: Graph, tol: float = 1e-10, max_iter: int = 100) -> tuple[dict[NodeId, float], dict[NodeId, float]]:
    """Authority and hub scores by alternating updates, L2-normalized each round."""
    if not g.directed:
        raise ValueError("hits requires a directed graph")
    if g.n == 0:
        raise ValueError("hits needs a nonempty graph")
    uniform = 1.0 / math.sqrt(g.n)
    if g.m == 0:
        warnings.warn("graph has no arcs; hits returns uniform scores")
        return {v: uniform for v in g.nodes}, {v: uniform for v in g.nodes}
    auth = {v: uniform for v in g.nodes}
    hub = {v: uniform for v in g.nodes}
    for _ in range(max_iter):
        raw_a = {
            v: math.fsum(hub[e.source] for e in g.in_edges(v))
            for v in g.nodes
        }
        norm_a = math.sqrt(math.fsum(x * x for x in raw_a.values()))
        new_a = {v: x / norm_a for v, x in raw_a.items()}
        raw_h = {
            v: math.fsum(new_a[e.target] for e in g.out_edges(v))
            for v in g.nodes
        }
        norm_h = math.sqrt(math.fsum(x * x for x in raw_h.values()))
        new_h = {v: x / norm_h for v, x in raw_h.items()}
        residual = math.fsum(abs(new_a[v] - auth[v]) + abs(new_h[v] - hub[v]) for v in g.nodes)
        auth, hub = new_a, new_h
        if residual < tol:
            break
    return auth, hub


def _inverse_distance_terms(adj: Mapping[NodeId, tuple[NodeId, ...]], nodes: tuple[NodeId, ...]) -> list[float]:
    terms: list[float] = []
    for s in nodes:
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        terms.append(1.0 / dist[w])
                        nxt.append(w)
            frontier = nxt
    return terms


def network_efficiency(g: Graph) -> float:
    """Mean inverse geodesic distance over ordered pairs; unreachable adds 0."""
    if g.n < 2:
        raise ValueError("efficiency needs at least 2 nodes")
    terms = _inverse_distance_terms(_simple_adj(g), g.nodes)
    return math.fsum(terms) / (g.n * (g.n - 1))


def information_centrality(g: Graph) -> CentralityReport:
    """Relative efficiency loss when a node's incident edges are removed."""
    if g.n < 2:
        raise ValueError("information centrality needs at least 2 nodes")
    adj = _simple_adj(g)
    denom = g.n * (g.n - 1)
    base = math.fsum(_inverse_distance_terms(adj, g.nodes)) / denom
    if base == 0.0:
        raise ValueError("graph efficiency is 0; information centrality undefined")
    scores: dict[NodeId, float] = {}
    for v in g.nodes:
        cut = {
            u: tuple(w for w in neigh if w != v) if u != v else ()
            for u, neigh in adj.items()
        }
        eff = math.fsum(_inverse_distance_terms(cut, g.nodes)) / denom
        scores[v] = (base - eff) / base
    return CentralityReport("information", scores)


def centrality_csv(reports: list[CentralityReport]) -> str:
    lines = ["node,measure,value"]
    for report in reports:
        for v in sorted(report.scores):
            lines.append(f"{v},{report.measure},{report.scores[v]!r}")
    return "\n".join(lines) + "\n"
