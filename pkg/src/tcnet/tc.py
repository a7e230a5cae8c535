"""Topological centrality: the node/edge mutual-reinforcement fixed point.

Each iteration recomputes every node weight from its incident edges and
neighbors, recomputes every edge weight as the sum of its endpoint values,
then rescales both so the maximum is exactly 1. Iteration stops when the
squared change of both weight vectors falls below the configured thresholds.

All sums use math.fsum, which is correctly rounded and therefore independent
of summation order: nodes in the same automorphism orbit end up with
bit-identical weights.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping

from .graph import Graph, NodeId, component_members


@dataclass(frozen=True)
class TCConfig:
    """Iteration bounds, convergence thresholds, and optional relation weights."""

    max_iterations: int = 100
    eps_nodes: float = 0.001
    eps_edges: float = 0.001
    relation_weights: Mapping[str, float] | None = None

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.eps_nodes <= 0 or self.eps_edges <= 0:
            raise ValueError("convergence thresholds must be positive")
        if self.relation_weights is not None:
            for label, w in self.relation_weights.items():
                if w <= 0:
                    raise ValueError(f"relation weight for {label!r} must be positive, got {w}")


@dataclass(frozen=True)
class TCState:
    """Normalized weights after `iteration` steps (iteration 0 = initial)."""

    node_w: dict[NodeId, float]
    edge_w: dict[int, float]
    iteration: int


@dataclass(frozen=True)
class TCResult:
    final: TCState
    converged: bool
    node_residual_history: tuple[float, ...] = field(default=())
    edge_residual_history: tuple[float, ...] = field(default=())


def initial_state(g: Graph) -> TCState:
    """Starting weights, taken from the graph (default 1 everywhere)."""
    for v, w in g.node_weights.items():
        if w <= 0:
            raise ValueError(f"node {v!r} has non-positive weight {w}; iteration needs positive weights")
    for eid, w in g.edge_weights.items():
        if w <= 0:
            raise ValueError(f"edge id {eid} has non-positive weight {w}; iteration needs positive weights")
    return TCState(dict(g.node_weights), dict(g.edge_weights), 0)


def _relation_factor(g: Graph, cfg: TCConfig, edge_id: int) -> float:
    if cfg.relation_weights is None:
        return 1.0
    label = g.relations.get(edge_id)
    if label is None:
        return 1.0
    return cfg.relation_weights.get(label, 1.0)


def _step(g: Graph, comps: list[tuple[NodeId, ...]], state: TCState, cfg: TCConfig) -> TCState:
    node_temp: dict[NodeId, float] = {}
    for v in g.nodes:
        terms = []
        for e in g.incident_edges(v):
            other = v if e.is_loop() else e.other(v)
            terms.append(_relation_factor(g, cfg, e.id) * state.edge_w[e.id] * state.node_w[other])
        node_temp[v] = state.node_w[v] + math.fsum(terms)

    edge_temp = {e.id: node_temp[e.source] + node_temp[e.target] for e in g.edges}

    # Normalize inside each connected component so no component's scale
    # depends on another's growth.
    comp_of: dict[NodeId, int] = {}
    for idx, members in enumerate(comps):
        for v in members:
            comp_of[v] = idx
    node_w: dict[NodeId, float] = {}
    for members in comps:
        mx = max(node_temp[v] for v in members)
        for v in members:
            node_w[v] = node_temp[v] / mx
    edge_groups: dict[int, list[int]] = {}
    for e in g.edges:
        edge_groups.setdefault(comp_of[e.source], []).append(e.id)
    edge_w: dict[int, float] = {}
    for ids in edge_groups.values():
        mx = max(edge_temp[eid] for eid in ids)
        for eid in ids:
            edge_w[eid] = edge_temp[eid] / mx
    return TCState(node_w, edge_w, state.iteration + 1)


def tc_step(g: Graph, state: TCState, cfg: TCConfig | None = None) -> TCState:
    """One full iteration: node update, edge update, then normalization.

    All reads come from `state`; an isolated node is its own normalization
    group and keeps weight 1.
    """
    return _step(g, component_members(g), state, cfg or TCConfig())


def compute_tc(g: Graph, cfg: TCConfig | None = None) -> TCResult:
    """Iterate until both residuals drop below threshold or the cap is hit."""
    if g.n == 0:
        raise ValueError("cannot compute centrality of an empty graph")
    cfg = cfg or TCConfig()
    if cfg.relation_weights is not None:
        unmatched = sorted(set(g.relations.values()) - set(cfg.relation_weights))
        if unmatched:
            warnings.warn(f"no weight configured for relation labels {unmatched}; using 1.0")
    comps = component_members(g)
    state = initial_state(g)
    node_hist: list[float] = []
    edge_hist: list[float] = []
    converged = False
    while state.iteration < cfg.max_iterations:
        nxt = _step(g, comps, state, cfg)
        node_res = math.fsum((nxt.node_w[v] - state.node_w[v]) ** 2 for v in g.nodes)
        edge_res = math.fsum((nxt.edge_w[e.id] - state.edge_w[e.id]) ** 2 for e in g.edges)
        node_hist.append(node_res)
        edge_hist.append(edge_res)
        state = nxt
        if node_res < cfg.eps_nodes and edge_res < cfg.eps_edges:
            converged = True
            break
    return TCResult(state, converged, tuple(node_hist), tuple(edge_hist))


def centers_from_weights(weights: Mapping[NodeId, float], tie_eps: float = 1e-9) -> tuple[NodeId, ...]:
    """Nodes whose weight is within `tie_eps` of the maximum value 1."""
    return tuple(sorted(v for v, w in weights.items() if w >= 1.0 - tie_eps))


def topological_centers(result: TCResult, tie_eps: float = 1e-9) -> tuple[NodeId, ...]:
    """Highest-weight nodes; one per component unless symmetry creates ties."""
    return centers_from_weights(result.final.node_w, tie_eps)


def log_tc(result: TCResult) -> dict[NodeId, float]:
    """Natural log of the node weights; centers map to 0, order is preserved."""
    return {v: math.log(w) for v, w in result.final.node_w.items()}


def log_tc_histogram(result: TCResult, bins: int = 20) -> list[tuple[float, float, int]]:
    """Equal-width bins over [min log value, 0]; returns (low, high, count) rows."""
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    values = sorted(log_tc(result).values())
    lo, hi = values[0], 0.0
    if lo == hi:
        return [(lo, hi, len(values))]
    width = (hi - lo) / bins
    counts = [0] * bins
    for v in values:
        counts[min(int((v - lo) / width), bins - 1)] += 1
    return [(lo + i * width, lo + (i + 1) * width, counts[i]) for i in range(bins)]


# -- CSV renderings used by the command-line tool --------------------------


def node_csv(result: TCResult) -> str:
    logs = log_tc(result)
    lines = ["node,tc,log_tc"]
    for v in sorted(result.final.node_w):
        lines.append(f"{v},{result.final.node_w[v]!r},{logs[v]!r}")
    return "\n".join(lines) + "\n"


def edge_csv(g: Graph, result: TCResult) -> str:
    lines = ["edge,source,target,tc"]
    for e in g.edges:
        lines.append(f"{e.id},{e.source},{e.target},{result.final.edge_w[e.id]!r}")
    return "\n".join(lines) + "\n"


def residual_csv(result: TCResult) -> str:
    lines = ["iteration,node_residual,edge_residual"]
    for i, (nr, er) in enumerate(zip(result.node_residual_history, result.edge_residual_history), start=1):
        lines.append(f"{i},{nr!r},{er!r}")
    return "\n".join(lines) + "\n"
