"""Backbone extraction over core nodes, density bounds, and evolution series."""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, NodeId, component_members, induced_subgraph
from .roles import CORE, RoleConfig, RoleMap, classify_roles
from .tc import TCConfig, TCResult, compute_tc, topological_centers


@dataclass(frozen=True)
class BackboneReport:
    backbone: Graph
    core_count: int
    component_sizes: tuple[int, ...]
    isolated_cores: tuple[NodeId, ...]


def extract_backbone(g: Graph, roles: RoleMap) -> BackboneReport:
    """Induced subgraph on core nodes, with its fragmentation summarized."""
    cores = roles.of(CORE)
    if not cores:
        warnings.warn("no core nodes; backbone is empty")
    backbone = induced_subgraph(g, cores)
    sizes = tuple(len(ms) for ms in component_members(backbone))
    isolated = tuple(v for v in backbone.nodes if not backbone.incident_edges(v))
    return BackboneReport(backbone, len(cores), sizes, isolated)


def cooperation_density(module: Graph) -> float:
    """Edges per node of one module (connected component)."""
    if module.n == 0:
        raise ValueError("density of an empty module is undefined")
    return module.m / module.n


def density_bounds(n: int) -> tuple[float, float]:
    """Density range [(n-1)/n, n-1] for a connected module with at most one
    arc per ordered node pair."""
    if n < 1:
        raise ValueError(f"module size must be >= 1, got {n}")
    return ((n - 1) / n, float(n - 1))


@dataclass(frozen=True)
class SnapshotRecord:
    label: str
    node_count: int
    edge_count: int
    centers: tuple[NodeId, ...]
    density: float
    core_count: int
    backbone_edge_count: int
    backbone_component_sizes: tuple[int, ...]
    new_nodes: tuple[NodeId, ...]
    role_transitions: dict[NodeId, tuple[str, str]]


@dataclass(frozen=True)
class EvolutionSeries:
    records: tuple[SnapshotRecord, ...]


def _edge_counter(g: Graph) -> Counter:
    if g.directed:
        return Counter((e.source, e.target) for e in g.edges)
    return Counter((e.source, e.target) if e.source <= e.target else (e.target, e.source) for e in g.edges)


def _largest_component(g: Graph) -> tuple[NodeId, ...]:
    return component_members(g)[0]


def evolution_series(
    snapshots: Sequence[tuple[str, Graph]],
    role_cfg: RoleConfig | None = None,
    tc_cfg: TCConfig | None = None,
) -> EvolutionSeries:
    """Analyze cumulative snapshots: centers of the largest component, density,
    backbone shape, plus per-step node arrivals and role changes."""
    if not snapshots:
        raise ValueError("no snapshots given")
    prev_nodes: set[NodeId] = set()
    prev_edges: Counter = Counter()
    prev_roles: dict[NodeId, str] = {}
    records = []
    for label, g in snapshots:
        nodes = set(g.nodes)
        edges = _edge_counter(g)
        if not prev_nodes <= nodes:
            missing = sorted(prev_nodes - nodes)
            raise ValueError(f"snapshot {label!r} is not cumulative: drops nodes {missing}")
        if (prev_edges - edges).total() > 0:
            gone = sorted((prev_edges - edges).keys())
            raise ValueError(f"snapshot {label!r} is not cumulative: drops edges {gone}")
        tc = compute_tc(g, tc_cfg)
        roles = classify_roles(g, tc, role_cfg)
        report = extract_backbone(g, roles)
        largest = _largest_component(g)
        centers = tuple(v for v in topological_centers(tc) if v in set(largest))
        transitions = {
            v: (prev_roles[v], roles.roles[v])
            for v in sorted(prev_roles)
            if roles.roles[v] != prev_roles[v]
        }
        records.append(
            SnapshotRecord(
                label=str(label),
                node_count=g.n,
                edge_count=g.m,
                centers=centers,
                density=cooperation_density(g) if g.n else 0.0,
                core_count=report.core_count,
                backbone_edge_count=report.backbone.m,
                backbone_component_sizes=report.component_sizes,
                new_nodes=tuple(sorted(nodes - prev_nodes)),
                role_transitions=transitions,
            )
        )
        prev_nodes, prev_edges, prev_roles = nodes, edges, dict(roles.roles)
    return EvolutionSeries(tuple(records))


def evolution_csv(series: EvolutionSeries) -> str:
    """Year, researcher count, cooperation count, topological center columns."""
    lines = ["Year,#Researcher,#Cooperation,TopologicalCenter"]
    for rec in series.records:
        centers = ";".join(str(c) for c in rec.centers)
        lines.append(f"{rec.label},{rec.node_count},{rec.edge_count},{centers}")
    return "\n".join(lines) + "\n"
