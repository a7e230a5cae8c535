"""Node role classification from centrality order: core, margin, bridge, mediated.

A node is compared against its distinct neighbors: alpha is the fraction with
strictly lower weight, beta the fraction with strictly higher weight; ties
count in neither. Rules apply top-down (core, margin, bridge, mediated), then
the center override runs: a component's top-weight node becomes a bridge when
all its neighbors are core, and core otherwise. The override is skipped when
every node of the component is a center (ring-like symmetry), where no node
is distinguished enough to re-label.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .graph import Graph, NodeId, component_members
from .tc import TCResult

CORE = "core"
MARGIN = "margin"
BRIDGE = "bridge"
MEDIATED = "mediated"


@dataclass(frozen=True)
class RoleConfig:
    """Threshold on alpha above which a node is core; 0.5 is the usual choice."""

    core_threshold: float = 0.5
    tie_eps: float = 1e-9

    def __post_init__(self):
        if not 0.5 <= self.core_threshold <= 1.0:
            raise ValueError(f"core_threshold must be in [0.5, 1], got {self.core_threshold}")
        if self.tie_eps <= 0:
            raise ValueError("tie_eps must be positive")


class RoleEvidence(NamedTuple):
    alpha: float
    beta: float
    lower: int
    higher: int
    neighbor_count: int


@dataclass(frozen=True)
class RoleMap:
    roles: dict[NodeId, str]
    evidence: dict[NodeId, RoleEvidence]

    def of(self, role: str) -> tuple[NodeId, ...]:
        return tuple(sorted(v for v, r in self.roles.items() if r == role))


def _counts(g: Graph, weights: Mapping[NodeId, float], v: NodeId) -> RoleEvidence:
    neigh = g.adjacent(v)
    lower = sum(1 for u in neigh if weights[u] < weights[v])
    higher = sum(1 for u in neigh if weights[u] > weights[v])
    n = len(neigh)
    return RoleEvidence(lower / n, higher / n, lower, higher, n) if n else RoleEvidence(0.0, 0.0, 0, 0, 0)


def alpha_beta(g: Graph, tc: TCResult, v: NodeId) -> tuple[float, float]:
    """Fractions of v's neighbors with strictly lower / strictly higher weight."""
    g.require_node(v)
    ev = _counts(g, tc.final.node_w, v)
    if ev.neighbor_count == 0:
        raise ValueError(f"node {v!r} has no neighbors; alpha and beta are undefined")
    return ev.alpha, ev.beta


def classify_from_weights(g: Graph, weights: Mapping[NodeId, float], cfg: RoleConfig | None = None) -> RoleMap:
    """Role classification from an explicit node-weight mapping."""
    cfg = cfg or RoleConfig()
    roles: dict[NodeId, str] = {}
    evidence: dict[NodeId, RoleEvidence] = {}
    for v in g.nodes:
        ev = _counts(g, weights, v)
        evidence[v] = ev
        if ev.neighbor_count == 0:
            roles[v] = MARGIN
        elif ev.alpha > cfg.core_threshold:
            roles[v] = CORE
        elif ev.lower == 0:
            roles[v] = MARGIN
        elif ev.lower == ev.higher:
            roles[v] = BRIDGE
        else:
            roles[v] = MEDIATED

    # Center override, decided against the pre-override role map so the
    # outcome cannot depend on node order.
    for members in component_members(g):
        mx = max(weights[v] for v in members)
        centers = [v for v in members if weights[v] >= mx - cfg.tie_eps]
        if len(centers) == len(members):
            continue
        overrides = {}
        for c in centers:
            others = [u for u in g.adjacent(c) if u != c]
            all_core = bool(others) and all(roles[u] == CORE for u in others)
            overrides[c] = BRIDGE if all_core else CORE
        roles.update(overrides)
    return RoleMap(roles, evidence)


def classify_roles(g: Graph, tc: TCResult, cfg: RoleConfig | None = None) -> RoleMap:
    """Classify every node of `g` from its computed centrality result."""
    return classify_from_weights(g, tc.final.node_w, cfg)


def roles_csv(roles: RoleMap, weights: Mapping[NodeId, float]) -> str:
    lines = ["node,role,alpha,beta,tc"]
    for v in sorted(roles.roles):
        ev = roles.evidence[v]
        lines.append(f"{v},{roles.roles[v]},{ev.alpha!r},{ev.beta!r},{weights[v]!r}")
    return "\n".join(lines) + "\n"
