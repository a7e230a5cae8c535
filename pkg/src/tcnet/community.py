"""Community discovery driven by core nodes and weight-descending expansion.

Global discovery seeds one community per core node, attaches every other node
to all of its nearest cores (ties kept, so bridge nodes overlap), then merges
communities down to the requested count. Local discovery expands outward from
a core admitting only unseen neighbors of strictly lower weight, in FIFO
order with neighbors visited in id order, which makes expansion traces fully
deterministic.

Expansion modes: "trace" admits any unseen strictly-lower-weight neighbor;
"literal" additionally refuses to admit other core nodes. Both are faithful
readings of the source procedure, which states the core exclusion but walks
through an example that violates it.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from typing import Mapping

from .graph import Graph, NodeId, bfs_distances, component_members, induced_subgraph
from .roles import CORE, RoleMap
from .tc import TCResult

MODE_TRACE = "trace"
MODE_LITERAL = "literal"


@dataclass(frozen=True)
class Community:
    label: str
    members: frozenset[NodeId]
    internal_links: frozenset[int]


@dataclass(frozen=True)
class CommunitySet:
    communities: tuple[Community, ...]
    k_target: int | None = None
    note: str | None = None

    def members_of(self, label: str) -> frozenset[NodeId]:
        for c in self.communities:
            if c.label == label:
                return c.members
        raise KeyError(label)


def _internal_links(g: Graph, members: frozenset[NodeId]) -> frozenset[int]:
    return frozenset(e.id for e in g.edges if e.source in members and e.target in members)


def _community(g: Graph, label: str, members) -> Community:
    ms = frozenset(members)
    return Community(label, ms, _internal_links(g, ms))


def _weights(tc: TCResult | Mapping[NodeId, float]) -> Mapping[NodeId, float]:
    return tc.final.node_w if isinstance(tc, TCResult) else tc


def nearest_cores(g: Graph, tc: TCResult | Mapping[NodeId, float], roles: RoleMap, v: NodeId) -> tuple[NodeId, ...]:
    """Core nodes at minimal hop distance from v; all ties, sorted."""
    g.require_node(v)
    if roles.roles.get(v) == CORE:
        return (v,)
    dist = bfs_distances(g, v)
    reachable = [(dist[c], c) for c in roles.of(CORE) if dist[c] != float("inf")]
    if not reachable:
        warnings.warn(f"no core node reachable from {v!r}")
        return ()
    best = min(d for d, _ in reachable)
    return tuple(sorted(c for d, c in reachable if d == best))


def expansion_trace(
    g: Graph,
    weights: Mapping[NodeId, float],
    c: NodeId,
    roles: RoleMap | None = None,
    mode: str = MODE_TRACE,
) -> list[tuple[NodeId, tuple[NodeId, ...]]]:
    """FIFO expansion from c; one (fetched node, admitted neighbors) row each."""
    if mode not in (MODE_TRACE, MODE_LITERAL):
        raise ValueError(f"unknown admission mode {mode!r}")
    if mode == MODE_LITERAL and roles is None:
        raise ValueError("literal mode needs a role map to recognize core nodes")
    g.require_node(c)
    seen = {c}
    queue = [c]
    rows: list[tuple[NodeId, tuple[NodeId, ...]]] = []
    while queue:
        x = queue.pop(0)
        admitted = []
        for y in g.adjacent(x):
            if y in seen:
                continue
            if mode == MODE_LITERAL and roles.roles.get(y) == CORE:
                continue
            if weights[y] < weights[x]:
                seen.add(y)
                queue.append(y)
                admitted.append(y)
        rows.append((x, tuple(admitted)))
    return rows


def expand_from_core(
    g: Graph,
    tc: TCResult | Mapping[NodeId, float],
    roles: RoleMap,
    c: NodeId,
    mode: str = MODE_TRACE,
    force: bool = False,
) -> Community:
    """Community grown from core c along strictly decreasing node weights."""
    if roles.roles.get(c) != CORE and not force:
        raise ValueError(f"node {c!r} is not a core node; pass force=True to expand anyway")
    rows = expansion_trace(g, _weights(tc), c, roles, mode)
    members = {x for x, _ in rows}
    return _community(g, str(c), members)


def local_community_of_node(
    g: Graph,
    tc: TCResult | Mapping[NodeId, float],
    roles: RoleMap,
    v: NodeId,
    mode: str = MODE_TRACE,
) -> CommunitySet:
    """Communities of a non-core node: expand each of its nearest cores."""
    if roles.roles.get(v) == CORE:
        raise ValueError(f"node {v!r} is a core node; expand_from_core applies directly")
    cores = nearest_cores(g, tc, roles, v)
    if not cores:
        warnings.warn(f"node {v!r} has no reachable core; returning a singleton community")
        return CommunitySet((_community(g, str(v), {v}),), note="no reachable core")
    comms = []
    for c in cores:
        base = expand_from_core(g, tc, roles, c, mode)
        comms.append(_community(g, base.label, set(base.members) | {v}))
    return CommunitySet(tuple(comms))


def _ascend_to_center(
    g: Graph,
    weights: Mapping[NodeId, float],
    roles: RoleMap,
    start: NodeId,
    centers: frozenset[NodeId],
) -> set[NodeId]:
    """Walk uphill by best neighbor weight, collecting cores and the center."""
    collected: set[NodeId] = set()
    cur = start
    visited = {cur}
    while True:
        if roles.roles.get(cur) == CORE or cur in centers:
            collected.add(cur)
        if cur in centers:
            return collected
        candidates = [u for u in g.adjacent(cur) if u != cur and weights[u] > weights[cur]]
        if not candidates:
            return collected
        best = max(weights[u] for u in candidates)
        nxt = min(u for u in candidates if weights[u] == best)
        if nxt in visited:
            return collected
        visited.add(nxt)
        cur = nxt


def local_community_of_set(
    g: Graph,
    tc: TCResult | Mapping[NodeId, float],
    roles: RoleMap,
    seeds,
    mode: str = MODE_TRACE,
    tie_eps: float = 1e-9,
) -> Community:
    """Community jointly covering a seed set, grown from their common core.

    Each seed's uphill walk collects candidate cores up to the component
    center; the core minimizing the worst seed distance inside the induced
    candidate subgraph wins ties by higher weight, then smaller id.
    """
    seeds = sorted(set(seeds))
    if not seeds:
        raise ValueError("seed set is empty")
    for s in seeds:
        g.require_node(s)
    comp = next((m for m in component_members(g) if seeds[0] in m), ())
    if not all(s in comp for s in seeds):
        raise ValueError("seed nodes span multiple components; no common community exists")
    weights = _weights(tc)
    mx = max(weights[v] for v in comp)
    centers = frozenset(v for v in comp if weights[v] >= mx - tie_eps)
    core_set: set[NodeId] = set()
    for s in seeds:
        core_set |= _ascend_to_center(g, weights, roles, s, centers)
    if not core_set:
        warnings.warn(f"no candidate core found for seeds {seeds}; returning the bare seed set")
        return _community(g, ",".join(str(s) for s in seeds), seeds)
    sub = induced_subgraph(g, set(seeds) | core_set)
    best_core = None
    best_key = None
    for c in sorted(core_set):
        dist = bfs_distances(sub, c)
        worst = max(dist[s] for s in seeds)
        key = (worst, -weights[c], str(c))
        if best_key is None or key < best_key:
            best_key = key
            best_core = c
    community = expand_from_core(g, tc, roles, best_core, mode, force=True)
    uncovered = [s for s in seeds if s not in community.members]
    if uncovered:
        warnings.warn(f"community of {best_core!r} does not cover seeds {uncovered}")
        return _community(g, community.label, set(community.members) | set(seeds))
    return community


def find_k_communities(
    g: Graph,
    tc: TCResult | Mapping[NodeId, float],
    roles: RoleMap,
    k: int,
) -> CommunitySet:
    """Seed a community per core, attach every node to its nearest cores, merge to k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    cores = roles.of(CORE)
    members: dict[NodeId, set[NodeId]] = {c: {c} for c in cores}
    uncovered = []
    for v in g.nodes:
        if v in members:
            continue
        nearest = nearest_cores(g, tc, roles, v)
        if not nearest:
            uncovered.append(v)
            continue
        for c in nearest:
            members[c].add(v)
    cs = CommunitySet(
        tuple(_community(g, str(c), members[c]) for c in cores),
        k_target=k,
        note=f"nodes without reachable core: {uncovered}" if uncovered else None,
    )
    if len(cs.communities) > k:
        return merge_communities(g, cs, k)
    if len(cs.communities) < k:
        return CommunitySet(cs.communities, k, note="fewer core nodes than requested communities")
    return cs


def _jaccard(a: frozenset, b: frozenset) -> float:
    union = len(a | b)
    return len(a & b) / union if union else 0.0


def _external_links(g: Graph, a: frozenset, b: frozenset) -> int:
    return sum(
        1
        for e in g.edges
        if (e.source in a and e.target in b) or (e.source in b and e.target in a)
    )


def merge_communities(g: Graph, cs: CommunitySet, k: int) -> CommunitySet:
    """Merge most-similar pairs (Jaccard, then external links) until k remain.

    Stops early when every pair is fully disconnected: zero overlap and zero
    links between them.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    current = list(cs.communities)
    note = cs.note
    while len(current) > k:
        current.sort(key=lambda c: c.label)
        best = None
        best_j = 0.0
        for i in range(len(current)):
            for j in range(i + 1, len(current)):
                jac = _jaccard(current[i].members, current[j].members)
                if jac > best_j:
                    best_j = jac
                    best = (i, j)
        if best is None:
            best_links = 0
            for i in range(len(current)):
                for j in range(i + 1, len(current)):
                    links = _external_links(g, current[i].members, current[j].members)
                    if links > best_links:
                        best_links = links
                        best = (i, j)
        if best is None:
            note = "merging stopped early: remaining communities share no members or links"
            break
        i, j = best
        a, b = current[i], current[j]
        label = "+".join(sorted((a.label, b.label)))
        merged = _community(g, label, set(a.members) | set(b.members))
        current = [c for idx, c in enumerate(current) if idx not in (i, j)] + [merged]
    current.sort(key=lambda c: c.label)
    return CommunitySet(tuple(current), k, note)


def communities_json(cs: CommunitySet) -> str:
    payload = [
        {
            "label": c.label,
            "members": [str(v) for v in sorted(c.members)],
            "internal_links": sorted(c.internal_links),
        }
        for c in cs.communities
    ]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
