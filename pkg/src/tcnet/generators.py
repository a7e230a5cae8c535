"""Deterministic graph generators and the two hand-built test fixtures."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, NodeId, build_graph

FAMILIES = ("ring", "lattice", "complete", "ws_small_world", "er_random", "path", "star")


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for one generated graph; same spec always means same graph."""

    family: str
    n: int = 0
    rows: int = 0
    cols: int = 0
    k: int = 10
    p: float = 0.0
    seed: int = 0


def ring(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"ring needs n >= 3, got {n}")
    return build_graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 2:
        raise ValueError(f"path needs n >= 2, got {n}")
    return build_graph(range(n), [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Graph:
    """Node 0 is the hub; the other n-1 nodes are leaves."""
    if n < 2:
        raise ValueError(f"star needs n >= 2, got {n}")
    return build_graph(range(n), [(0, i) for i in range(1, n)])


def complete(n: int) -> Graph:
    if n < 2:
        raise ValueError(f"complete needs n >= 2, got {n}")
    return build_graph(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])


def lattice(rows: int, cols: int) -> Graph:
    """Row-major grid without wraparound; r*c nodes, r(c-1)+c(r-1) edges."""
    if rows < 2 or cols < 2:
        raise ValueError(f"lattice needs rows, cols >= 2, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return build_graph(range(rows * cols), edges)


def watts_strogatz(n: int, k: int, p: float, seed: int) -> Graph:
    """Ring lattice with k nearest neighbors, each edge rewired with probability p.

    Rewiring keeps the edge count at nk/2; self-loops and duplicate edges are
    skipped by redrawing the target.
    """
    if k < 2 or k % 2 != 0:
        raise ValueError(f"watts_strogatz needs even k >= 2, got {k}")
    if k >= n:
        raise ValueError(f"watts_strogatz needs k < n, got k={k}, n={n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"rewiring probability must be in [0, 1], got {p}")
    rng = random.Random(seed)
    present = {(i, (i + j) % n) if i < (i + j) % n else ((i + j) % n, i)
               for i in range(n) for j in range(1, k // 2 + 1)}
    edges: list[tuple[int, int]] = []
    for j in range(1, k // 2 + 1):
        for i in range(n):
            u, v = i, (i + j) % n
            key = (u, v) if u < v else (v, u)
            if rng.random() < p:
                # Redraw until the replacement is a fresh non-loop edge; fully
                # connected neighborhoods keep the original edge instead.
                candidates = n - 1 - sum(1 for w in range(n)
                                         if w != u and ((u, w) if u < w else (w, u)) in present)
                if candidates > 0:
                    while True:
                        w = rng.randrange(n)
                        new_key = (u, w) if u < w else (w, u)
                        if w != u and new_key not in present:
                            break
                    present.discard(key)
                    present.add(new_key)
                    key = new_key
            edges.append(key)
    return build_graph(range(n), edges)


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p): every unordered pair gets an edge independently."""
    if n < 1:
        raise ValueError(f"erdos_renyi needs n >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return build_graph(range(n), edges)


def generate(spec: GeneratorSpec) -> Graph:
    if spec.family == "ring":
        return ring(spec.n)
    if spec.family == "path":
        return path(spec.n)
    if spec.family == "star":
        return star(spec.n)
    if spec.family == "complete":
        return complete(spec.n)
    if spec.family == "lattice":
        return lattice(spec.rows, spec.cols)
    if spec.family == "ws_small_world":
        return watts_strogatz(spec.n, spec.k, spec.p, spec.seed)
    if spec.family == "er_random":
        return erdos_renyi(spec.n, spec.p, spec.seed)
    raise ValueError(f"unknown family {spec.family!r}; expected one of {FAMILIES}")


TREE16_EDGES = (
    (1, 4), (1, 5), (1, 6), (1, 8), (1, 7),
    (7, 2),
    (2, 9), (2, 10), (2, 11), (2, 12),
    (12, 3),
    (3, 13), (3, 14), (3, 15), (3, 16),
)


def fixture_tree16() -> Graph:
    """16-node tree: hubs 1, 2, 3 of degree 5 chained through nodes 7 and 12."""
    return build_graph(range(1, 17), TREE16_EDGES)


EXPANSION_EDGES = (
    ("A", "B"), ("B", "C"), ("B", "D"), ("B", "E"),
    ("D", "F"), ("D", "G"), ("D", "H"),
    ("E", "I"), ("E", "J"),
)

EXPANSION_WEIGHTS = {
    "A": 1.0, "B": 0.9, "C": 0.3, "D": 0.7, "E": 0.6,
    "F": 0.4, "G": 0.35, "H": 0.3, "I": 0.25, "J": 0.2,
}


def fixture_clique_bridge() -> Graph:
    """Two triangles joined only through a middle hub, leaves weighing down
    the triangle nodes.

    The hub ends up as the sole top-weight node while every one of its
    neighbors classifies as core, so the center-override rule relabels the
    hub as a bridge.
    """
    group_nodes = ["a1", "a2", "a3", "b1", "b2", "b3"]
    edges = [
        ("a1", "a2"), ("a1", "a3"), ("a2", "a3"),
        ("b1", "b2"), ("b1", "b3"), ("b2", "b3"),
    ]
    edges += [("x", c) for c in group_nodes]
    for c in group_nodes:
        edges += [(c, f"{c}_l{i}") for i in range(4)]
    return build_graph(sorted({u for e in edges for u in e}), edges)


def fixture_expansion() -> tuple[Graph, dict[NodeId, float]]:
    """Tree of ten nodes A..J plus a witness weight assignment.

    The weights are constructed, not computed: they satisfy the strict-descent
    constraints that make the community-expansion walk from B admit C, D, E,
    then F, G, H, then I, J, and make the local community of F come out as
    {D, F, G, H}.
    """
    g = build_graph(sorted({u for e in EXPANSION_EDGES for u in e}), EXPANSION_EDGES)
    return g, dict(EXPANSION_WEIGHTS)
