import math
import random

import pytest

from tcnet.centrality import (
    betweenness_centrality,
    centrality_csv,
    closeness_centrality,
    degree_centrality,
    hits,
    information_centrality,
    network_efficiency,
    pagerank,
)
from tcnet.generators import complete, fixture_tree16, path, ring, star
from tcnet.graph import build_graph

from conftest import TABLE2
from oracles import brute_betweenness, brute_closeness, brute_edge_betweenness

ORBITS = ((1, 3), (7, 12), (9, 10, 11), (4, 5, 6, 8, 13, 14, 15, 16))


def random_connected(rng, n, extra=2):
    edges = [(i, rng.randrange(i)) for i in range(1, n)]
    for _ in range(extra):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.append((u, v))
    return build_graph(range(n), edges)


def test_degree_path():
    rep = degree_centrality(path(3))
    assert rep.scores == {0: 0.5, 1: 1.0, 2: 0.5}
    assert rep.measure == "degree"


def test_degree_star():
    rep = degree_centrality(star(5))
    assert rep.scores[0] == 1.0
    assert all(rep.scores[v] == 0.25 for v in (1, 2, 3, 4))


def test_degree_counts_loops_twice():
    g = build_graph([1, 2], [(1, 2), (1, 1)])
    assert degree_centrality(g).scores[1] == 3.0


def test_degree_directed_modes():
    g = build_graph(["a", "b", "c"], [("a", "b"), ("a", "c")], directed=True)
    assert degree_centrality(g, "out").scores == {"a": 1.0, "b": 0.0, "c": 0.0}
    assert degree_centrality(g, "in").scores == {"a": 0.0, "b": 0.5, "c": 0.5}
    assert degree_centrality(g, "in").measure == "in_degree"


def test_degree_mode_errors():
    with pytest.raises(ValueError, match="directed"):
        degree_centrality(path(3), "in")
    with pytest.raises(ValueError, match="mode"):
        degree_centrality(path(3), "sideways")
    with pytest.raises(ValueError, match="2 nodes"):
        degree_centrality(build_graph([1], []))


def test_betweenness_path_hand_values():
    rep = betweenness_centrality(build_graph(["a", "b", "c"], [("a", "b"), ("b", "c")]))
    assert rep.scores == {"a": 0.0, "b": 1.0, "c": 0.0}
    assert rep.edge_scores == {0: 4.0, 1: 4.0}


def test_betweenness_complete_is_zero():
    rep = betweenness_centrality(complete(5))
    assert set(rep.scores.values()) == {0.0}
    # every edge carries exactly its endpoint pair, once per direction
    assert set(rep.edge_scores.values()) == {2.0}


def test_betweenness_tree16_edges(tree16):
    rep = betweenness_centrality(tree16)
    by_pair = {}
    for e in tree16.edges:
        key = tuple(sorted((e.source, e.target)))
        by_pair[key] = rep.edge_scores[e.id]
    # a tree edge carries 2 * (nodes on one side) * (nodes on the other)
    assert by_pair[(1, 7)] == 110.0
    assert by_pair[(2, 7)] == 120.0
    assert by_pair[(2, 12)] == 120.0
    assert by_pair[(2, 9)] == 30.0
    assert by_pair[(1, 4)] == 30.0


def test_betweenness_ignores_loops_and_parallels():
    g = build_graph([1, 2, 3], [(1, 2), (2, 3), (2, 2), (1, 2)])
    rep = betweenness_centrality(g)
    assert rep.scores[2] == 1.0
    assert rep.edge_scores[2] == 0.0
    assert rep.edge_scores[0] == rep.edge_scores[3] == 4.0


def test_betweenness_needs_three_nodes():
    with pytest.raises(ValueError):
        betweenness_centrality(build_graph([1, 2], [(1, 2)]))


def test_betweenness_matches_oracle_exactly():
    rng = random.Random(7)
    for _ in range(30):
        g = random_connected(rng, rng.randrange(4, 9), extra=rng.randrange(4))
        rep = betweenness_centrality(g)
        assert rep.scores == brute_betweenness(g)
        want = brute_edge_betweenness(g)
        for e in g.edges:
            key = tuple(sorted((e.source, e.target)))
            assert rep.edge_scores[e.id] == want.get(key, 0.0)


def test_closeness_path():
    rep = closeness_centrality(path(3))
    assert rep.scores == {0: 2 / 3, 1: 1.0, 2: 2 / 3}
    assert rep.flags == {}


def test_closeness_disconnected_scored_per_component():
    g = build_graph(range(5), [(0, 1), (2, 3), (3, 4)])
    rep = closeness_centrality(g)
    assert rep.scores[0] == rep.scores[1] == 1.0
    assert rep.scores[3] == 1.0
    assert rep.scores[2] == 2 / 3


def test_closeness_isolated_flagged():
    g = build_graph([1, 2, 3], [(1, 2)])
    rep = closeness_centrality(g)
    assert rep.scores[3] == 0.0
    assert rep.flags == {3: "isolated"}


def test_closeness_matches_oracle_exactly():
    rng = random.Random(11)
    for _ in range(30):
        g = random_connected(rng, rng.randrange(3, 9), extra=rng.randrange(4))
        assert closeness_centrality(g).scores == brute_closeness(g)


def test_pagerank_ring_uniform():
    rep = pagerank(ring(8))
    assert rep.converged
    for v, s in rep.scores.items():
        assert math.isclose(s, 0.125, abs_tol=1e-12)


def test_pagerank_sums_to_one():
    rng = random.Random(13)
    for directed in (False, True):
        g = build_graph(range(6), [(i, rng.randrange(i)) for i in range(1, 6)], directed=directed)
        rep = pagerank(g)
        assert math.isclose(math.fsum(rep.scores.values()), 1.0, abs_tol=1e-9)


def test_pagerank_edgeless_pair_splits_evenly():
    rep = pagerank(build_graph([1, 2], [], directed=True))
    assert rep.scores == {1: 0.5, 2: 0.5}
    assert rep.converged


def test_pagerank_dangling_sink_gains():
    g = build_graph(["a", "b"], [("a", "b")], directed=True)
    rep = pagerank(g)
    assert rep.converged
    assert rep.scores["b"] > rep.scores["a"]
    assert math.isclose(math.fsum(rep.scores.values()), 1.0, abs_tol=1e-9)


def test_pagerank_tree16_matches_published(tree16):
    rep = pagerank(tree16)
    for v, row in TABLE2.items():
        assert abs(rep.scores[v] - row[4]) <= 0.005


def test_pagerank_validation():
    with pytest.raises(ValueError, match="damping"):
        pagerank(path(3), damping=1.0)
    with pytest.raises(ValueError, match="nonempty"):
        pagerank(build_graph([], []))


def test_pagerank_iteration_cap_reported():
    rep = pagerank(ring(50), tol=0.0, max_iter=5)
    assert not rep.converged


def test_hits_single_arc():
    g = build_graph(["a", "b"], [("a", "b")], directed=True)
    auth, hub = hits(g)
    assert auth == {"a": 0.0, "b": 1.0}
    assert hub == {"a": 1.0, "b": 0.0}


def test_hits_chain_matches_inline_iteration():
    g = build_graph([0, 1, 2], [(0, 1), (1, 2)], directed=True)
    auth, hub = hits(g)
    a = {v: 1.0 for v in (0, 1, 2)}
    h = {v: 1.0 for v in (0, 1, 2)}
    for _ in range(200):
        a = {0: 0.0, 1: h[0], 2: h[1]}
        na = math.sqrt(sum(x * x for x in a.values()))
        a = {v: x / na for v, x in a.items()}
        h = {0: a[1], 1: a[2], 2: 0.0}
        nh = math.sqrt(sum(x * x for x in h.values()))
        h = {v: x / nh for v, x in h.items()}
    for v in (0, 1, 2):
        assert math.isclose(auth[v], a[v], abs_tol=1e-8)
        assert math.isclose(hub[v], h[v], abs_tol=1e-8)


def test_hits_requires_directed():
    with pytest.raises(ValueError, match="directed"):
        hits(path(3))


def test_hits_no_arcs_warns_uniform():
    g = build_graph([1, 2, 3, 4], [], directed=True)
    with pytest.warns(UserWarning, match="no arcs"):
        auth, hub = hits(g)
    assert auth == hub
    assert all(math.isclose(x, 0.5, abs_tol=1e-12) for x in auth.values())


def test_efficiency_hand_values():
    assert network_efficiency(path(3)) == 5 / 6
    assert network_efficiency(complete(4)) == 1.0
    assert network_efficiency(build_graph([1, 2], [])) == 0.0
    with pytest.raises(ValueError):
        network_efficiency(build_graph([1], []))


def test_information_path_hand_values():
    rep = information_centrality(build_graph(["a", "b", "c"], [("a", "b"), ("b", "c")]))
    assert math.isclose(rep.scores["a"], 0.6, abs_tol=1e-12)
    assert rep.scores["b"] == 1.0
    assert math.isclose(rep.scores["c"], 0.6, abs_tol=1e-12)


def test_information_star_hub_total_loss():
    rep = information_centrality(star(6))
    assert rep.scores[0] == 1.0
    assert len({rep.scores[v] for v in range(1, 6)}) == 1


def test_information_tree16_matches_published(tree16):
    rep = information_centrality(tree16)
    for v, row in TABLE2.items():
        assert abs(rep.scores[v] - row[0]) <= 0.005


def test_information_undefined_without_edges():
    with pytest.raises(ValueError, match="efficiency"):
        information_centrality(build_graph([1, 2, 3], []))


def test_orbit_symmetry_exact(tree16):
    reports = [
        betweenness_centrality(tree16),
        closeness_centrality(tree16),
        pagerank(tree16),
        information_centrality(tree16),
    ]
    for rep in reports:
        for orbit in ORBITS:
            assert len({rep.scores[v] for v in orbit}) == 1, rep.measure


def test_centrality_csv_shape():
    g = path(3)
    text = centrality_csv([degree_centrality(g), closeness_centrality(g)])
    lines = text.splitlines()
    assert lines[0] == "node,measure,value"
    assert len(lines) == 7
    assert lines[1] == "0,degree,0.5"
    assert text.endswith("\n")
