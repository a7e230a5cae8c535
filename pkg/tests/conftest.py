"""Shared fixtures and the published-values gate for the 16-node tree."""

import pytest

from tcnet.centrality import betweenness_centrality, closeness_centrality, degree_centrality
from tcnet.generators import fixture_tree16
from tcnet.roles import classify_roles
from tcnet.tc import compute_tc

# Published comparison table for the 16-node tree:
# node -> (information, degree, closeness, betweenness, pagerank, log weight)
TABLE2 = {
    1: (0.444, 0.333, 0.349, 0.476, 0.161, -2.454),
    2: (0.591, 0.333, 0.455, 0.714, 0.153, 0.0),
    3: (0.444, 0.333, 0.349, 0.476, 0.161, -2.454),
    4: (0.106, 0.067, 0.263, 0.000, 0.037, -5.718),
    5: (0.106, 0.067, 0.263, 0.000, 0.037, -5.718),
    6: (0.106, 0.067, 0.263, 0.000, 0.037, -5.718),
    7: (0.389, 0.133, 0.405, 0.476, 0.063, -0.755),
    8: (0.106, 0.067, 0.263, 0.000, 0.037, -5.718),
    9: (0.116, 0.067, 0.319, 0.000, 0.035, -0.827),
    10: (0.116, 0.067, 0.319, 0.000, 0.035, -0.827),
    11: (0.116, 0.067, 0.319, 0.000, 0.035, -0.827),
    12: (0.389, 0.133, 0.405, 0.476, 0.063, -0.755),
    13: (0.106, 0.067, 0.263, 0.000, 0.037, -5.718),
    14: (0.106, 0.067, 0.263, 0.000, 0.037, -5.718),
    15: (0.106, 0.067, 0.263, 0.000, 0.037, -5.718),
    16: (0.106, 0.067, 0.263, 0.000, 0.037, -5.718),
}

LEAVES = (4, 5, 6, 8, 13, 14, 15, 16)


@pytest.fixture(scope="session", autouse=True)
def tree16_reference_gate():
    """Reject the tree fixture before anything else runs if its classical
    centrality columns drift from the published table by 0.001 or more."""
    g = fixture_tree16()
    cd = degree_centrality(g).scores
    cc = closeness_centrality(g).scores
    cb = betweenness_centrality(g).scores
    bad = []
    for v, (_, ecd, ecc, ecb, _, _) in TABLE2.items():
        for name, got, want in (("degree", cd[v], ecd), ("closeness", cc[v], ecc), ("betweenness", cb[v], ecb)):
            if abs(got - want) >= 0.001:
                bad.append(f"node {v} {name}: {got:.4f} != {want}")
    if bad:
        pytest.exit("tree16 fixture failed its reference cross-check: " + "; ".join(bad), returncode=1)


@pytest.fixture(scope="session")
def tree16():
    return fixture_tree16()


@pytest.fixture(scope="session")
def tree16_tc(tree16):
    return compute_tc(tree16)


@pytest.fixture(scope="session")
def tree16_roles(tree16, tree16_tc):
    return classify_roles(tree16, tree16_tc)
