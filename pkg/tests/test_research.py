import json
import random

import pytest

from tcnet.backbone import evolution_series
from tcnet.research import (
    AUTHOR_PREFIX,
    PAPER_PREFIX,
    VENUE_PREFIX,
    build_citation_network,
    build_coauthor_network,
    build_heterogeneous_network,
    cumulative_coauthor_snapshots,
    motif_census,
    motif_label,
    parse_records,
)
from tcnet.tc import TCConfig, compute_tc, initial_state, tc_step


def record(paper_id, year, authors, **extra):
    return json.dumps({"id": paper_id, "year": year, "authors": authors, **extra})


def parsed(*lines):
    result = parse_records("\n".join(lines))
    assert result.errors == ()
    return result.records


def test_parse_happy_path():
    recs = parsed(
        record("p1", 2001, ["x", "y"], title="A study", venue="V", cited=["p2", "p0"]),
        "",
        record("p2", 2000, ["y"]),
    )
    assert len(recs) == 2
    assert recs[0].paper_id == "p1"
    assert recs[0].authors == ("x", "y")
    assert recs[0].cited == ("p2", "p0")
    assert recs[0].venue == "V"
    assert recs[1].authors == ("y",)
    assert recs[1].cited == ()


def test_parse_dedups_within_record():
    recs = parsed(record("p1", 2001, ["x", "y", "x"], cited=["p2", "p2"]))
    assert recs[0].authors == ("x", "y")
    assert recs[0].cited == ("p2",)


def test_parse_collects_errors_and_continues():
    result = parse_records(
        "\n".join(
            [
                "{nope",
                "[1, 2]",
                record("", 2001, ["x"]),
                record("p1", 2001, []),
                json.dumps({"id": "p2", "year": "2001", "authors": ["x"]}),
                json.dumps({"id": "p3", "year": 2001, "authors": ["two words"]}),
                record("ok", 2001, ["x"]),
                record("ok", 2002, ["y"]),
                json.dumps({"id": "p4", "year": 2001, "authors": ["x"], "cited": "p1"}),
            ]
        )
    )
    assert [r.paper_id for r in result.records] == ["ok"]
    linenos = [lineno for lineno, _ in result.errors]
    assert linenos == [1, 2, 3, 4, 5, 6, 8, 9]
    reasons = dict(result.errors)
    assert "JSON" in reasons[1]
    assert "object" in reasons[2]
    assert "id" in reasons[3]
    assert "authors" in reasons[4]
    assert "year" in reasons[5]
    assert "whitespace" in reasons[6]
    assert "duplicate" in reasons[8]
    assert "cited" in reasons[9]


def test_coauthor_arcs_follow_author_order():
    g = build_coauthor_network(parsed(record("p1", 2001, ["X", "Y", "Z"])))
    assert g.directed
    assert g.nodes == ("X", "Y", "Z")
    assert [(e.source, e.target) for e in g.edges] == [("X", "Y"), ("X", "Z"), ("Y", "Z")]
    assert set(g.relations.values()) == {"coauthor"}


def test_sole_author_gets_self_loop():
    g = build_coauthor_network(parsed(record("p1", 2001, ["W"])))
    assert g.m == 1
    assert g.edges[0].is_loop()


def test_repeated_collaboration_keeps_parallel_arcs():
    g = build_coauthor_network(
        parsed(record("p1", 2001, ["x", "y"]), record("p2", 2002, ["x", "y"]))
    )
    assert g.m == 2
    assert {(e.source, e.target) for e in g.edges} == {("x", "y")}


def test_arc_count_is_pairs_per_paper():
    rng = random.Random(23)
    pool = [f"a{i}" for i in range(12)]
    lines, want = [], 0
    for k in range(25):
        a = rng.randrange(1, 6)
        lines.append(record(f"p{k}", 2000 + k, rng.sample(pool, a)))
        want += 1 if a == 1 else a * (a - 1) // 2
    assert build_coauthor_network(parsed(*lines)).m == want


def test_citation_chain_with_dangling():
    net = build_citation_network(
        parsed(
            record("p3", 2020, ["c"], cited=["p2", "missing"]),
            record("p2", 2010, ["b"], cited=["p1"]),
            record("p1", 2000, ["a"]),
        )
    )
    assert net.dangling_count == 1
    assert net.dropped_arcs == ()
    assert {(e.source, e.target) for e in net.graph.edges} == {("p3", "p2"), ("p2", "p1")}
    assert set(net.graph.relations.values()) == {"cite"}


def test_citation_to_later_year():
    lines = [
        record("p1", 2000, ["a"], cited=["p3"]),
        record("p3", 2020, ["c"]),
    ]
    net = build_citation_network(parsed(*lines))
    assert net.graph.m == 0
    assert len(net.dropped_arcs) == 1
    assert net.dropped_arcs[0][:2] == ("p1", "p3")
    assert "later" in net.dropped_arcs[0][2]
    with pytest.raises(ValueError, match="later"):
        build_citation_network(parsed(*lines), strict=True)


def test_same_year_cycle_broken_deterministically():
    lines = [
        record("a", 2005, ["x"], cited=["b"]),
        record("b", 2005, ["y"], cited=["a"]),
    ]
    net = build_citation_network(parsed(*lines))
    assert len(net.dropped_arcs) == 1
    dropped = net.dropped_arcs[0]
    assert dropped[:2] == ("b", "a")
    assert "b -> a -> b" in dropped[2]
    assert [(e.source, e.target) for e in net.graph.edges] == [("a", "b")]
    with pytest.raises(ValueError, match="cycle"):
        build_citation_network(parsed(*lines), strict=True)


def test_year_ordered_corpus_never_drops():
    rng = random.Random(29)
    lines = []
    for k in range(30):
        older = [f"p{j}" for j in range(k) if rng.random() < 0.3]
        lines.append(record(f"p{k}", 2000 + k, ["w"], cited=older))
    net = build_citation_network(parsed(*lines), strict=True)
    assert net.dropped_arcs == ()
    assert net.dangling_count == 0


def test_heterogeneous_shape():
    g = build_heterogeneous_network(
        parsed(record("p1", 2001, ["x", "y"], venue="V", cited=["gone"]))
    )
    assert set(g.nodes) == {
        AUTHOR_PREFIX + "x",
        AUTHOR_PREFIX + "y",
        PAPER_PREFIX + "p1",
        VENUE_PREFIX + "V",
    }
    by_label = {}
    for e in g.edges:
        by_label.setdefault(g.relations[e.id], []).append((e.source, e.target))
    assert len(by_label["authorOf"]) == 2
    assert by_label["coauthor"] == [(AUTHOR_PREFIX + "x", AUTHOR_PREFIX + "y")]
    assert by_label["publishedIn"] == [(PAPER_PREFIX + "p1", VENUE_PREFIX + "V")]
    assert "cite" not in by_label


def test_heterogeneous_in_corpus_citation_kept():
    g = build_heterogeneous_network(
        parsed(record("p1", 2001, ["x"], cited=["p2"]), record("p2", 2000, ["y"]))
    )
    cite_arcs = [
        (e.source, e.target) for e in g.edges if g.relations[e.id] == "cite"
    ]
    assert cite_arcs == [(PAPER_PREFIX + "p1", PAPER_PREFIX + "p2")]


def test_unit_relation_weights_match_untyped_run():
    g = build_heterogeneous_network(
        parsed(
            record("p1", 2001, ["x", "y"], venue="V", cited=["p2"]),
            record("p2", 2000, ["y", "z"], venue="W"),
        )
    )
    plain = compute_tc(g)
    typed = compute_tc(
        g,
        TCConfig(
            relation_weights={
                "authorOf": 1.0,
                "coauthor": 1.0,
                "publishedIn": 1.0,
                "cite": 1.0,
            }
        ),
    )
    assert plain.final.node_w == typed.final.node_w
    assert plain.final.edge_w == typed.final.edge_w


def test_cite_weight_step_hand_values():
    g = build_heterogeneous_network(
        parsed(record("p1", 2001, ["x", "y"], cited=["p2"]), record("p2", 2000, ["x", "y"]))
    )
    cfg = TCConfig(relation_weights={"authorOf": 1.0, "coauthor": 1.0, "cite": 3.0})
    s = tc_step(g, initial_state(g), cfg)
    assert s.node_w[AUTHOR_PREFIX + "x"] == 5 / 6
    assert s.node_w[AUTHOR_PREFIX + "y"] == 5 / 6
    assert s.node_w[PAPER_PREFIX + "p1"] == 1.0
    assert s.node_w[PAPER_PREFIX + "p2"] == 1.0
    by_label = {}
    for e in g.edges:
        by_label.setdefault(g.relations[e.id], set()).add(s.edge_w[e.id])
    assert by_label["authorOf"] == {11 / 12}
    assert by_label["coauthor"] == {5 / 6}
    assert by_label["cite"] == {1.0}


def test_motif_census():
    census = motif_census(
        parsed(
            record("p1", 2001, ["a"]),
            record("p2", 2001, ["a", "b"]),
            record("p3", 2002, ["c", "d"]),
            record("p4", 2002, ["a", "b", "c"]),
            record("p5", 2003, ["a", "b", "c", "d", "e"]),
        )
    )
    assert census.counts == {"K5": 1, "edge": 2, "loop": 1, "triangle": 1}
    assert census.total() == 5
    assert motif_label(4) == "K4"


def test_cumulative_snapshots_grow():
    recs = parsed(
        record("p1", 2001, ["a", "b"]),
        record("p0", 2000, ["a"]),
        record("p2", 2001, ["c", "a"]),
        record("p3", 2003, ["d", "b"]),
    )
    snaps = cumulative_coauthor_snapshots(recs)
    assert [label for label, _ in snaps] == ["2000", "2001", "2003"]
    assert snaps[0][1].nodes == ("a",)
    assert snaps[1][1].nodes == ("a", "b", "c")
    assert snaps[2][1].m == 4
    # the first snapshot is a lone self-looping author, which has no core
    with pytest.warns(UserWarning, match="no core"):
        series = evolution_series(snaps)
    assert series.records[-1].node_count == 4
    assert series.records[-1].new_nodes == ("d",)


def test_coauthor_tc_distribution_is_bottom_heavy():
    rng = random.Random(5)
    pool = [f"a{i:02d}" for i in range(30)]
    lines = [
        record(f"p{k}", 2000 + k % 5, rng.sample(pool, rng.choice((1, 2, 2, 3, 3, 4))))
        for k in range(40)
    ]
    res = compute_tc(build_coauthor_network(parsed(*lines)))
    assert res.converged
    bins = [0, 0, 0, 0]
    for x in res.final.node_w.values():
        bins[min(3, int(x * 4))] += 1
    assert bins[0] > sum(bins[1:])
