"""Command-line interface: reproducible pipelines over the library modules.

Every output starts with a manifest (command, effective config, input
digests, tool version) so identical manifests imply byte-identical output.
No command reads the clock or unseeded randomness. TCNET_WORKERS is accepted
for pipeline compatibility but never changes results; computation is
single-threaded-equivalent by construction.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import __version__
from .backbone import cooperation_density, evolution_csv, evolution_series, extract_backbone
from .centrality import (
    CentralityReport,
    betweenness_centrality,
    centrality_csv,
    closeness_centrality,
    degree_centrality,
    hits,
    information_centrality,
    network_efficiency,
    pagerank,
)
from .community import (
    MODE_LITERAL,
    MODE_TRACE,
    CommunitySet,
    communities_json,
    find_k_communities,
    local_community_of_node,
    local_community_of_set,
)
from .generators import FAMILIES, GeneratorSpec, fixture_clique_bridge, fixture_expansion, fixture_tree16, generate
from .graph import Graph, GraphError, format_dot, format_edge_list, parse_edge_list
from .roles import RoleConfig, classify_roles, roles_csv
from .tc import (
    TCConfig,
    compute_tc,
    edge_csv,
    log_tc,
    log_tc_histogram,
    node_csv,
    residual_csv,
    topological_centers,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _manifest(command: str, config: dict, inputs: list[str]) -> str:
    payload = {"command": command, "config": config, "inputs": inputs, "version": __version__}
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _emit(args, body: str, manifest: str, json_body: bool = False) -> None:
    if json_body:
        text = json.dumps({"manifest": json.loads(manifest), "data": json.loads(body)},
                          sort_keys=True, indent=2) + "\n"
    else:
        text = f"# manifest: {manifest}\n{body}"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _add_input_options(p: _Parser, with_family: bool = False) -> None:
    p.add_argument("--input", "-i", default="-", help="edge-list file, or - for stdin")
    p.add_argument("--directed", action="store_true", help="treat the edge list as directed")
    if with_family:
        p.add_argument("--family", choices=FAMILIES, help="generate the input instead of reading it")
        _add_family_params(p)


def _add_family_params(p: _Parser) -> None:
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--rows", type=int, default=0)
    p.add_argument("--cols", type=int, default=0)
    p.add_argument("--k-nearest", type=int, default=10, dest="k_nearest",
                   help="ring-lattice neighbor count for the small-world family")
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)


def _add_tc_options(p: _Parser) -> None:
    p.add_argument("--eps", type=float, help="set both convergence thresholds")
    p.add_argument("--eps-nodes", type=float, default=0.001)
    p.add_argument("--eps-edges", type=float, default=0.001)
    p.add_argument("--max", type=int, default=100, help="iteration cap")
    p.add_argument("--relation-weight", action="append", default=[], metavar="LABEL=W",
                   help="weight for one relation label; repeatable")


def _add_output_option(p: _Parser) -> None:
    p.add_argument("--output", "-o", help="output file (default stdout)")


def _family_spec(args) -> GeneratorSpec:
    return GeneratorSpec(
        family=args.family,
        n=args.n,
        rows=args.rows,
        cols=args.cols,
        k=args.k_nearest,
        p=args.p,
        seed=args.seed,
    )


def _family_config(args) -> dict:
    spec = _family_spec(args)
    return {"family": spec.family, "n": spec.n, "rows": spec.rows, "cols": spec.cols,
            "k": spec.k, "p": spec.p, "seed": spec.seed}


def _load_graph(args) -> tuple[Graph, list[str], dict]:
    """Graph plus input digests and the input-side manifest config."""
    if getattr(args, "family", None):
        g = generate(_family_spec(args))
        text = format_edge_list(g)
        return g, [_digest(text.encode())], _family_config(args)
    if args.input == "-":
        text = sys.stdin.read()
    else:
        text = Path(args.input).read_text()
    g = parse_edge_list(text, directed=args.directed)
    return g, [_digest(text.encode())], {"directed": args.directed}


def _tc_config(args) -> TCConfig:
    eps_n = args.eps if args.eps is not None else args.eps_nodes
    eps_m = args.eps if args.eps is not None else args.eps_edges
    rw = {}
    for item in args.relation_weight:
        label, sep, value = item.partition("=")
        if not sep or not label:
            raise ValueError(f"bad relation weight {item!r}; expected LABEL=W")
        rw[label] = float(value)
    return TCConfig(max_iterations=args.max, eps_nodes=eps_n, eps_edges=eps_m,
                    relation_weights=rw or None)


def _tc_config_dict(cfg: TCConfig) -> dict:
    return {
        "max_iterations": cfg.max_iterations,
        "eps_nodes": cfg.eps_nodes,
        "eps_edges": cfg.eps_edges,
        "relation_weights": dict(cfg.relation_weights) if cfg.relation_weights else None,
    }


# -- subcommand handlers ----------------------------------------------------


def _cmd_generate(args) -> int:
    g = generate(_family_spec(args))
    manifest = _manifest("generate", _family_config(args), [])
    _emit(args, format_edge_list(g), manifest)
    return 0


def _cmd_tc(args) -> int:
    g, digests, input_cfg = _load_graph(args)
    cfg = _tc_config(args)
    result = compute_tc(g, cfg)
    config = {**input_cfg, **_tc_config_dict(cfg), "report": args.report, "bins": args.bins}
    manifest = _manifest("tc", config, digests)
    if args.report == "nodes":
        body = node_csv(result)
    elif args.report == "edges":
        body = edge_csv(g, result)
    elif args.report == "residuals":
        body = residual_csv(result)
    else:
        rows = ["bin_low,bin_high,count"]
        rows += [f"{lo!r},{hi!r},{count}" for lo, hi, count in log_tc_histogram(result, args.bins)]
        body = "\n".join(rows) + "\n"
    _emit(args, body, manifest)
    if args.strict and not result.converged:
        print(f"did not converge within {cfg.max_iterations} iterations", file=sys.stderr)
        return 3
    return 0


MEASURES = ("degree", "in_degree", "out_degree", "betweenness", "closeness",
            "pagerank", "information", "hits", "efficiency")


def _cmd_centrality(args) -> int:
    g, digests, input_cfg = _load_graph(args)
    wanted = [m.strip() for m in args.measures.split(",") if m.strip()]
    for m in wanted:
        if m not in MEASURES:
            raise ValueError(f"unknown measure {m!r}; choose from {', '.join(MEASURES)}")
    reports = []
    for m in wanted:
        if m == "degree":
            reports.append(degree_centrality(g))
        elif m in ("in_degree", "out_degree"):
            reports.append(degree_centrality(g, m.split("_")[0]))
        elif m == "betweenness":
            reports.append(betweenness_centrality(g))
        elif m == "closeness":
            reports.append(closeness_centrality(g))
        elif m == "pagerank":
            reports.append(pagerank(g, args.damping, args.tol, args.max_iter))
        elif m == "information":
            reports.append(information_centrality(g))
        elif m == "hits":
            auth, hub = hits(g, args.tol, args.max_iter)
            reports.append(CentralityReport("authority", auth))
            reports.append(CentralityReport("hub", hub))
        elif m == "efficiency":
            reports.append(CentralityReport("efficiency", {"*": network_efficiency(g)}))
    config = {**input_cfg, "measures": wanted, "damping": args.damping,
              "tol": args.tol, "max_iter": args.max_iter}
    manifest = _manifest("centrality", config, digests)
    _emit(args, centrality_csv(reports), manifest)
    return 0


def _cmd_roles(args) -> int:
    g, digests, input_cfg = _load_graph(args)
    cfg = _tc_config(args)
    result = compute_tc(g, cfg)
    roles = classify_roles(g, result, RoleConfig(core_threshold=args.core_threshold))
    config = {**input_cfg, **_tc_config_dict(cfg), "core_threshold": args.core_threshold}
    manifest = _manifest("roles", config, digests)
    _emit(args, roles_csv(roles, result.final.node_w), manifest)
    return 0


def _cmd_communities(args) -> int:
    g, digests, input_cfg = _load_graph(args)
    cfg = _tc_config(args)
    result = compute_tc(g, cfg)
    roles = classify_roles(g, result, RoleConfig(core_threshold=args.core_threshold))
    if args.seed_node is not None and args.seed_set is not None:
        raise ValueError("--seed-node and --seed-set are mutually exclusive")
    if args.seed_node is not None:
        cs = local_community_of_node(g, result, roles, args.seed_node, args.mode)
        body = communities_json(cs)
    elif args.seed_set is not None:
        seeds = [s for s in args.seed_set.split(",") if s]
        community = local_community_of_set(g, result, roles, seeds, args.mode)
        body = communities_json(CommunitySet((community,)))
    else:
        if args.k is None:
            raise ValueError("--k is required unless a seed node or seed set is given")
        cs = find_k_communities(g, result, roles, args.k)
        body = communities_json(cs)
    config = {**input_cfg, **_tc_config_dict(cfg), "core_threshold": args.core_threshold,
              "k": args.k, "mode": args.mode, "seed_node": args.seed_node, "seed_set": args.seed_set}
    manifest = _manifest("communities", config, digests)
    _emit(args, body, manifest, json_body=True)
    return 0


def _cmd_backbone(args) -> int:
    g, digests, input_cfg = _load_graph(args)
    cfg = _tc_config(args)
    result = compute_tc(g, cfg)
    roles = classify_roles(g, result, RoleConfig(core_threshold=args.core_threshold))
    report = extract_backbone(g, roles)
    config = {**input_cfg, **_tc_config_dict(cfg), "core_threshold": args.core_threshold,
              "format": args.format}
    manifest = _manifest("backbone", config, digests)
    if args.format == "dot":
        _emit(args, format_dot(report.backbone, "backbone"), manifest)
    elif args.format == "edgelist":
        _emit(args, format_edge_list(report.backbone), manifest)
    else:
        summary = {
            "core_count": report.core_count,
            "edge_count": report.backbone.m,
            "component_sizes": list(report.component_sizes),
            "isolated_cores": [str(v) for v in report.isolated_cores],
            "density": cooperation_density(report.backbone) if report.backbone.n else 0.0,
        }
        _emit(args, json.dumps(summary, sort_keys=True), manifest, json_body=True)
    return 0


def _cmd_evolve(args) -> int:
    labels = [s for s in args.labels.split(",") if s] if args.labels else None
    if labels and len(labels) != len(args.snapshots):
        raise ValueError("label count does not match snapshot count")
    snapshots = []
    digests = []
    for idx, path in enumerate(args.snapshots):
        text = Path(path).read_text()
        digests.append(_digest(text.encode()))
        label = labels[idx] if labels else Path(path).stem
        snapshots.append((label, parse_edge_list(text, directed=args.directed)))
    cfg = _tc_config(args)
    series = evolution_series(snapshots, RoleConfig(core_threshold=args.core_threshold), cfg)
    config = {"directed": args.directed, **_tc_config_dict(cfg),
              "core_threshold": args.core_threshold,
              "labels": [label for label, _ in snapshots]}
    manifest = _manifest("evolve", config, digests)
    _emit(args, evolution_csv(series), manifest)
    return 0


def _cmd_ingest(args) -> int:
    from .research import (
        build_citation_network,
        build_coauthor_network,
        build_heterogeneous_network,
        cumulative_coauthor_snapshots,
        parse_records,
    )

    if args.records == "-":
        text = sys.stdin.read()
    else:
        text = Path(args.records).read_text()
    parsed = parse_records(text)
    for lineno, reason in parsed.errors:
        print(f"record line {lineno}: {reason}", file=sys.stderr)
    if not parsed.records:
        raise ValueError("no valid records in input")
    config = {"build": args.build, "strict": args.strict,
              "cumulative_by_year": args.cumulative_by_year}
    manifest = _manifest("ingest", config, [_digest(text.encode())])
    if args.cumulative_by_year:
        out_dir = Path(args.cumulative_by_year)
        out_dir.mkdir(parents=True, exist_ok=True)
        for year, g in cumulative_coauthor_snapshots(parsed.records):
            body = f"# manifest: {manifest}\n# year: {year}\n" + format_edge_list(g)
            (out_dir / f"{year}.txt").write_text(body)
        return 0
    if args.build == "coauthor":
        g = build_coauthor_network(parsed.records)
    elif args.build == "citation":
        net = build_citation_network(parsed.records, strict=args.strict)
        if net.dangling_count:
            print(f"dropped {net.dangling_count} citations to papers outside the corpus", file=sys.stderr)
        for u, v, reason in net.dropped_arcs:
            print(f"dropped arc {u} -> {v}: {reason}", file=sys.stderr)
        g = net.graph
    else:
        g = build_heterogeneous_network(parsed.records)
    _emit(args, format_edge_list(g), manifest)
    return 0


def _cmd_fixtures(args) -> int:
    config = {"name": args.name, "weights": args.weights}
    manifest = _manifest("fixtures", config, [])
    if args.name == "tree16":
        g = fixture_tree16()
    elif args.name == "clique_bridge":
        g = fixture_clique_bridge()
    else:
        g, weights = fixture_expansion()
        if args.weights:
            rows = ["node,weight"] + [f"{v},{weights[v]!r}" for v in sorted(weights)]
            _emit(args, "\n".join(rows) + "\n", manifest)
            return 0
    if args.weights and args.name != "expansion":
        raise ValueError("--weights applies only to the expansion fixture")
    _emit(args, format_edge_list(g), manifest)
    return 0


def _cmd_table2(args) -> int:
    g = fixture_tree16()
    cfg = _tc_config(args)
    result = compute_tc(g, cfg)
    logs = log_tc(result)
    ci = information_centrality(g).scores
    cd = degree_centrality(g).scores
    cc = closeness_centrality(g).scores
    cb = betweenness_centrality(g).scores
    pr = pagerank(g, args.damping).scores
    lines = ["node,information,degree,closeness,betweenness,pagerank,log_tc"]
    for v in g.nodes:
        lines.append(f"{v},{ci[v]!r},{cd[v]!r},{cc[v]!r},{cb[v]!r},{pr[v]!r},{logs[v]!r}")
    config = {**_tc_config_dict(cfg), "damping": args.damping}
    manifest = _manifest("table2", config, [])
    _emit(args, "\n".join(lines) + "\n", manifest)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="tcnet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"tcnet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="emit a generated graph as an edge list")
    p.add_argument("--family", choices=FAMILIES, required=True)
    _add_family_params(p)
    _add_output_option(p)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("tc", help="iterate node/edge weights to convergence")
    _add_input_options(p, with_family=True)
    _add_tc_options(p)
    p.add_argument("--report", choices=("nodes", "edges", "residuals", "histogram"), default="nodes")
    p.add_argument("--bins", type=int, default=20, help="bin count for --report histogram")
    p.add_argument("--strict", action="store_true", help="exit 3 when not converged")
    _add_output_option(p)
    p.set_defaults(func=_cmd_tc)

    p = sub.add_parser("centrality", help="classical centrality measures")
    _add_input_options(p, with_family=True)
    p.add_argument("--measures", default="degree,closeness,betweenness",
                   help=f"comma-separated list from: {', '.join(MEASURES)}")
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=100)
    _add_output_option(p)
    p.set_defaults(func=_cmd_centrality)

    p = sub.add_parser("roles", help="core/margin/bridge/mediated classification")
    _add_input_options(p, with_family=True)
    _add_tc_options(p)
    p.add_argument("--core-threshold", type=float, default=0.5)
    _add_output_option(p)
    p.set_defaults(func=_cmd_roles)

    p = sub.add_parser("communities", help="global or local community discovery")
    _add_input_options(p, with_family=True)
    _add_tc_options(p)
    p.add_argument("--core-threshold", type=float, default=0.5)
    p.add_argument("--k", type=int)
    p.add_argument("--mode", choices=(MODE_TRACE, MODE_LITERAL), default=MODE_TRACE)
    p.add_argument("--seed-node")
    p.add_argument("--seed-set", help="comma-separated node ids")
    _add_output_option(p)
    p.set_defaults(func=_cmd_communities)

    p = sub.add_parser("backbone", help="induced subgraph on core nodes")
    _add_input_options(p, with_family=True)
    _add_tc_options(p)
    p.add_argument("--core-threshold", type=float, default=0.5)
    p.add_argument("--format", choices=("edgelist", "dot", "summary"), default="edgelist")
    _add_output_option(p)
    p.set_defaults(func=_cmd_backbone)

    p = sub.add_parser("evolve", help="analyze cumulative snapshot series")
    p.add_argument("snapshots", nargs="+", help="edge-list files in chronological order")
    p.add_argument("--labels", help="comma-separated labels (default: file stems)")
    p.add_argument("--directed", action="store_true")
    _add_tc_options(p)
    p.add_argument("--core-threshold", type=float, default=0.5)
    _add_output_option(p)
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("ingest", help="build networks from JSON-lines records")
    p.add_argument("--records", default="-", help="records file, or - for stdin")
    p.add_argument("--build", choices=("coauthor", "citation", "hetero"), default="coauthor")
    p.add_argument("--strict", action="store_true", help="reject order violations instead of dropping")
    p.add_argument("--cumulative-by-year", metavar="DIR",
                   help="write cumulative coauthor snapshots into DIR, one per year")
    _add_output_option(p)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("fixtures", help="emit a built-in test graph")
    p.add_argument("--name", choices=("tree16", "expansion", "clique_bridge"), required=True)
    p.add_argument("--weights", action="store_true", help="emit the expansion fixture's weights")
    _add_output_option(p)
    p.set_defaults(func=_cmd_fixtures)

    p = sub.add_parser("table2", help="full measure comparison on the 16-node tree")
    _add_tc_options(p)
    p.add_argument("--damping", type=float, default=0.85)
    _add_output_option(p)
    p.set_defaults(func=_cmd_table2)

    return parser


def main(argv=None) -> int:
    workers = os.environ.get("TCNET_WORKERS")
    if workers is not None and (not workers.isdigit() or int(workers) < 1):
        print(f"ignoring invalid TCNET_WORKERS value {workers!r}", file=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
