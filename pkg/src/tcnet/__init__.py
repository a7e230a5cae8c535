"""Topological centrality and structure analysis for networks.

The library computes an iterative node-and-edge weighting whose fixed point
ranks nodes by how central they sit in the topology, then derives node roles,
overlapping communities, and core backbones from those weights. A side suite
of classical centrality measures supports head-to-head comparisons, and the
research module builds coauthor/citation networks from bibliographic records.
"""

from .backbone import (
    BackboneReport,
    EvolutionSeries,
    SnapshotRecord,
    cooperation_density,
    density_bounds,
    evolution_csv,
    evolution_series,
    extract_backbone,
)
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
    Community,
    CommunitySet,
    communities_json,
    expand_from_core,
    expansion_trace,
    find_k_communities,
    local_community_of_node,
    local_community_of_set,
    merge_communities,
    nearest_cores,
)
from .generators import (
    GeneratorSpec,
    complete,
    erdos_renyi,
    fixture_clique_bridge,
    fixture_expansion,
    fixture_tree16,
    generate,
    lattice,
    path,
    ring,
    star,
    watts_strogatz,
)
from .graph import (
    Edge,
    Graph,
    GraphError,
    bfs_distances,
    build_graph,
    component_members,
    connected_components,
    format_dot,
    format_edge_list,
    induced_subgraph,
    parse_edge_list,
)
from .research import (
    CitationNetwork,
    MotifCensus,
    PaperRecord,
    ParseResult,
    build_citation_network,
    build_coauthor_network,
    build_heterogeneous_network,
    cumulative_coauthor_snapshots,
    motif_census,
    parse_records,
)
from .roles import (
    BRIDGE,
    CORE,
    MARGIN,
    MEDIATED,
    RoleConfig,
    RoleMap,
    alpha_beta,
    classify_from_weights,
    classify_roles,
)
from .tc import (
    TCConfig,
    TCResult,
    TCState,
    compute_tc,
    log_tc,
    log_tc_histogram,
    tc_step,
    topological_centers,
)

__version__ = "0.1.0"
