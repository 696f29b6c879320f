"""Dry-bulk trade-flow network analytics, backed by the C++ core."""

from drybulknet._core import (  # noqa: F401
    ComputeError,
    DataError,
    FlowTable,
    TradeGraph,
    UsageError,
    assign_quarter,
    assortativity,
    avg_path_length,
    betweenness,
    build_graph,
    centrality_correlations,
    clean_flows,
    degree_centrality,
    diameter,
    duration_stats,
    fit_power_law,
    fit_power_law_histogram,
    generate_fixture,
    global_report,
    gscc,
    louvain,
    modularity,
    network_distance,
    omega,
    parse_flows,
    rewire,
    ring_lattice,
    sigma,
    slice,
    small_world_test,
    strength_centrality,
    temporal_breaks,
    transitions,
    transitivity,
    yoy_volume_change,
)

__all__ = [name for name in dir() if not name.startswith("_")]
