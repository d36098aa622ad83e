"""Polynomial-space 2-approximation of graph bandwidth via bucket arrangements."""

from .arrangement import (
    ApproxResult,
    ArrangementViolation,
    BucketArrangement,
    OracleCapExceeded,
    arrangement_bandwidth,
    arrangement_from_buckets,
    buckets_from_arrangement,
    exact_bandwidth,
    make_capacity_vector,
    validate_bucket_arrangement,
)
from .backtrack import SearchStats, approx2_backtrack, decide_backtrack
from .constant_k import approx2_fast, decide_constant_k, dp_extendable, enumerate_produced_vectors
from .divide import approx2_dc, choose_split_index, decide_bandwidth_window, decide_dc
from .driver import approximate
from .graph import (
    FAMILIES,
    Graph,
    GraphParseError,
    connected_components,
    format_graph,
    generate,
    induced_subgraph,
    open_neighborhood,
    parse_graph,
    split_small_large,
)

__all__ = [
    "ApproxResult",
    "ArrangementViolation",
    "BucketArrangement",
    "OracleCapExceeded",
    "arrangement_bandwidth",
    "arrangement_from_buckets",
    "buckets_from_arrangement",
    "exact_bandwidth",
    "make_capacity_vector",
    "validate_bucket_arrangement",
    "SearchStats",
    "approx2_backtrack",
    "decide_backtrack",
    "approx2_fast",
    "decide_constant_k",
    "dp_extendable",
    "enumerate_produced_vectors",
    "approx2_dc",
    "choose_split_index",
    "decide_bandwidth_window",
    "decide_dc",
    "approximate",
    "FAMILIES",
    "Graph",
    "GraphParseError",
    "connected_components",
    "format_graph",
    "generate",
    "induced_subgraph",
    "open_neighborhood",
    "parse_graph",
    "split_small_large",
]
