"""Deciders for a constant number of buckets."""

from .dp import Frame, PartialBucketArrangement, dp_extendable, empty_runs, validate_frame
from .produced import enumerate_produced_vectors
from .strategy import MAX_CONSTANT_K, approx2_fast, decide_constant_k, fast_style, per_component

__all__ = [
    "Frame",
    "PartialBucketArrangement",
    "dp_extendable",
    "empty_runs",
    "validate_frame",
    "enumerate_produced_vectors",
    "decide_constant_k",
    "approx2_fast",
    "fast_style",
    "per_component",
    "MAX_CONSTANT_K",
]
