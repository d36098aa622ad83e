"""One entry point for the three 2-approximation drivers."""

from __future__ import annotations

from .arrangement import ApproxResult
from .backtrack import SearchStats, approx2_backtrack
from .constant_k import approx2_fast, per_component
from .divide import approx2_dc

__all__ = ["ALGORITHMS", "approximate"]

ALGORITHMS = ("fast", "backtrack", "dc")


def approximate(g, algo: str = "fast", stats: SearchStats | None = None) -> ApproxResult:
    """Run driver ``algo`` on ``g``; disconnected graphs report the largest per-component ``ell``."""
    stats = stats if stats is not None else SearchStats()
    if algo == "fast":
        return approx2_fast(g, stats)
    if algo == "backtrack":
        single = approx2_backtrack
    elif algo == "dc":
        single = approx2_dc
    else:
        raise ValueError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")

    def solve(sub):
        r = single(sub, stats)
        return r.ell_star, r.witness

    result = per_component(g, solve)
    return ApproxResult(result.ell_star, result.lower, result.upper, result.witness, stats.nodes_visited)
