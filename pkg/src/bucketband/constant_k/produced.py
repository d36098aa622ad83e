"""Residual capacity vectors left behind by the small components around a filled bucket."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..backtrack import SearchStats, placements
from ..graph import Graph, iter_bits, small_threshold, to_mask

__all__ = ["enumerate_produced_vectors", "produce"]


def produce(
    g: Graph,
    comps: Sequence[int],
    x: int,
    j: int,
    free: Sequence[int],
    stats: SearchStats,
) -> dict[tuple[int, ...], dict[int, int]]:
    """Map each reachable residual vector to one placement of ``comps`` realising it.

    ``free`` holds the capacity still available per bucket and must already be
    0 at ``j``, where ``x`` sits. Components are folded in one at a time and
    the residual set is deduplicated after each.
    """
    k = len(free)
    near_x = g.neighbors_of_mask(x)
    beside = 0
    if j > 0:
        beside |= 1 << (j - 1)
    if j + 1 < k:
        beside |= 1 << (j + 1)
    residuals: dict[tuple[int, ...], dict[int, int]] = {tuple(free): {}}
    for comp in comps:
        # which usage vectors this component can realise; capacity only ever caps usage,
        # so filtering against each residual below is the same as re-running per residual
        usages: dict[tuple[int, ...], dict[int, int]] = {}
        domains = {v: beside for v in iter_bits(comp & near_x)}
        for found in placements(g, comp, free, domains, stats):
            used = [0] * k
            for b in found.values():
                used[b] += 1
            usages.setdefault(tuple(used), found)
        nxt: dict[tuple[int, ...], dict[int, int]] = {}
        for res, placed in residuals.items():
            for used, found in usages.items():
                left = tuple(a - b for a, b in zip(res, used))
                if min(left) < 0 or left in nxt:
                    continue
                merged = dict(placed)
                merged.update(found)
                nxt[left] = merged
        residuals = nxt
        if not residuals:
            break
    return residuals


def enumerate_produced_vectors(
    g: Graph, caps: Sequence[int], j: int, x: Iterable[int], stats: SearchStats | None = None
) -> frozenset[tuple[int, ...]]:
    """All capacity vectors produced by partial arrangements of the small components of ``g - x``
    together with ``x`` fixed in bucket ``j``.

    Components with at most ``floor(sqrt(n))`` vertices count as small.
    """
    caps = tuple(caps)
    xm = to_mask(x)
    if not 0 <= j < len(caps):
        raise ValueError(f"bucket {j} out of range")
    if xm.bit_count() != caps[j]:
        raise ValueError(f"|x| = {xm.bit_count()} but bucket {j} has capacity {caps[j]}")
    if xm & ~g.all_mask:
        raise ValueError("x contains vertices outside the graph")
    limit = small_threshold(g.n)
    small = [c for c in g.components_mask(g.all_mask & ~xm) if c.bit_count() <= limit]
    free = list(caps)
    free[j] = 0
    return frozenset(produce(g, small, xm, j, free, stats if stats is not None else SearchStats()))
