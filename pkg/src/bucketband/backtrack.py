"""Three-way branching search for C-bucket arrangements and the simple 2-approximation.

Starting from one vertex placed in some bucket, every further vertex is
chosen among those with an already placed neighbour, so it has at most three
candidate buckets (the neighbour's bucket and the two next to it).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .arrangement import ApproxResult, BucketArrangement, make_capacity_vector
from .graph import Graph, iter_bits

__all__ = ["SearchStats", "decide_backtrack", "approx2_backtrack", "check_pins"]


@dataclass
class SearchStats:
    nodes_visited: int = 0
    max_depth: int = 0
    # instrumentation used by the divide-and-conquer and dynamic-programming deciders
    dp_states: int = 0
    dp_bound_violations: int = 0
    component_bound_rejections: int = 0
    recursions: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.nodes_visited += other.nodes_visited
        self.max_depth = max(self.max_depth, other.max_depth)
        self.dp_states = max(self.dp_states, other.dp_states)
        self.dp_bound_violations += other.dp_bound_violations
        self.component_bound_rejections += other.component_bound_rejections
        self.recursions += other.recursions


def _window(b: int) -> int:
    """Bitmask of buckets ``b-1, b, b+1``."""
    return (0b111 << b) >> 1


def placements(
    g: Graph,
    verts: int,
    caps: Sequence[int],
    domains: Mapping[int, int],
    stats: SearchStats,
) -> Iterator[dict[int, int]]:
    """Yield every placement of the vertices in mask ``verts`` into buckets.

    ``domains`` maps a vertex to a bitmask of buckets it may use (missing means
    unrestricted). Each bucket ``i`` receives at most ``caps[i]`` vertices; when
    ``sum(caps)`` equals the number of vertices, every yielded placement fills
    all buckets exactly. Edges leaving ``verts`` are ignored.

    The vertex to branch on is an unplaced one with the most placed neighbours
    (lowest id on ties). When no unplaced vertex touches a placed one, the next
    root is the lowest restricted vertex, else the lowest vertex.
    """
    k = len(caps)
    everything = (1 << k) - 1
    nbr = g.nbr
    order = list(iter_bits(verts))
    total = len(order)
    dom = {v: domains.get(v, everything) & everything for v in order}
    counts = [0] * k
    full = 0
    for i, c in enumerate(caps):
        if c <= 0:
            full |= 1 << i
    if any(dom[v] & ~full == 0 for v in order):
        return
    bucket: dict[int, int] = {}
    placed = 0

    def pick() -> int:
        best, best_count = -1, 0
        for v in order:
            if placed >> v & 1:
                continue
            c = (nbr[v] & placed).bit_count()
            if c > best_count:
                best, best_count = v, c
        if best >= 0:
            return best
        restricted = [v for v in order if not placed >> v & 1 and dom[v] != everything]
        if restricted:
            return restricted[0]
        return next(v for v in order if not placed >> v & 1)

    def rec(depth: int) -> Iterator[dict[int, int]]:
        nonlocal placed, full
        stats.nodes_visited += 1
        if depth > stats.max_depth:
            stats.max_depth = depth
        if depth == total:
            yield dict(bucket)
            return
        v = pick()
        for b in iter_bits(dom[v] & ~full):
            bucket[v] = b
            placed |= 1 << v
            counts[b] += 1
            was_full = full
            if counts[b] >= caps[b]:
                full |= 1 << b
            allowed = _window(b)
            saved = []
            ok = True
            for w in iter_bits(nbr[v] & verts & ~placed):
                narrowed = dom[w] & allowed
                if narrowed != dom[w]:
                    saved.append((w, dom[w]))
                    dom[w] = narrowed
                if narrowed & ~full == 0:
                    ok = False
                    break
            if ok:
                yield from rec(depth + 1)
            for w, d in saved:
                dom[w] = d
            full = was_full
            counts[b] -= 1
            placed &= ~(1 << v)
            del bucket[v]

    yield from rec(0)


def check_pins(n: int, caps: Sequence[int], pins: Mapping[int, int]) -> None:
    per_bucket = [0] * len(caps)
    for v, b in pins.items():
        if not 0 <= v < n:
            raise ValueError(f"pinned vertex {v} out of range")
        if not 0 <= b < len(caps):
            raise ValueError(f"vertex {v} pinned to nonexistent bucket {b}")
        per_bucket[b] += 1
    for b, (have, cap) in enumerate(zip(per_bucket, caps)):
        if have > cap:
            raise ValueError(f"{have} vertices pinned to bucket {b} of capacity {cap}")


def _check_instance(g: Graph, caps: Sequence[int], pins: Mapping[int, int]) -> None:
    if not g.is_connected():
        raise ValueError("graph must be connected; decide each component separately")
    if sum(caps) != g.n:
        raise ValueError(f"capacity vector size {sum(caps)} != n={g.n}")
    if any(c < 1 for c in caps):
        raise ValueError("capacities must be positive")
    check_pins(g.n, caps, pins)


def decide_backtrack(
    g: Graph,
    caps: Sequence[int],
    pins: Mapping[int, int] | None = None,
    stats: SearchStats | None = None,
) -> tuple[BucketArrangement | None, SearchStats]:
    """Find a ``caps``-bucket arrangement of connected ``g`` honouring ``pins``, or ``None``."""
    pins = dict(pins or {})
    _check_instance(g, caps, pins)
    stats = stats if stats is not None else SearchStats()
    domains = {v: 1 << b for v, b in pins.items()}
    for found in placements(g, g.all_mask, caps, domains, stats):
        return BucketArrangement.from_mapping(found, caps, g.n), stats
    return None, stats


def approx2_backtrack(g: Graph, stats: SearchStats | None = None) -> ApproxResult:
    """Smallest ``ell`` whose balanced vector admits an arrangement; reports ``2*ell - 1``."""
    if not g.is_connected():
        raise ValueError("graph must be connected")
    stats = stats if stats is not None else SearchStats()
    if g.n == 0:
        return ApproxResult(0, 0, 0)
    for ell in range(1, -(-g.n // 2) + 1):
        caps = make_capacity_vector(g.n, ell, "balanced")
        witness, _ = decide_backtrack(g, caps, stats=stats)
        if witness is not None:
            lower = ell if g.m else 0
            return ApproxResult(ell, lower, 2 * ell - 1, witness, stats.nodes_visited)
    raise AssertionError("two buckets always admit an arrangement")
