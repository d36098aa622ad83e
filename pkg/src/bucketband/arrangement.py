"""Linear arrangements, capacity vectors and bucket arrangements.

Bucket indices are 0-based throughout the library; ranks of a linear
arrangement are 1-based (``position[v]`` in ``1..n``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Literal, Mapping, Sequence

from .graph import Graph, iter_bits

__all__ = [
    "BucketArrangement",
    "ApproxResult",
    "ArrangementViolation",
    "OracleCapExceeded",
    "arrangement_bandwidth",
    "make_capacity_vector",
    "is_capacity_vector",
    "arrangement_from_buckets",
    "buckets_from_arrangement",
    "validate_bucket_arrangement",
    "exact_bandwidth",
    "DEFAULT_ORACLE_CAP",
]

Style = Literal["balanced", "left_packed"]
DEFAULT_ORACLE_CAP = 12


class ArrangementViolation(ValueError):
    """A bucket or linear arrangement breaks one of its constraints."""


class OracleCapExceeded(ValueError):
    """The exact oracle was asked for a graph above its vertex cap."""


@dataclass(frozen=True)
class BucketArrangement:
    bucket_of: tuple[int, ...]
    caps: tuple[int, ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int], caps: Sequence[int], n: int) -> "BucketArrangement":
        return cls(tuple(mapping[v] for v in range(n)), tuple(caps))

    def buckets(self) -> list[frozenset[int]]:
        out: list[set[int]] = [set() for _ in self.caps]
        for v, b in enumerate(self.bucket_of):
            out[b].add(v)
        return [frozenset(s) for s in out]


@dataclass(frozen=True)
class ApproxResult:
    ell_star: int
    lower: int
    upper: int
    witness: BucketArrangement | None = None
    nodes: int = 0

    @property
    def reported_bandwidth(self) -> int:
        return self.upper


def _check_position(g: Graph, position: Sequence[int]) -> None:
    if len(position) != g.n or sorted(position) != list(range(1, g.n + 1)):
        raise ArrangementViolation("linear arrangement is not a bijection onto 1..n")


def arrangement_bandwidth(g: Graph, position: Sequence[int]) -> int:
    """Maximum stretch ``|L(u) - L(v)|`` over the edges of ``g`` (0 if edgeless)."""
    _check_position(g, position)
    return max((abs(position[u] - position[v]) for u, v in g.edges), default=0)


def make_capacity_vector(n: int, ell: int, style: Style = "balanced") -> tuple[int, ...]:
    """The ``(n, ell)``-capacity vector: ``ceil(n/ell)`` buckets, interior ones of size ``ell``.

    ``left_packed`` puts ``ell`` in the first bucket; ``balanced`` splits the two
    end capacities as evenly as possible (first >= last).
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 1 <= ell <= -(-n // 2):
        raise ValueError(f"ell must lie in 1..ceil(n/2)={-(-n // 2)}, got {ell}")
    if style not in ("balanced", "left_packed"):
        raise ValueError(f"unknown style {style!r}")
    k = -(-n // ell)
    if k == 1:
        return (n,)
    ends = n - (k - 2) * ell
    # k = ceil(n/ell) gives ell < ends <= 2*ell, so both end entries stay in 1..ell
    if style == "left_packed":
        first, last = ell, ends - ell
    else:
        first, last = (ends + 1) // 2, ends // 2
    return (first,) + (ell,) * (k - 2) + (last,)


def is_capacity_vector(caps: Sequence[int], n: int, ell: int) -> bool:
    k = -(-n // ell)
    return (
        len(caps) == k
        and sum(caps) == n
        and all(1 <= c <= ell for c in caps)
        and all(c == ell for c in caps[1:-1])
    )


def validate_bucket_arrangement(g: Graph, b: BucketArrangement) -> str | None:
    """Return ``None`` if ``b`` is a valid bucket arrangement of ``g``, else the first problem found."""
    if len(b.bucket_of) != g.n:
        return f"arrangement covers {len(b.bucket_of)} vertices, graph has {g.n}"
    k = len(b.caps)
    counts = [0] * k
    for v, idx in enumerate(b.bucket_of):
        if not 0 <= idx < k:
            return f"vertex {v} placed in nonexistent bucket {idx}"
        counts[idx] += 1
    for idx, (have, want) in enumerate(zip(counts, b.caps)):
        if have != want:
            return f"capacity: bucket {idx} holds {have} vertices, capacity is {want}"
    for u, v in sorted(g.edges):
        if abs(b.bucket_of[u] - b.bucket_of[v]) > 1:
            return f"locality: edge ({u}, {v}) spans buckets {b.bucket_of[u]} and {b.bucket_of[v]}"
    return None


def arrangement_from_buckets(g: Graph, b: BucketArrangement) -> tuple[int, ...]:
    """Number vertices bucket by bucket, ascending vertex id inside a bucket."""
    problem = validate_bucket_arrangement(g, b)
    if problem:
        raise ArrangementViolation(problem)
    order = sorted(range(g.n), key=lambda v: (b.bucket_of[v], v))
    position = [0] * g.n
    for rank, v in enumerate(order, start=1):
        position[v] = rank
    return tuple(position)


def buckets_from_arrangement(g: Graph, position: Sequence[int], caps: Sequence[int]) -> BucketArrangement:
    """Cut a linear arrangement into consecutive buckets of the given capacities."""
    _check_position(g, position)
    if sum(caps) != g.n:
        raise ValueError(f"capacity vector size {sum(caps)} != n={g.n}")
    bucket_at_rank = [idx for idx, c in enumerate(caps) for _ in range(c)]
    b = BucketArrangement(tuple(bucket_at_rank[position[v] - 1] for v in range(g.n)), tuple(caps))
    problem = validate_bucket_arrangement(g, b)
    if problem:
        raise ArrangementViolation(problem)
    return b


# -- exact oracle -------------------------------------------------------------


def _bfs_order(nbr: list[int], m: int, start: int) -> list[int]:
    seen = 1 << start
    order = [start]
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in iter_bits(nbr[v] & ~seen):
            seen |= 1 << w
            order.append(w)
            queue.append(w)
    return order


def _eccentricity(nbr: list[int], start: int) -> int:
    seen = frontier = 1 << start
    depth = 0
    while True:
        grow = 0
        for v in iter_bits(frontier):
            grow |= nbr[v]
        frontier = grow & ~seen
        if not frontier:
            return depth
        seen |= frontier
        depth += 1


def _order_bandwidth(nbr: list[int], order: list[int]) -> int:
    pos = {v: i for i, v in enumerate(order)}
    return max((abs(pos[v] - pos[w]) for v in order for w in iter_bits(nbr[v])), default=0)


def _exact_connected(nbr: list[int], m: int) -> tuple[int, list[int]]:
    """Branch and bound over position prefixes of a connected graph on ``0..m-1``."""
    if m == 1:
        return 0, [0]
    max_deg = max(x.bit_count() for x in nbr)
    diam = max(_eccentricity(nbr, v) for v in range(m))
    lower = max(-(-max_deg // 2), -(-(m - 1) // diam))

    start = min(range(m), key=lambda v: (nbr[v].bit_count(), v))
    best_order = _bfs_order(nbr, m, start)
    best = _order_bandwidth(nbr, best_order)
    if best <= lower:
        return best, best_order

    order: list[int] = []
    pos = [-1] * m
    cutoff = best - 1

    def prefix_ok(placed: int) -> bool:
        # unplaced neighbours of the vertices at positions <= q must land at positions <= q + cutoff
        p = len(order)
        pending = 0
        for q, v in enumerate(order):
            pending |= nbr[v] & ~placed
            if pending and pending.bit_count() > q + cutoff - p + 1:
                return False
        return True

    def dfs(placed: int) -> bool:
        nonlocal best, best_order, cutoff
        p = len(order)
        if p == m:
            best = _order_bandwidth(nbr, order)
            best_order = list(order)
            cutoff = best - 1
            return best <= lower
        for v in range(m):
            if placed >> v & 1:
                continue
            if any(p - pos[u] > cutoff for u in iter_bits(nbr[v] & placed)):
                continue
            order.append(v)
            pos[v] = p
            now = placed | (1 << v)
            if prefix_ok(now) and dfs(now):
                return True
            order.pop()
            pos[v] = -1
        return False

    dfs(0)
    return best, best_order


def exact_bandwidth(g: Graph, cap: int = DEFAULT_ORACLE_CAP) -> tuple[int, tuple[int, ...]]:
    """Exact bandwidth and an optimal linear arrangement, by branch and bound.

    Refuses graphs with more than ``cap`` vertices.
    """
    if g.n > cap:
        raise OracleCapExceeded(f"exact oracle capped at {cap} vertices, graph has {g.n}")
    width = 0
    order: list[int] = []
    for comp in g.components_mask():
        verts = list(iter_bits(comp))
        local = {v: i for i, v in enumerate(verts)}
        nbr = [sum(1 << local[w] for w in iter_bits(g.nbr[v])) for v in verts]
        bw, local_order = _exact_connected(nbr, len(verts))
        width = max(width, bw)
        order.extend(verts[i] for i in local_order)
    position = [0] * g.n
    for rank, v in enumerate(order, start=1):
        position[v] = rank
    return width, tuple(position)
