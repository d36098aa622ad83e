"""Divide and conquer on a filled middle bucket.

Fixing the vertex set ``X`` of a bucket ``i`` cuts the instance in two: every
component of ``G - X`` lies entirely left or entirely right of ``i``, and the
neighbours of ``X`` on each side must sit in the bucket touching ``i``. Those
neighbours are carried into the side instances as pins.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Literal, Mapping, Sequence

from .arrangement import ApproxResult, BucketArrangement, make_capacity_vector
from .backtrack import SearchStats, check_pins, placements
from .graph import Graph, induced_subgraph, iter_bits

__all__ = [
    "SplitPlan",
    "Window",
    "choose_split_index",
    "decide_dc",
    "decide_bandwidth_window",
    "approx2_dc",
]


@dataclass(frozen=True)
class SplitPlan:
    split_index: int
    left_caps: tuple[int, ...]
    right_caps: tuple[int, ...]


@dataclass(frozen=True)
class Window:
    verdict: Literal["at_most", "at_least"]
    bound: int
    witness: BucketArrangement | None = None


def choose_split_index(caps: Sequence[int]) -> SplitPlan:
    """Bucket whose left and right capacity totals are each at most half the size.

    Among qualifying buckets the most even split wins, then the lowest index.
    """
    if len(caps) < 3:
        raise ValueError("need at least three buckets to split")
    size = sum(caps)
    best = None
    prefix = 0
    for i, c in enumerate(caps):
        suffix = size - prefix - c
        if 2 * prefix <= size and 2 * suffix <= size:
            key = (abs(prefix - suffix), i)
            if best is None or key < best:
                best = key
        prefix += c
    i = best[1]
    return SplitPlan(i, tuple(caps[:i]), tuple(caps[i + 1:]))


def _side_assignments(comps, need_left, need_right):
    """Yield ``(left_mask, right_mask)`` over left/right choices for ``comps``.

    ``comps`` is a list of ``(mask, forced)`` with ``forced`` in {None, "L", "R"};
    components are tried largest first and pruned on remaining side capacity.
    """
    order = sorted(comps, key=lambda c: (-c[0].bit_count(), c[0] & -c[0]))
    sizes = [c[0].bit_count() for c in order]
    remaining = list(itertools.accumulate(reversed(sizes)))[::-1] + [0]

    def rec(idx, left, right, room_l, room_r):
        if idx == len(order):
            if room_l == 0 and room_r == 0:
                yield left, right
            return
        if room_l + room_r != remaining[idx]:
            return
        mask, forced = order[idx]
        size = sizes[idx]
        if forced != "R" and size <= room_l:
            yield from rec(idx + 1, left | mask, right, room_l - size, room_r)
        if forced != "L" and size <= room_r:
            yield from rec(idx + 1, left, right | mask, room_l, room_r - size)

    yield from rec(0, 0, 0, need_left, need_right)


def _dc(g: Graph, verts: int, caps: tuple[int, ...], pins: dict[int, int], base_size: int,
        stats: SearchStats) -> dict[int, int] | None:
    stats.recursions += 1
    assert verts.bit_count() == sum(caps), "side instance size must match its capacities"
    if not caps:
        return {}
    if len(caps) <= 2 or verts.bit_count() <= base_size:
        domains = {v: 1 << b for v, b in pins.items()}
        return next(placements(g, verts, caps, domains, stats), None)

    plan = choose_split_index(caps)
    i = plan.split_index
    k = len(caps)
    required = sum(1 << v for v, b in pins.items() if b == i)
    forbidden = sum(1 << v for v, b in pins.items() if b != i)
    pin_left = sum(1 << v for v, b in pins.items() if b < i)
    pin_right = sum(1 << v for v, b in pins.items() if b > i)
    pool = list(iter_bits(verts & ~required & ~forbidden))
    extra = caps[i] - required.bit_count()
    if extra < 0:
        return None
    bound = (caps[i - 1] if i > 0 else 0) + (caps[i + 1] if i + 1 < k else 0)

    for chosen in itertools.combinations(pool, extra):
        x = required
        for v in chosen:
            x |= 1 << v
        rest = verts & ~x
        near = g.neighbors_of_mask(x) & rest
        comps = []
        touching = 0
        ok = True
        for comp in g.components_mask(rest):
            if comp & near:
                touching += 1
            to_left, to_right = bool(comp & pin_left), bool(comp & pin_right)
            if to_left and to_right:
                ok = False
                break
            comps.append((comp, "L" if to_left else "R" if to_right else None))
        if not ok:
            continue
        if touching > bound:
            stats.component_bound_rejections += 1
            continue
        for left, right in _side_assignments(comps, sum(plan.left_caps), sum(plan.right_caps)):
            left_pins = {v: b for v, b in pins.items() if left >> v & 1}
            right_pins = {v: b - i - 1 for v, b in pins.items() if right >> v & 1}
            clash = False
            for v in iter_bits(near & left):
                if left_pins.setdefault(v, i - 1) != i - 1:
                    clash = True
            for v in iter_bits(near & right):
                if right_pins.setdefault(v, 0) != 0:
                    clash = True
            if clash:
                continue
            sol_left = _dc(g, left, plan.left_caps, left_pins, base_size, stats)
            if sol_left is None:
                continue
            sol_right = _dc(g, right, plan.right_caps, right_pins, base_size, stats)
            if sol_right is None:
                continue
            out = dict(sol_left)
            out.update({v: b + i + 1 for v, b in sol_right.items()})
            out.update({v: i for v in iter_bits(x)})
            return out
    return None


def decide_dc(
    g: Graph,
    caps: Sequence[int],
    pins: Mapping[int, int] | None = None,
    base_size: int | None = None,
    stats: SearchStats | None = None,
) -> tuple[BucketArrangement | None, SearchStats]:
    """Decide whether connected ``g`` has a ``caps``-bucket arrangement honouring ``pins``.

    Recursion stops at instances with at most ``base_size`` vertices (default
    ``ceil(n/4)``) or at most two buckets, which go to the branching search.
    """
    if not g.is_connected():
        raise ValueError("graph must be connected; decide each component separately")
    caps = tuple(caps)
    if sum(caps) != g.n:
        raise ValueError(f"capacity vector size {sum(caps)} != n={g.n}")
    if any(c < 1 for c in caps):
        raise ValueError("capacities must be positive")
    pins = dict(pins or {})
    check_pins(g.n, caps, pins)
    if base_size is None:
        base_size = -(-g.n // 4)
    stats = stats if stats is not None else SearchStats()
    found = _dc(g, g.all_mask, caps, pins, base_size, stats)
    if found is None:
        return None, stats
    return BucketArrangement.from_mapping(found, caps, g.n), stats


def two_bucket_arrangement(n: int, ell: int) -> BucketArrangement:
    """Any split into ``ell`` and ``n - ell`` vertices works when ``ell >= n/2``."""
    caps = (n,) if ell >= n else (ell, n - ell)
    return BucketArrangement(tuple(0 if v < caps[0] else 1 for v in range(n)), caps)


def decide_bandwidth_window(g: Graph, ell: int, style: str = "balanced",
                            stats: SearchStats | None = None) -> Window:
    """Either the bandwidth is at most ``2*ell - 1`` (with witness) or at least ``ell + 1``.

    Disconnected graphs are decided component by component; no witness is
    returned for them.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    stats = stats if stats is not None else SearchStats()
    if not g.is_connected():
        for comp in g.components_mask():
            sub, _ = induced_subgraph(g, iter_bits(comp))
            if decide_bandwidth_window(sub, ell, style, stats).verdict == "at_least":
                return Window("at_least", ell + 1)
        return Window("at_most", 2 * ell - 1)
    if 2 * ell >= g.n:
        return Window("at_most", 2 * ell - 1, two_bucket_arrangement(g.n, ell))
    caps = make_capacity_vector(g.n, ell, style)
    witness, _ = decide_dc(g, caps, stats=stats)
    if witness is None:
        return Window("at_least", ell + 1)
    return Window("at_most", 2 * ell - 1, witness)


def approx2_dc(g: Graph, stats: SearchStats | None = None) -> ApproxResult:
    """The ``ell`` loop of the simple 2-approximation with each decision made by :func:`decide_dc`."""
    if not g.is_connected():
        raise ValueError("graph must be connected")
    stats = stats if stats is not None else SearchStats()
    if g.n == 0:
        return ApproxResult(0, 0, 0)
    for ell in range(1, -(-g.n // 2) + 1):
        caps = make_capacity_vector(g.n, ell, "balanced")
        if len(caps) <= 2:
            witness = two_bucket_arrangement(g.n, ell)
        else:
            witness, _ = decide_dc(g, caps, stats=stats)
        if witness is not None:
            return ApproxResult(ell, ell if g.m else 0, 2 * ell - 1, witness, stats.nodes_visited)
    raise AssertionError("two buckets always admit an arrangement")
