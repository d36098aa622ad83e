"""Per-bucket-count strategies for 3 to 26 buckets, and the fast 2-approximation driver.

Every strategy works on a :class:`Frame` and keeps filling empty buckets until no
three consecutive empty buckets remain, then hands over to :func:`extend`.
Two ways of filling a run of empty buckets are used:

``fill``
    enumerate the vertex set of one bucket (or of a jointly full pair) and
    continue on the same frame. Used for runs of 3 to 6 buckets when the
    original instance has at most 12 buckets.

``split``
    enumerate the middle bucket, place the small components of the rest via
    residual capacity vectors, send every remaining component left or right
    and solve the two sides as independent frames.

With the run-length rules below this reproduces the case analysis by the
number of buckets ``k``: one filled end bucket for ``k = 3``, the third bucket
for ``k = 4, 5``, a jointly full middle pair for ``k = 6``, a middle split with
sides handled as the 3/4/5/6-bucket cases for ``7 <= k <= 12``, and repeated
middle splits for ``13 <= k <= 26``.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from ..arrangement import ApproxResult, BucketArrangement, make_capacity_vector
from ..backtrack import SearchStats
from ..divide import _side_assignments, decide_dc, two_bucket_arrangement
from ..graph import Graph, induced_subgraph, iter_bits, small_threshold
from .dp import Frame, empty_runs, extend
from .produced import produce

__all__ = ["decide_constant_k", "approx2_fast", "fast_style", "MAX_CONSTANT_K"]

MAX_CONSTANT_K = 26
LEFT_PACKED_K = (8, 10, 12)


def fast_style(k: int) -> str:
    return "left_packed" if k in LEFT_PACKED_K else "balanced"


def _reachable(frame: Frame, lo: int, hi: int) -> int:
    """Placed vertices that a vertex in buckets ``lo..hi`` may be adjacent to."""
    out = 0
    for b, m in frame.full.items():
        if lo - 1 <= b <= hi + 1:
            out |= m
    for j, m in frame.joint.items():
        if j + 1 >= lo - 1 and j <= hi + 1:
            out |= m
    return out


def _fill_target(frame: Frame, run: tuple[int, ...]) -> tuple[int, int]:
    """Bucket range ``(lo, hi)`` to fill in a run of 3 to 6 empty buckets."""
    if len(run) == 6:
        return run[2], run[3]
    if len(run) in (4, 5):
        return run[2], run[2]
    first, last = run[0], run[-1]
    bounded_left = first > 0
    bounded_right = last < len(frame.caps) - 1
    # fill the end away from an already filled neighbour
    if bounded_left and not bounded_right:
        return last, last
    if bounded_right and not bounded_left:
        return first, first
    if frame.caps[first] < frame.caps[last]:
        return first, first
    return last, last


def _fill(g: Graph, frame: Frame, run, policy: str, stats: SearchStats):
    lo, hi = _fill_target(frame, run)
    size = sum(frame.caps[lo:hi + 1])
    assigned = frame.assigned()
    outside = assigned & ~_reachable(frame, lo, hi)
    status = frame.status()
    # unplaced neighbours of X can only go to an empty bucket right next to it
    room = sum(frame.caps[b] for b in (lo - 1, hi + 1) if 0 <= b < len(status) and status[b] == "E")
    rest = frame.verts & ~assigned
    for chosen in itertools.combinations(list(iter_bits(rest)), size):
        x = 0
        for v in chosen:
            x |= 1 << v
        near = g.neighbors_of_mask(x)
        if near & outside or (near & rest & ~x).bit_count() > room:
            continue
        full, joint = dict(frame.full), dict(frame.joint)
        if lo == hi:
            full[lo] = x
        else:
            joint[lo] = x
        found = _solve(g, Frame(frame.verts, frame.caps, full, joint), policy, stats)
        if found is not None:
            return found
    return None


def _sub_frame(frame: Frame, lo: int, hi: int, x: int, i: int, residual, side_verts: int) -> Frame:
    """Frame on buckets ``lo..hi`` (re-indexed from 0) after fixing ``x`` in bucket ``i``."""
    status = frame.status()
    caps, full, joint = [], {}, {}
    verts = side_verts | x
    for b in range(lo, hi + 1):
        nb = b - lo
        if b == i:
            caps.append(frame.caps[b])
            full[nb] = x
        elif status[b] == "E":
            caps.append(residual[b])
            if residual[b] == 0:
                full[nb] = 0
        else:
            caps.append(frame.caps[b])
            if b in frame.full:
                full[nb] = frame.full[b]
                verts |= frame.full[b]
            if b in frame.joint:
                joint[nb] = frame.joint[b]
                verts |= frame.joint[b]
    return Frame(verts, tuple(caps), full, joint)


def _split(g: Graph, frame: Frame, run, policy: str, stats: SearchStats):
    caps = frame.caps
    k = len(caps)
    i = run[(len(run) - 1) // 2]
    status = frame.status()
    assigned = frame.assigned()
    unassigned = frame.verts & ~assigned
    left_placed = right_placed = 0
    for b, m in frame.full.items():
        if b < i:
            left_placed |= m
        else:
            right_placed |= m
    for j, m in frame.joint.items():
        if j < i:
            left_placed |= m
        else:
            right_placed |= m
    limit = small_threshold(frame.verts.bit_count())
    free = [c if s == "E" else 0 for c, s in zip(caps, status)]
    free[i] = 0
    # both neighbours of a middle bucket are empty
    bound = caps[i - 1] + caps[i + 1]

    for chosen in itertools.combinations(list(iter_bits(unassigned)), caps[i]):
        x = 0
        for v in chosen:
            x |= 1 << v
        near = g.neighbors_of_mask(x)
        if near & assigned:
            continue
        rest = unassigned & ~x
        near &= rest
        if near.bit_count() > bound:
            continue
        small, others = [], []
        touching = 0
        ok = True
        for comp in g.components_mask(rest):
            if comp & near:
                touching += 1
            placed_nbrs = g.neighbors_of_mask(comp) & assigned
            to_left = bool(placed_nbrs & left_placed)
            to_right = bool(placed_nbrs & right_placed)
            if to_left and to_right:
                ok = False
                break
            if not placed_nbrs and comp.bit_count() <= limit:
                small.append(comp)
            else:
                others.append((comp, "L" if to_left else "R" if to_right else None))
        if not ok:
            continue
        if touching > bound:
            stats.component_bound_rejections += 1
            continue
        residuals = produce(g, small, x, i, free, stats)
        for residual in sorted(residuals):
            need_left = sum(residual[:i])
            need_right = sum(residual[i + 1:])
            for left, right in _side_assignments(others, need_left, need_right):
                stats.recursions += 1
                left_frame = _sub_frame(frame, 0, i, x, i, residual, left)
                found_left = _solve(g, left_frame, policy, stats)
                if found_left is None:
                    continue
                right_frame = _sub_frame(frame, i, k - 1, x, i, residual, right)
                found_right = _solve(g, right_frame, policy, stats)
                if found_right is None:
                    continue
                out = dict(found_left)
                out.update({v: b + i for v, b in found_right.items()})
                out.update(residuals[residual])
                return out
    return None


def _solve(g: Graph, frame: Frame, policy: str, stats: SearchStats) -> dict[int, int] | None:
    assert frame.verts.bit_count() == sum(frame.caps), "frame size must match its capacities"
    runs = empty_runs(frame.status())
    run = max(runs, key=len, default=())
    if len(run) <= 2:
        return extend(g, frame, stats)
    if policy == "fill" and len(run) <= 6:
        return _fill(g, frame, run, policy, stats)
    return _split(g, frame, run, policy, stats)


def decide_constant_k(
    g: Graph, caps: Sequence[int], stats: SearchStats | None = None
) -> BucketArrangement | None:
    """Decide a ``caps``-bucket arrangement of connected ``g`` with the strategy for ``len(caps)`` buckets."""
    caps = tuple(caps)
    if not 3 <= len(caps) <= MAX_CONSTANT_K:
        raise ValueError(f"constant-k strategies cover 3..{MAX_CONSTANT_K} buckets, got {len(caps)}")
    if sum(caps) != g.n:
        raise ValueError(f"capacity vector size {sum(caps)} != n={g.n}")
    if any(c < 1 for c in caps):
        raise ValueError("capacities must be positive")
    if not g.is_connected():
        raise ValueError("graph must be connected; decide each component separately")
    stats = stats if stats is not None else SearchStats()
    policy = "split" if len(caps) >= 13 else "fill"
    found = _solve(g, Frame(g.all_mask, caps), policy, stats)
    if found is None:
        return None
    return BucketArrangement.from_mapping(found, caps, g.n)


def _fast_connected(g: Graph, stats: SearchStats) -> tuple[int, BucketArrangement]:
    for ell in range(1, -(-g.n // 2) + 1):
        k = -(-g.n // ell)
        if k <= 2:
            return ell, two_bucket_arrangement(g.n, ell)
        caps = make_capacity_vector(g.n, ell, fast_style(k))
        if k <= MAX_CONSTANT_K:
            witness = decide_constant_k(g, caps, stats)
        else:
            witness, _ = decide_dc(g, caps, stats=stats)
        if witness is not None:
            return ell, witness
    raise AssertionError("two buckets always admit an arrangement")


def per_component(g: Graph, solve) -> ApproxResult:
    """Run ``solve(component) -> (ell, witness)`` on every component and combine.

    The reported bound uses the largest per-component ``ell``; the combined
    witness concatenates the component arrangements bucket-wise.
    """
    if g.n == 0:
        return ApproxResult(0, 0, 0)
    ell_max = 0
    bucket_of = [0] * g.n
    caps: list[int] = []
    for comp in g.components_mask():
        sub, remap = induced_subgraph(g, iter_bits(comp))
        ell, witness = solve(sub)
        ell_max = max(ell_max, ell)
        offset = len(caps)
        for old, new in remap.items():
            bucket_of[old] = witness.bucket_of[new] + offset
        caps.extend(witness.caps)
    lower = ell_max if g.m else 0
    return ApproxResult(ell_max, lower, 2 * ell_max - 1, BucketArrangement(tuple(bucket_of), tuple(caps)))


def approx2_fast(g: Graph, stats: SearchStats | None = None) -> ApproxResult:
    """2-approximate the bandwidth of ``g`` (any graph, connected or not)."""
    stats = stats if stats is not None else SearchStats()
    result = per_component(g, lambda sub: _fast_connected(sub, stats))
    return ApproxResult(result.ell_star, result.lower, result.upper, result.witness, stats.nodes_visited)
