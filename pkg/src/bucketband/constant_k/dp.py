"""Completing a partial bucket arrangement by dynamic programming over components.

The partial arrangement has full buckets, jointly full pairs of consecutive
buckets, and empty buckets, with no three consecutive empty buckets. Every
component of the unplaced vertices therefore fits in one run of at most two
empty buckets. Its assigned neighbours decide which runs it may use and, inside
a two-bucket run, which of its vertices are pushed to the left or right bucket.

Components that share a neighbour in a jointly full pair must sit on the same
side of that pair, so they are merged into one group before the table is
built. Distinct groups then touch disjoint vertices of every pair and all
counters below add up exactly.

Table entries are keyed by a tuple of counters:

* one fill counter per single empty bucket,
* ``(total, pushed_left, pushed_right)`` per two-bucket empty run,
* ``(forced_left, forced_right)`` per jointly full pair, counting pair
  vertices whose bucket is already determined by a neighbour.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..arrangement import BucketArrangement
from ..backtrack import SearchStats
from ..graph import Graph, iter_bits, to_mask

__all__ = ["Frame", "PartialBucketArrangement", "dp_extendable", "empty_runs", "extend"]


@dataclass
class Frame:
    """A bucket instance on a vertex subset: ``full`` and ``joint`` map bucket to vertex mask.

    ``joint`` is keyed by the left bucket of the pair. Buckets in neither are empty.
    """

    verts: int
    caps: tuple[int, ...]
    full: dict[int, int] = field(default_factory=dict)
    joint: dict[int, int] = field(default_factory=dict)

    def status(self) -> list[str]:
        st = ["E"] * len(self.caps)
        for b in self.full:
            st[b] = "F"
        for j in self.joint:
            st[j] = st[j + 1] = "J"
        return st

    def assigned(self) -> int:
        out = 0
        for m in self.full.values():
            out |= m
        for m in self.joint.values():
            out |= m
        return out


@dataclass(frozen=True)
class PartialBucketArrangement:
    capacity: tuple[int, ...]
    full: Mapping[int, frozenset[int]] = field(default_factory=dict)
    joint: Mapping[int, frozenset[int]] = field(default_factory=dict)

    @property
    def assigned(self) -> frozenset[int]:
        out: set[int] = set()
        for s in list(self.full.values()) + list(self.joint.values()):
            out |= s
        return frozenset(out)

    def bucket_status(self) -> list[str]:
        return Frame(0, self.capacity, dict.fromkeys(self.full, 0), dict.fromkeys(self.joint, 0)).status()


def empty_runs(status: Sequence[str]) -> list[tuple[int, ...]]:
    runs, cur = [], []
    for b, s in enumerate(status):
        if s == "E":
            cur.append(b)
        elif cur:
            runs.append(tuple(cur))
            cur = []
    if cur:
        runs.append(tuple(cur))
    return runs


def validate_frame(frame: Frame) -> None:
    k = len(frame.caps)
    seen = 0
    claimed = [False] * k
    for b, m in frame.full.items():
        if not 0 <= b < k:
            raise ValueError(f"full bucket {b} out of range")
        if m.bit_count() != frame.caps[b]:
            raise ValueError(f"full bucket {b} holds {m.bit_count()} vertices, capacity {frame.caps[b]}")
        claimed[b] = True
        if seen & m:
            raise ValueError("a vertex is placed twice")
        seen |= m
    for j, m in frame.joint.items():
        if not 0 <= j < k - 1:
            raise ValueError(f"jointly full pair at {j} out of range")
        if claimed[j] or claimed[j + 1]:
            raise ValueError(f"bucket pair ({j}, {j + 1}) overlaps another filled bucket")
        if m.bit_count() != frame.caps[j] + frame.caps[j + 1]:
            raise ValueError(f"jointly full pair ({j}, {j + 1}) has the wrong number of vertices")
        claimed[j] = claimed[j + 1] = True
        if seen & m:
            raise ValueError("a vertex is placed twice")
        seen |= m
    if seen & ~frame.verts:
        raise ValueError("placed vertex outside the instance")
    if any(len(r) > 2 for r in empty_runs(frame.status())):
        raise ValueError("three consecutive empty buckets")
    free = sum(c for c, s in zip(frame.caps, frame.status()) if s == "E")
    if free != (frame.verts & ~seen).bit_count():
        raise ValueError("empty capacity does not match the number of unplaced vertices")


class _Union:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def extend(g: Graph, frame: Frame, stats: SearchStats) -> dict[int, int] | None:
    """Complete ``frame`` to a full placement ``vertex -> bucket``, or ``None``.

    ``frame`` must satisfy :func:`validate_frame`.
    """
    caps = frame.caps
    k = len(caps)
    nbr = g.nbr
    status = frame.status()
    assigned = frame.assigned()
    unassigned = frame.verts & ~assigned

    span: dict[int, tuple[int, int]] = {}
    for b, m in frame.full.items():
        for v in iter_bits(m):
            span[v] = (b, b)
    for j, m in frame.joint.items():
        for v in iter_bits(m):
            span[v] = (j, j + 1)
    pair_of = {v: j for j, m in frame.joint.items() for v in iter_bits(m)}

    # constraints among placed vertices
    pre_left = dict.fromkeys(frame.joint, 0)
    pre_right = dict.fromkeys(frame.joint, 0)
    for v in iter_bits(assigned):
        a, a2 = span[v]
        for u in iter_bits(nbr[v] & assigned):
            c, c2 = span[u]
            if a == a2 and c == c2:
                if abs(a - c) > 1:
                    return None
            elif a == a2:
                # u in pair (c, c+1), v fixed at a
                if a == c - 1:
                    pre_left[c] |= 1 << u
                elif a == c + 2:
                    pre_right[c] |= 1 << u
                else:
                    return None
            elif c == c2:
                continue  # handled from u's side
            elif a != c:
                if c == a + 2:
                    pre_right[a] |= 1 << v
                elif c == a - 2:
                    pre_left[a] |= 1 << v
                else:
                    return None
    for j in frame.joint:
        if pre_left[j] & pre_right[j]:
            return None
        if pre_left[j].bit_count() > caps[j] or pre_right[j].bit_count() > caps[j + 1]:
            return None

    runs = empty_runs(status)
    assert all(len(r) <= 2 for r in runs), "three consecutive empty buckets"

    # counter layout
    slots = []  # upper bounds
    run_slot = []
    for r in runs:
        run_slot.append(len(slots))
        if len(r) == 1:
            slots.append(caps[r[0]])
        else:
            slots.extend([caps[r[0]] + caps[r[1]], caps[r[0]], caps[r[1]]])
    joint_slot = {}
    for j in sorted(frame.joint):
        joint_slot[j] = len(slots)
        slots.extend([caps[j], caps[j + 1]])
    start = [0] * len(slots)
    for j, s in joint_slot.items():
        start[s] = pre_left[j].bit_count()
        start[s + 1] = pre_right[j].bit_count()

    # group components sharing a neighbour inside a jointly full pair
    comps = g.components_mask(unassigned)
    uf = _Union(len(comps))
    owner: dict[int, int] = {}
    for ci, comp in enumerate(comps):
        for u in iter_bits(g.neighbors_of_mask(comp) & assigned):
            if u in pair_of:
                if u in owner:
                    uf.union(owner[u], ci)
                else:
                    owner[u] = ci
    grouped: dict[int, int] = {}
    for ci, comp in enumerate(comps):
        root = uf.find(ci)
        grouped[root] = grouped.get(root, 0) | comp
    groups = [grouped[r] for r in sorted(grouped)]

    def effect(group: int, ri: int):
        """Counter increments and forced sets for placing ``group`` in run ``ri``."""
        run = runs[ri]
        lo, hi = run[0], run[-1]
        push_lo = push_hi = 0
        jl: dict[int, int] = {}
        jr: dict[int, int] = {}
        for v in iter_bits(group):
            for u in iter_bits(nbr[v] & assigned):
                c, c2 = span[u]
                if c == c2:
                    if c == lo - 1:
                        push_lo |= 1 << v
                    elif c == hi + 1:
                        push_hi |= 1 << v
                    else:
                        return None
                elif c2 == lo - 1:
                    jr[c] = jr.get(c, 0) | 1 << u
                    push_lo |= 1 << v
                elif c == hi + 1:
                    jl[c] = jl.get(c, 0) | 1 << u
                    push_hi |= 1 << v
                else:
                    return None
        deltas = []
        if lo == hi:
            deltas.append((run_slot[ri], group.bit_count()))
        else:
            if push_lo & push_hi:
                return None
            s = run_slot[ri]
            deltas += [(s, group.bit_count()), (s + 1, push_lo.bit_count()), (s + 2, push_hi.bit_count())]
        for c, m in jl.items():
            if m & pre_right[c]:
                return None
            deltas.append((joint_slot[c], (m & ~pre_left[c]).bit_count()))
        for c, m in jr.items():
            if m & pre_left[c]:
                return None
            deltas.append((joint_slot[c] + 1, (m & ~pre_right[c]).bit_count()))
        return deltas, push_lo, push_hi, jl, jr

    options = []
    for group in groups:
        opts = []
        for ri in range(len(runs)):
            eff = effect(group, ri)
            if eff is not None:
                opts.append((ri, eff))
        if not opts:
            return None
        options.append(opts)

    n_inst = max(frame.verts.bit_count(), 2)
    state_bound = n_inst ** (2 * k)
    layer: dict[tuple[int, ...], object] = {tuple(start): None}
    history = []
    for opts in options:
        nxt: dict[tuple[int, ...], tuple[tuple[int, ...], int]] = {}
        for st in layer:
            for oi, (ri, (deltas, *_)) in enumerate(opts):
                new = list(st)
                for s, amount in deltas:
                    new[s] += amount
                    if new[s] > slots[s]:
                        break
                else:
                    key = tuple(new)
                    if key not in nxt:
                        nxt[key] = (st, oi)
        if not nxt:
            return None
        stats.dp_states = max(stats.dp_states, len(nxt))
        if len(nxt) > state_bound:
            stats.dp_bound_violations += 1
        assert len(nxt) <= state_bound, "table exceeded the polynomial state bound"
        history.append(nxt)
        layer = nxt

    def accepting(st):
        for ri, r in enumerate(runs):
            s = run_slot[ri]
            if st[s] != sum(caps[b] for b in r):
                return False
        return True

    final = next((st for st in layer if accepting(st)), None)
    if final is None:
        return None

    chosen = [0] * len(options)
    st = final
    for gi in range(len(options) - 1, -1, -1):
        st, chosen[gi] = history[gi][st]

    out: dict[int, int] = {}
    for b, m in frame.full.items():
        for v in iter_bits(m):
            out[v] = b
    run_members = [0] * len(runs)
    run_lo = [0] * len(runs)
    run_hi = [0] * len(runs)
    left_of = dict(pre_left)
    right_of = dict(pre_right)
    for group, opts, oi in zip(groups, options, chosen):
        ri, (_, push_lo, push_hi, jl, jr) = opts[oi]
        run_members[ri] |= group
        run_lo[ri] |= push_lo
        run_hi[ri] |= push_hi
        for c, m in jl.items():
            left_of[c] |= m
        for c, m in jr.items():
            right_of[c] |= m

    def split(members, to_lo, to_hi, lo):
        room = caps[lo] - to_lo.bit_count()
        free = list(iter_bits(members & ~to_lo & ~to_hi))
        for v in iter_bits(to_lo):
            out[v] = lo
        for v in iter_bits(to_hi):
            out[v] = lo + 1
        for idx, v in enumerate(free):
            out[v] = lo if idx < room else lo + 1

    for ri, r in enumerate(runs):
        if len(r) == 1:
            for v in iter_bits(run_members[ri]):
                out[v] = r[0]
        else:
            split(run_members[ri], run_lo[ri], run_hi[ri], r[0])
    for j, m in frame.joint.items():
        split(m, left_of[j], right_of[j], j)
    return out


def _frame_from_partial(g: Graph, partial: PartialBucketArrangement) -> Frame:
    def mask(vs: Iterable[int]) -> int:
        for v in vs:
            if not 0 <= v < g.n:
                raise ValueError(f"vertex {v} not in graph")
        return to_mask(vs)

    frame = Frame(
        g.all_mask,
        tuple(partial.capacity),
        {b: mask(s) for b, s in partial.full.items()},
        {j: mask(s) for j, s in partial.joint.items()},
    )
    if sum(frame.caps) != g.n:
        raise ValueError(f"capacity vector size {sum(frame.caps)} != n={g.n}")
    validate_frame(frame)
    return frame


def dp_extendable(
    g: Graph, partial: PartialBucketArrangement, stats: SearchStats | None = None
) -> tuple[bool, BucketArrangement | None]:
    """Whether ``partial`` extends to a full bucket arrangement of ``g``, with a witness.

    Raises ``ValueError`` for malformed partial arrangements, including three
    consecutive empty buckets.
    """
    frame = _frame_from_partial(g, partial)
    found = extend(g, frame, stats if stats is not None else SearchStats())
    if found is None:
        return False, None
    return True, BucketArrangement.from_mapping(found, frame.caps, g.n)
