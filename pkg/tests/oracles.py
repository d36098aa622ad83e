"""Slow reference implementations used only to check the real code.

They assign vertices in plain id order and check every constraint directly,
with no frontier heuristics, forward checking or DP.
"""

import itertools
import math


def bucket_assignments(g, caps, allowed=None, verts=None):
    """Yield every map vertex -> bucket over ``verts`` (default: all) with
    per-bucket counts <= caps and every edge inside ``verts`` spanning <= 1 bucket.

    ``allowed`` maps a vertex to an iterable of permitted buckets.
    """
    verts = list(range(g.n)) if verts is None else sorted(verts)
    inside = set(verts)
    k = len(caps)
    counts = [0] * k
    where = {}

    def rec(i):
        if i == len(verts):
            yield dict(where)
            return
        v = verts[i]
        for b in (allowed or {}).get(v, range(k)):
            if counts[b] >= caps[b]:
                continue
            if any(w in where and abs(where[w] - b) > 1 for w in g.adj[v] if w in inside):
                continue
            where[v] = b
            counts[b] += 1
            yield from rec(i + 1)
            counts[b] -= 1
            del where[v]

    yield from rec(0)


def feasible(g, caps, allowed=None):
    """Whether ``g`` has a bucket arrangement filling ``caps`` exactly."""
    assert sum(caps) == g.n
    return next(bucket_assignments(g, caps, allowed), None) is not None


def completion_exists(g, caps, full=None, joint=None):
    """Brute-force extension check for a partial arrangement (bucket indices 0-based)."""
    allowed = {}
    for b, xs in (full or {}).items():
        for v in xs:
            allowed[v] = (b,)
    for j, xs in (joint or {}).items():
        for v in xs:
            allowed[v] = (j, j + 1)
    return feasible(g, caps, allowed)


def components_without(g, removed):
    left = set(range(g.n)) - set(removed)
    comps = []
    while left:
        start = min(left)
        seen, todo = {start}, [start]
        while todo:
            v = todo.pop()
            for w in g.adj[v]:
                if w in left and w not in seen:
                    seen.add(w)
                    todo.append(w)
        comps.append(seen)
        left -= seen
    return comps


def residual_vectors(g, caps, j, x):
    """All residual vectors after placing ``x`` in bucket ``j`` and the small
    components (size <= floor(sqrt(n))) of ``g - x`` anywhere valid."""
    limit = max(1, math.isqrt(g.n))
    small = set()
    for comp in components_without(g, x):
        if len(comp) <= limit:
            small |= comp
    free = list(caps)
    free[j] = 0
    allowed = {v: (j,) for v in x}
    others = tuple(b for b in range(len(caps)) if b != j)
    allowed.update({v: others for v in small})
    verts = set(small) | set(x)
    room = list(free)
    room[j] = len(x)
    out = set()
    for placed in bucket_assignments(g, room, allowed, verts):
        used = [0] * len(caps)
        for v in small:
            used[placed[v]] += 1
        out.add(tuple(f - u for f, u in zip(free, used)))
    return out


def exact_by_permutations(g):
    best = 0 if g.n < 2 else g.n
    for perm in itertools.permutations(range(g.n)):
        pos = {v: i for i, v in enumerate(perm)}
        width = max((abs(pos[u] - pos[v]) for u, v in g.edges), default=0)
        best = min(best, width)
    return best
