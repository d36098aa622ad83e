"""Simple undirected graphs on dense vertex ids, plus generators and DIMACS I/O.

Vertex sets are handled as ``frozenset`` at the public surface and as integer
bitmasks inside the search routines (bit ``v`` set means vertex ``v`` is a
member).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "Graph",
    "ComponentSplit",
    "GraphParseError",
    "connected_components",
    "open_neighborhood",
    "induced_subgraph",
    "split_small_large",
    "generate",
    "parse_graph",
    "format_graph",
    "FAMILIES",
]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def to_set(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


class Graph:
    """Immutable simple undirected graph with vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adj", "nbr")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        norm = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            norm.add((u, v) if u < v else (v, u))
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in norm:
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges = frozenset(norm)
        self.adj = tuple(frozenset(a) for a in adj)
        self.nbr = tuple(to_mask(a) for a in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors_of_mask(self, mask: int) -> int:
        """Union of neighborhoods of the vertices in ``mask`` (not excluding ``mask``)."""
        out = 0
        nbr = self.nbr
        for v in iter_bits(mask):
            out |= nbr[v]
        return out

    def components_mask(self, within: int | None = None) -> list[int]:
        """Connected components of the subgraph induced on ``within``, as bitmasks.

        Components are ordered by their lowest vertex.
        """
        if within is None:
            within = self.all_mask
        nbr = self.nbr
        comps = []
        rest = within
        while rest:
            low = rest & -rest
            comp = low
            frontier = low
            while frontier:
                grow = 0
                for v in iter_bits(frontier):
                    grow |= nbr[v]
                frontier = grow & rest & ~comp
                comp |= frontier
            comps.append(comp)
            rest &= ~comp
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components_mask()) == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class ComponentSplit:
    small: list[frozenset[int]]
    large: list[frozenset[int]]


def _check_subset(g: Graph, x: Iterable[int]) -> int:
    mask = 0
    for v in x:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph with n={g.n}")
        mask |= 1 << v
    return mask


def connected_components(g: Graph) -> list[frozenset[int]]:
    return [to_set(c) for c in g.components_mask()]


def open_neighborhood(g: Graph, x: Iterable[int]) -> frozenset[int]:
    mask = _check_subset(g, x)
    return to_set(g.neighbors_of_mask(mask) & ~mask)


def induced_subgraph(g: Graph, x: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Return ``g[x]`` relabelled to ``0..|x|-1`` (ascending old id) and the old->new map."""
    keep = sorted(iter_bits(_check_subset(g, x)))
    remap = {old: new for new, old in enumerate(keep)}
    edges = [(remap[u], remap[v]) for u, v in g.edges if u in remap and v in remap]
    return Graph(len(keep), edges), remap


def split_small_large(g: Graph, x: Iterable[int], threshold: int) -> ComponentSplit:
    """Components of ``g - x``, separated into those with at most ``threshold`` vertices and the rest."""
    if threshold < 1:
        raise ValueError("threshold must be positive")
    mask = _check_subset(g, x)
    small, large = [], []
    for comp in g.components_mask(g.all_mask & ~mask):
        (small if comp.bit_count() <= threshold else large).append(to_set(comp))
    return ComponentSplit(small, large)


# -- generators ---------------------------------------------------------------

FAMILIES = ("path", "cycle", "complete", "star", "caterpillar", "path_power", "random_connected")


def _path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def _cycle(n):
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _complete(n):
    return Graph(n, itertools.combinations(range(n), 2))


def _star(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def _caterpillar(spine, legs):
    # spine vertices 0..spine-1, then `legs` pendant vertices per spine vertex
    if legs < 0:
        raise ValueError("caterpillar legs must be non-negative")
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for s in range(spine):
        for _ in range(legs):
            edges.append((s, nxt))
            nxt += 1
    return Graph(nxt, edges)


def _path_power(n, b):
    if not 1 <= b < n:
        raise ValueError(f"path_power needs 1 <= b < n, got n={n}, b={b}")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, min(n, i + b + 1))])


def _random_connected(n, p, seed):
    if not 0 < p <= 1:
        raise ValueError(f"edge probability must lie in (0, 1], got {p}")
    if seed is None:
        raise ValueError("random_connected requires a seed")
    rng = random.Random(seed)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    g = Graph(n, edges)
    while not g.is_connected():
        comp_of = {}
        for idx, comp in enumerate(g.components_mask()):
            for v in iter_bits(comp):
                comp_of[v] = idx
        cross = [(u, v) for u, v in itertools.combinations(range(n), 2) if comp_of[u] != comp_of[v]]
        edges.append(rng.choice(cross))
        g = Graph(n, edges)
    return g


def generate(family: str, n: int, *, b: int | None = None, p: float | None = None,
             seed: int | None = None) -> Graph:
    """Build a graph from one of :data:`FAMILIES`.

    ``n`` is the vertex count except for ``star`` (number of leaves) and
    ``caterpillar`` (spine length; ``b`` legs per spine vertex, default 1).
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if family == "path":
        return _path(n)
    if family == "cycle":
        return _cycle(n)
    if family == "complete":
        return _complete(n)
    if family == "star":
        return _star(n)
    if family == "caterpillar":
        return _caterpillar(n, 1 if b is None else b)
    if family == "path_power":
        if b is None:
            raise ValueError("path_power requires b")
        return _path_power(n, b)
    if family == "random_connected":
        return _random_connected(n, 0.3 if p is None else p, seed)
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


# -- text formats -------------------------------------------------------------


class GraphParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def parse_graph(text: str) -> Graph:
    """Parse DIMACS-like ``p edge n m`` / ``e u v`` text, or a bare 1-based edge list."""
    header = None
    header_line = 0
    pairs: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise GraphParseError(lineno, "duplicate header")
            if pairs:
                raise GraphParseError(lineno, "header after edges")
            if len(tokens) != 4 or tokens[1] != "edge":
                raise GraphParseError(lineno, "malformed header, expected 'p edge <n> <m>'")
            n, m = _ints(tokens[2:], lineno)
            if n < 0 or m < 0:
                raise GraphParseError(lineno, "negative size in header")
            header, header_line = (n, m), lineno
        elif tokens[0] == "e":
            if header is None:
                raise GraphParseError(lineno, "edge before header")
            if len(tokens) != 3:
                raise GraphParseError(lineno, "malformed edge line")
            u, v = _ints(tokens[1:], lineno)
            pairs.append((lineno, u, v))
        elif header is None and len(tokens) == 2:
            u, v = _ints(tokens, lineno)
            pairs.append((lineno, u, v))
        else:
            raise GraphParseError(lineno, f"unrecognised line {line!r}")

    if header is not None:
        n, m = header
    else:
        n = max((max(u, v) for _, u, v in pairs), default=0)

    seen = set()
    edges = []
    for lineno, u, v in pairs:
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphParseError(lineno, f"vertex out of range 1..{n}")
        if u == v:
            raise GraphParseError(lineno, f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(lineno, f"duplicate edge {u} {v}")
        seen.add(key)
        edges.append((u - 1, v - 1))
    if header is not None and len(edges) != m:
        raise GraphParseError(header_line, f"header declares {m} edges but {len(edges)} given")
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def small_threshold(n: int) -> int:
    """Size cutoff between small and large components: ``floor(sqrt(n))``, at least 1."""
    return max(1, math.isqrt(n))
