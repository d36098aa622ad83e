import pytest
from hypothesis import given, settings, strategies as st

from bucketband.arrangement import validate_bucket_arrangement
from bucketband.backtrack import SearchStats, approx2_backtrack, decide_backtrack
from bucketband.graph import Graph, generate
from oracles import feasible


def test_examples():
    w, stats = decide_backtrack(generate("path", 4), (2, 2))
    assert w is not None and stats.nodes_visited >= 1
    assert decide_backtrack(generate("complete", 4), (1, 1, 1, 1))[0] is None
    w, _ = decide_backtrack(generate("star", 4), (2, 1, 2))
    assert w is not None and w.bucket_of[0] == 1
    assert decide_backtrack(generate("cycle", 6), (1,) * 6)[0] is None


def test_pins_are_honoured():
    p4 = generate("path", 4)
    w, _ = decide_backtrack(p4, (2, 2), pins={0: 1})
    assert w.bucket_of[0] == 1
    assert decide_backtrack(p4, (1, 1, 1, 1), pins={1: 0, 0: 3})[0] is None


@pytest.mark.parametrize(
    "g, caps, pins",
    [
        (Graph(4, [(0, 1), (2, 3)]), (2, 2), None),
        (generate("path", 4), (2, 3), None),
        (generate("path", 4), (4, 0), None),
        (generate("path", 4), (2, 2), {0: 2}),
        (generate("path", 4), (2, 2), {0: 0, 1: 0, 2: 0}),
        (generate("path", 4), (2, 2), {9: 0}),
    ],
)
def test_rejects_bad_instances(g, caps, pins):
    with pytest.raises(ValueError):
        decide_backtrack(g, caps, pins)


def test_approx_examples():
    r = approx2_backtrack(generate("path", 10))
    assert (r.ell_star, r.upper) == (1, 1)
    r = approx2_backtrack(generate("cycle", 6))
    assert (r.ell_star, r.lower, r.upper) == (2, 2, 3)
    r = approx2_backtrack(generate("complete", 5))
    assert (r.ell_star, r.upper) == (3, 5)
    assert approx2_backtrack(Graph(1)).upper == 1


@st.composite
def instances(draw):
    n = draw(st.integers(2, 8))
    g = generate("random_connected", n, p=draw(st.sampled_from([0.2, 0.4, 0.7])), seed=draw(st.integers(0, 10**6)))
    k = draw(st.integers(1, n))
    # random split of n into k positive parts
    cuts = sorted(draw(st.sets(st.integers(1, n - 1), min_size=k - 1, max_size=k - 1))) if k > 1 else []
    bounds = [0] + cuts + [n]
    caps = tuple(b - a for a, b in zip(bounds, bounds[1:]))
    pins = draw(st.dictionaries(st.integers(0, n - 1), st.integers(0, k - 1), max_size=2))
    return g, caps, pins


@settings(max_examples=300, deadline=None)
@given(inst=instances())
def test_agrees_with_brute_force(inst):
    g, caps, pins = inst
    per_bucket = [list(pins.values()).count(b) for b in range(len(caps))]
    if any(h > c for h, c in zip(per_bucket, caps)):
        return
    stats = SearchStats()
    w, _ = decide_backtrack(g, caps, pins, stats)
    allowed = {v: (b,) for v, b in pins.items()}
    assert (w is not None) == feasible(g, caps, allowed)
    assert stats.nodes_visited <= len(caps) * 3 ** g.n
    if w is not None:
        assert validate_bucket_arrangement(g, w) is None
        assert all(w.bucket_of[v] == b for v, b in pins.items())
