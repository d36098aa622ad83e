import pytest
from hypothesis import given, settings, strategies as st

from bucketband.arrangement import make_capacity_vector, validate_bucket_arrangement
from bucketband.backtrack import SearchStats, decide_backtrack
from bucketband.divide import approx2_dc, choose_split_index, decide_bandwidth_window, decide_dc
from bucketband.graph import Graph, generate


def test_split_index_examples():
    # 0-based: index 1 is the second bucket
    assert choose_split_index((2, 3, 3, 2)).split_index == 1
    assert choose_split_index((1, 1, 1, 1, 1)).split_index == 2
    plan = choose_split_index((3,) * 7)
    assert plan.split_index == 3
    assert plan.left_caps == (3, 3, 3) and plan.right_caps == (3, 3, 3)


def test_split_index_needs_three_buckets():
    with pytest.raises(ValueError):
        choose_split_index((2, 2))


@given(st.lists(st.integers(1, 9), min_size=3, max_size=30))
def test_split_halves(caps):
    plan = choose_split_index(caps)
    size = sum(caps)
    assert 2 * sum(plan.left_caps) <= size and 2 * sum(plan.right_caps) <= size


def test_dc_examples():
    w, stats = decide_dc(generate("path", 9), (1,) * 9)
    assert w is not None and stats.recursions > 1
    assert validate_bucket_arrangement(generate("path", 9), w) is None
    assert decide_dc(generate("complete", 4), (1, 1, 1, 1))[0] is None
    assert decide_dc(generate("cycle", 6), (2, 2, 2))[0] is not None


def test_dc_pins():
    p9 = generate("path", 9)
    w, _ = decide_dc(p9, (1,) * 9, pins={4: 4})
    assert w.bucket_of[4] == 4
    assert decide_dc(p9, (1,) * 9, pins={4: 0, 5: 8})[0] is None


def test_dc_rejects_disconnected():
    with pytest.raises(ValueError):
        decide_dc(Graph(4, [(0, 1), (2, 3)]), (2, 2))


def test_window_examples():
    c6 = generate("cycle", 6)
    w = decide_bandwidth_window(c6, 3)
    assert (w.verdict, w.bound) == ("at_most", 5) and w.witness is not None
    assert (decide_bandwidth_window(c6, 1).verdict, decide_bandwidth_window(c6, 1).bound) == ("at_least", 2)
    assert decide_bandwidth_window(c6, 2).verdict == "at_most"
    w = decide_bandwidth_window(generate("complete", 5), 2)
    assert (w.verdict, w.bound) == ("at_least", 3)


def test_window_disconnected():
    g = Graph(9, [(i, (i + 1) % 6) for i in range(6)] + [(6, 7), (7, 8)])
    assert decide_bandwidth_window(g, 1).verdict == "at_least"
    w = decide_bandwidth_window(g, 2)
    assert w.verdict == "at_most" and w.witness is None


def test_approx_examples():
    assert approx2_dc(generate("path", 10)).upper == 1
    assert approx2_dc(generate("cycle", 6)).upper == 3
    assert approx2_dc(generate("complete", 5)).upper == 5


@settings(max_examples=200, deadline=None)
@given(n=st.integers(3, 12), p=st.sampled_from([0.15, 0.3, 0.5]), seed=st.integers(0, 10**6),
       style=st.sampled_from(["balanced", "left_packed"]), base=st.sampled_from([None, 1, 2]), data=st.data())
def test_agrees_with_backtracking(n, p, seed, style, base, data):
    g = generate("random_connected", n, p=p, seed=seed)
    ell = data.draw(st.integers(1, -(-n // 2)))
    caps = make_capacity_vector(n, ell, style)
    stats = SearchStats()
    w, _ = decide_dc(g, caps, base_size=base, stats=stats)
    assert (w is None) == (decide_backtrack(g, caps)[0] is None)
    if w is not None:
        assert validate_bucket_arrangement(g, w) is None
