"""Acceptance gate. Each test carries the number of the criterion it checks;
the terminal summary prints one PASS/FAIL line per criterion."""

import itertools
import json
import subprocess
import sys
import time

import pytest

from bucketband import (
    approx2_fast,
    arrangement_bandwidth,
    arrangement_from_buckets,
    decide_backtrack,
    decide_constant_k,
    decide_dc,
    dp_extendable,
    enumerate_produced_vectors,
    exact_bandwidth,
    generate,
    make_capacity_vector,
    validate_bucket_arrangement,
)
from bucketband.backtrack import SearchStats
from bucketband.constant_k import PartialBucketArrangement, fast_style
from oracles import completion_exists, residual_vectors

DENSITIES = (0.15, 0.3, 0.5)


def random_graphs(count, sizes, base_seed):
    """``count`` seeded connected graphs, sizes and densities taken round-robin."""
    for i in range(count):
        n = sizes[i % len(sizes)]
        p = DENSITIES[(i // len(sizes)) % len(DENSITIES)]
        yield generate("random_connected", n, p=p, seed=base_seed + i)


def family_graphs(max_n):
    """Every connected generator-family graph with at most ``max_n`` vertices and at least one edge."""
    for n in range(2, max_n + 1):
        yield generate("path", n)
        yield generate("complete", n)
        if n >= 3:
            yield generate("cycle", n)
        yield generate("star", n - 1)
        for b in range(1, n):
            yield generate("path_power", n, b=b)
    for b in (1, 2, 3):
        for spine in range(1, max_n // (b + 1) + 1):
            yield generate("caterpillar", spine, b=b)


# -- criterion 1 ---------------------------------------------------------------

@pytest.mark.criterion(1)
def test_oracle_sandwich():
    start = time.perf_counter()
    graphs = list(random_graphs(540, list(range(4, 10)), 10_000)) + list(family_graphs(9))
    violations = []
    for g in graphs:
        r = approx2_fast(g)
        exact, _ = exact_bandwidth(g)
        if not (r.lower <= exact <= r.upper and r.upper == 2 * r.lower - 1):
            violations.append((sorted(g.edges), r.lower, exact, r.upper))
    elapsed = time.perf_counter() - start
    assert len(graphs) >= 540
    assert violations == []
    assert elapsed < 300


# -- criteria 2, 6, 7 share one sweep -------------------------------------------

@pytest.fixture(scope="module")
def sweep():
    """Run all deciders on 200 graphs for every n in 4..14 and every ell."""
    records = []
    for n in range(4, 15):
        for g in random_graphs(200, [n], 1000 * n):
            for ell in range(1, -(-n // 2) + 1):
                caps = make_capacity_vector(n, ell, fast_style(-(-n // ell)))
                k = len(caps)
                bt_stats = SearchStats()
                bt, _ = decide_backtrack(g, caps, stats=bt_stats)
                dc, _ = decide_dc(g, caps)
                ck_stats = SearchStats()
                ck = decide_constant_k(g, caps, ck_stats) if 3 <= k <= 26 else "skipped"
                records.append({
                    "g": g, "ell": ell, "caps": caps, "bt": bt, "dc": dc, "ck": ck,
                    "bt_nodes": bt_stats.nodes_visited, "ck_stats": ck_stats,
                })
    return records


@pytest.mark.criterion(2)
def test_cross_strategy_agreement(sweep):
    disagreements = []
    graphs_per_n = {}
    for rec in sweep:
        g = rec["g"]
        if rec["ell"] == 1:
            graphs_per_n[g.n] = graphs_per_n.get(g.n, 0) + 1
        verdicts = {rec["bt"] is None, rec["dc"] is None}
        if rec["ck"] != "skipped":
            verdicts.add(rec["ck"] is None)
        if len(verdicts) > 1:
            disagreements.append((g.n, sorted(g.edges), rec["caps"]))
    assert sorted(graphs_per_n) == list(range(4, 15))
    assert all(count >= 200 for count in graphs_per_n.values())
    assert disagreements == []


@pytest.mark.criterion(6)
def test_branching_and_memo_bounds(sweep):
    for rec in sweep:
        n, k = rec["g"].n, len(rec["caps"])
        assert rec["bt_nodes"] <= k * 3 ** n
        stats = rec["ck_stats"]
        assert stats.dp_bound_violations == 0
        assert stats.dp_states <= max(n, 2) ** (2 * k)


@pytest.mark.criterion(7)
def test_witness_validity(sweep):
    checked = 0
    for rec in sweep:
        g, ell = rec["g"], rec["ell"]
        for witness in (rec["bt"], rec["dc"], rec["ck"]):
            if witness is None or witness == "skipped":
                continue
            assert validate_bucket_arrangement(g, witness) is None
            assert arrangement_bandwidth(g, arrangement_from_buckets(g, witness)) <= 2 * ell - 1
            checked += 1
    for g in itertools.chain(family_graphs(9), random_graphs(100, list(range(4, 12)), 50_000)):
        r = approx2_fast(g)
        assert validate_bucket_arrangement(g, r.witness) is None
        assert arrangement_bandwidth(g, arrangement_from_buckets(g, r.witness)) <= r.upper
        checked += 1
    assert checked > 1000


# -- criteria 3 and 4 -----------------------------------------------------------

def dp_graphs():
    yield from family_graphs(10)
    yield from random_graphs(100, list(range(4, 11)), 20_000)


def fillings(k):
    """Single buckets and consecutive pairs whose filling leaves no three empty buckets in a row."""
    for lo, hi in [(b, b) for b in range(k)] + [(b, b + 1) for b in range(k - 1)]:
        status = "".join("F" if lo <= b <= hi else "E" for b in range(k))
        if "EEE" not in status:
            yield lo, hi


def small_vectors(n):
    seen = set()
    for ell in range(1, -(-n // 2) + 1):
        for style in ("balanced", "left_packed"):
            caps = make_capacity_vector(n, ell, style)
            if 3 <= len(caps) <= 6 and caps not in seen:
                seen.add(caps)
                yield caps


@pytest.mark.criterion(3)
def test_dp_matches_brute_force():
    compared = 0
    errors = []
    for g in dp_graphs():
        for caps in small_vectors(g.n):
            for lo, hi in fillings(len(caps)):
                size = sum(caps[lo:hi + 1])
                for x in itertools.combinations(range(g.n), size):
                    x = frozenset(x)
                    full = {lo: x} if lo == hi else {}
                    joint = {lo: x} if lo != hi else {}
                    stats = SearchStats()
                    ok, witness = dp_extendable(g, PartialBucketArrangement(caps, full, joint), stats)
                    expected = completion_exists(g, caps, full, joint)
                    compared += 1
                    if ok != expected:
                        errors.append((sorted(g.edges), caps, lo, hi, sorted(x)))
                        continue
                    assert stats.dp_bound_violations == 0
                    if ok:
                        assert validate_bucket_arrangement(g, witness) is None
                        assert all(lo <= witness.bucket_of[v] <= hi for v in x)
    assert errors == []
    assert compared > 10_000


@pytest.mark.criterion(4)
def test_produced_vectors_match_brute_force():
    compared = 0
    for g in dp_graphs():
        for caps in small_vectors(g.n):
            for j in range(len(caps)):
                for x in itertools.combinations(range(g.n), caps[j]):
                    got = enumerate_produced_vectors(g, caps, j, x)
                    assert got == residual_vectors(g, caps, j, x), (sorted(g.edges), caps, j, x)
                    compared += 1
    assert compared > 10_000


# -- criterion 5 ----------------------------------------------------------------

@pytest.mark.criterion(5)
def test_known_family_values():
    for n in range(1, 31):
        assert approx2_fast(generate("path", n)).upper == 1
    for n in range(4, 31):
        r = approx2_fast(generate("cycle", n))
        assert r.upper == 3
        if n <= 12:
            assert exact_bandwidth(generate("cycle", n))[0] == 2
    for n in range(2, 10):
        g = generate("complete", n)
        r = approx2_fast(g)
        exact, _ = exact_bandwidth(g)
        assert r.lower == -(-n // 2)
        assert exact == n - 1
        assert r.lower <= exact <= r.upper


# -- criterion 8 ----------------------------------------------------------------

def _bench(seed):
    cmd = [sys.executable, "-m", "bucketband.cli", "bench", "--families", "random_connected,cycle,star",
           "--n-min", "4", "--n-max", "9", "--reps", "4", "--algos", "fast,backtrack,dc",
           "--exact", "--seed", str(seed), "--json"]
    return subprocess.run(cmd, capture_output=True, check=True).stdout


@pytest.mark.criterion(8)
def test_bench_json_is_deterministic():
    first, second = _bench(7), _bench(7)
    assert first == second
    rows = json.loads(first)["rows"]
    assert rows and all(r["lower"] <= r["exact"] <= r["upper"] for r in rows)
    assert _bench(8) != first
