"""Run reports and the benchmark harness."""

from __future__ import annotations

import json
import random
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

from .arrangement import (
    DEFAULT_ORACLE_CAP,
    arrangement_bandwidth,
    arrangement_from_buckets,
    exact_bandwidth,
    validate_bucket_arrangement,
)
from .backtrack import SearchStats
from .driver import ALGORITHMS, approximate
from .graph import FAMILIES, Graph, generate

__all__ = ["RunReport", "InvariantViolation", "Instance", "build_suite", "run_one", "run_suite", "summarize"]

DETERMINISTIC = tuple(f for f in FAMILIES if f != "random_connected")


class InvariantViolation(AssertionError):
    """A report claims ``lower <= exact <= upper`` and it does not hold."""


@dataclass
class RunReport:
    instance: dict[str, Any]
    algo: str
    ell_star: int
    lower: int
    upper: int
    witness: list[int] | None = None
    exact: int | None = None
    nodes: int = 0
    millis: float | None = None

    def check(self) -> None:
        if self.exact is not None and not self.lower <= self.exact <= self.upper:
            raise InvariantViolation(
                f"{self.algo} on {self.instance}: exact {self.exact} outside [{self.lower}, {self.upper}]"
            )

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "algo": self.algo,
            "ell_star": self.ell_star,
            "lower": self.lower,
            "upper": self.upper,
            "witness": self.witness,
            "exact": self.exact,
            "nodes": self.nodes,
            "millis": self.millis,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def make_report(g: Graph, instance: dict, algo: str, *, exact: bool = False,
                cap: int = DEFAULT_ORACLE_CAP, timing: bool = False) -> RunReport:
    stats = SearchStats()
    start = time.perf_counter()
    result = approximate(g, algo, stats)
    if result.witness is not None:
        problem = validate_bucket_arrangement(g, result.witness)
        if problem is not None:
            raise InvariantViolation(f"{algo} returned an invalid witness: {problem}")
        if arrangement_bandwidth(g, arrangement_from_buckets(g, result.witness)) > result.upper:
            raise InvariantViolation(f"{algo} witness orders to more than {result.upper}")
    millis = round((time.perf_counter() - start) * 1000, 3) if timing else None
    report = RunReport(
        instance=instance,
        algo=algo,
        ell_star=result.ell_star,
        lower=result.lower,
        upper=result.upper,
        witness=list(result.witness.bucket_of) if result.witness is not None else None,
        exact=exact_bandwidth(g, cap)[0] if exact else None,
        nodes=result.nodes,
        millis=millis,
    )
    report.check()
    return report


@dataclass(frozen=True)
class Instance:
    family: str
    n: int
    rep: int
    seed: int | None = None
    b: int | None = None
    p: float | None = None

    def graph(self) -> Graph:
        return generate(self.family, self.n, b=self.b, p=self.p, seed=self.seed)

    def describe(self) -> dict[str, Any]:
        out: dict[str, Any] = {"family": self.family, "n": self.n, "rep": self.rep}
        for key in ("b", "p", "seed"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


def build_suite(families: Sequence[str], n_min: int, n_max: int, reps: int, seed: int,
                b: int | None = None, p: float | None = None) -> list[Instance]:
    """Instances in a fixed order; random families get one derived seed per repetition.

    Deterministic families produce the same graph on every repetition, so they
    are listed once per size. Sizes a family cannot take (cycles below 3,
    path powers with ``b >= n``) are skipped; ``path_power`` uses ``b = 2``
    unless given.
    """
    out = []
    for family in families:
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        fam_b = b if b is not None or family != "path_power" else 2
        for n in range(n_min, n_max + 1):
            if family == "path_power" and not 1 <= fam_b < n or family == "cycle" and n < 3:
                continue
            if family in DETERMINISTIC:
                out.append(Instance(family, n, 0, b=fam_b))
                continue
            for rep in range(reps):
                derived = random.Random(f"{seed}:{family}:{n}:{rep}").getrandbits(32)
                out.append(Instance(family, n, rep, seed=derived, p=p))
    return out


def run_one(instance: Instance, algos: Sequence[str], exact: bool, cap: int, timing: bool) -> list[RunReport]:
    g = instance.graph()
    return [make_report(g, instance.describe(), algo, exact=exact, cap=cap, timing=timing) for algo in algos]


def _run_packed(args):
    return run_one(*args)


def run_suite(instances: Sequence[Instance], algos: Sequence[str] = ("fast",), *, exact: bool = False,
              cap: int = DEFAULT_ORACLE_CAP, timing: bool = False, jobs: int = 1) -> list[RunReport]:
    """Reports for every instance and algorithm, ordered by instance then algorithm."""
    for algo in algos:
        if algo not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {algo!r}")
    work = [(inst, tuple(algos), exact, cap, timing) for inst in instances]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(_run_packed, work))
    else:
        batches = [run_one(*w) for w in work]
    return [r for batch in batches for r in batch]


@dataclass
class _Group:
    count: int = 0
    nodes: list[int] = field(default_factory=list)
    ratios: list[float] = field(default_factory=list)
    millis: list[float] = field(default_factory=list)


def summarize(reports: Sequence[RunReport]) -> list[dict[str, Any]]:
    """Aggregate rows per (family, n, algo): mean nodes, mean and max upper/exact ratio, mean time."""
    groups: dict[tuple, _Group] = {}
    for r in reports:
        key = (r.instance.get("family", "file"), r.instance.get("n", 0), r.algo)
        grp = groups.setdefault(key, _Group())
        grp.count += 1
        grp.nodes.append(r.nodes)
        if r.exact:
            grp.ratios.append(r.upper / r.exact)
        if r.millis is not None:
            grp.millis.append(r.millis)
    rows = []
    for (family, n, algo), grp in groups.items():
        rows.append({
            "family": family,
            "n": n,
            "algo": algo,
            "count": grp.count,
            "mean_nodes": round(statistics.fmean(grp.nodes), 3),
            "mean_ratio": round(statistics.fmean(grp.ratios), 4) if grp.ratios else None,
            "max_ratio": round(max(grp.ratios), 4) if grp.ratios else None,
            "mean_millis": round(statistics.fmean(grp.millis), 3) if grp.millis else None,
        })
    return rows
