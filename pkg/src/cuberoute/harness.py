"""Monte Carlo experiment engine.

A case fixes (dimension, fault count, router); each run inside it samples
fault locations and a fault-free source/dest pair, routes, and feeds a
tally. Reported path lengths are normalized by the fault-free mean path
length of the same sampled endpoint pairs (the PL/MPL figure of merit), so
endpoint sampling bias cancels exactly.

Every run is seeded from (case seed, run index), so a case is reproducible
in isolation, runs can be partitioned across workers, and rerunning any
slice yields identical numbers. A BFS oracle checks every non-delivered
run: if a fault-avoiding path existed, the failure is the router's fault
and is tallied as failed_reachable, never hidden inside unreachable.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .chiu import chiu_route
from .far import DecisionMode, FarParams, far_route
from .routing import RouteStatus, audit_path, default_max_hops
from .safety import FaultMap, UnsafeRule, classify, random_fault_map
from .topology import Hypercube, hamming_distance


class Router(Enum):
    CHIU = "chiu"
    FAR_HOPFIELD = "far"
    FAR_ARGMIN = "far-argmin"


@dataclass(frozen=True)
class CaseSpec:
    """One experimental condition; runs within it differ only by run index."""

    dimension: int
    fault_count: int
    router: Router
    runs: int = 1000
    seed: int = 0
    rule: UnsafeRule = UnsafeRule.CHIU
    max_hops: int | None = None
    params: FarParams = field(default_factory=FarParams)

    def __post_init__(self):
        cube = Hypercube(self.dimension)
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if not 0 <= self.fault_count <= cube.node_count - 2:
            raise ValueError(
                f"fault_count must leave two fault-free endpoints in a "
                f"{self.dimension}-cube, got {self.fault_count}"
            )
        if self.max_hops is not None and self.max_hops < 1:
            raise ValueError(f"max_hops must be >= 1, got {self.max_hops}")

    @property
    def cube(self) -> Hypercube:
        return Hypercube(self.dimension)


@dataclass
class RunTally:
    """Mergeable partial statistics; merge is associative and commutative."""

    runs: int = 0
    delivered: int = 0
    undeliverable: int = 0
    hop_limit: int = 0
    unreachable: int = 0
    failed_reachable: int = 0
    hop_total: int = 0
    hamming_total: int = 0
    decisions: int = 0
    iteration_total: int = 0
    iteration_max: int = 0
    fallbacks: int = 0

    def merge(self, other: "RunTally") -> "RunTally":
        return RunTally(
            runs=self.runs + other.runs,
            delivered=self.delivered + other.delivered,
            undeliverable=self.undeliverable + other.undeliverable,
            hop_limit=self.hop_limit + other.hop_limit,
            unreachable=self.unreachable + other.unreachable,
            failed_reachable=self.failed_reachable + other.failed_reachable,
            hop_total=self.hop_total + other.hop_total,
            hamming_total=self.hamming_total + other.hamming_total,
            decisions=self.decisions + other.decisions,
            iteration_total=self.iteration_total + other.iteration_total,
            iteration_max=max(self.iteration_max, other.iteration_max),
            fallbacks=self.fallbacks + other.fallbacks,
        )


@dataclass(frozen=True)
class CaseStats:
    """Aggregated results of one case."""

    spec: CaseSpec
    delivered_count: int
    undeliverable_count: int
    hop_limit_count: int
    unreachable_count: int
    failed_reachable_count: int
    mpl: float | None
    fault_free_mpl: float
    pl_over_mpl: float | None
    mean_iterations: float | None
    max_iterations: int | None
    fallback_count: int | None


class CaseError(Exception):
    """A case inside a sweep failed; carries the failing case index."""

    def __init__(self, index: int, spec: CaseSpec, cause: BaseException):
        self.index = index
        self.spec = spec
        super().__init__(f"case {index} ({spec.router.value}, n={spec.dimension}, "
                         f"faults={spec.fault_count}) failed: {cause}")


def bfs_shortest(cube: Hypercube, faults: FaultMap, source: int, dest: int) -> int | None:
    """Shortest fault-avoiding path length, or None when no path exists."""
    cube.check_node(source)
    cube.check_node(dest)
    if faults.is_faulty(source) or faults.is_faulty(dest):
        raise ValueError("bfs_shortest endpoints must be non-faulty")
    if source == dest:
        return 0
    dist = np.full(cube.node_count, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    table = cube.neighbor_table
    while queue:
        x = queue.popleft()
        for v in table[x]:
            v = int(v)
            if dist[v] >= 0 or faults.bits[v]:
                continue
            dist[v] = dist[x] + 1
            if v == dest:
                return int(dist[v])
            queue.append(v)
    return None


def _sample_endpoints(cube: Hypercube, faults: FaultMap, rng) -> tuple[int, int]:
    # endpoints drawn after the fault map, uniformly among non-faulty nodes
    nonfaulty = np.flatnonzero(~faults.bits)
    pair = rng.choice(nonfaulty, size=2, replace=False)
    return int(pair[0]), int(pair[1])


def tally_runs(spec: CaseSpec, run_indices: Iterable[int]) -> RunTally:
    """Execute a slice of a case's runs and return its partial tally.

    tally_runs(spec, range(spec.runs)) reproduces the whole case; disjoint
    slices merge to the same totals in any order.
    """
    cube = spec.cube
    max_hops = spec.max_hops if spec.max_hops is not None else default_max_hops(cube.dimension)
    tally = RunTally()
    for r in run_indices:
        rng = np.random.default_rng([spec.seed, r])
        faults = random_fault_map(cube, spec.fault_count, rng)
        source, dest = _sample_endpoints(cube, faults, rng)

        if spec.router is Router.CHIU:
            labels = classify(cube, faults, spec.rule)
            outcome = chiu_route(source, dest, labels, max_hops=max_hops)
            records = []
        else:
            mode = (DecisionMode.HOPFIELD if spec.router is Router.FAR_HOPFIELD
                    else DecisionMode.ARGMIN)
            outcome, records = far_route(
                source, dest, cube, faults, spec.params,
                max_hops=max_hops, mode=mode, seed=(spec.seed, r),
            )

        tally.runs += 1
        tally.hamming_total += hamming_distance(source, dest)
        if outcome.status is RouteStatus.DELIVERED:
            audit_path(outcome, cube, faults, source, dest)
            tally.delivered += 1
            tally.hop_total += outcome.hops
        else:
            if outcome.status is RouteStatus.UNDELIVERABLE:
                tally.undeliverable += 1
            else:
                tally.hop_limit += 1
            if bfs_shortest(cube, faults, source, dest) is None:
                tally.unreachable += 1
            else:
                tally.failed_reachable += 1
        for rec in records:
            tally.decisions += 1
            tally.iteration_total += rec.iterations
            if rec.iterations > tally.iteration_max:
                tally.iteration_max = rec.iterations
            if rec.fallback:
                tally.fallbacks += 1
    return tally


def finalize(spec: CaseSpec, tally: RunTally) -> CaseStats:
    """Turn a complete tally into CaseStats."""
    if tally.runs != spec.runs:
        raise ValueError(f"tally covers {tally.runs} runs, spec wants {spec.runs}")
    mpl = tally.hop_total / tally.delivered if tally.delivered else None
    fault_free_mpl = tally.hamming_total / tally.runs
    pl_over_mpl = mpl / fault_free_mpl if mpl is not None else None
    if spec.router is Router.FAR_HOPFIELD and tally.decisions:
        mean_iterations = tally.iteration_total / tally.decisions
        max_iterations = tally.iteration_max
    else:
        mean_iterations = None
        max_iterations = None
    fallback_count = None if spec.router is Router.CHIU else tally.fallbacks
    return CaseStats(
        spec=spec,
        delivered_count=tally.delivered,
        undeliverable_count=tally.undeliverable,
        hop_limit_count=tally.hop_limit,
        unreachable_count=tally.unreachable,
        failed_reachable_count=tally.failed_reachable,
        mpl=mpl,
        fault_free_mpl=fault_free_mpl,
        pl_over_mpl=pl_over_mpl,
        mean_iterations=mean_iterations,
        max_iterations=max_iterations,
        fallback_count=fallback_count,
    )


def run_case(spec: CaseSpec) -> CaseStats:
    """Run every run of a case and aggregate. Deterministic given spec.seed."""
    return finalize(spec, tally_runs(spec, range(spec.runs)))


def sweep(specs: Sequence[CaseSpec], workers: int | None = None) -> list[CaseStats]:
    """Run cases in order; with workers > 1 they execute in parallel processes.

    Output order always matches input order and per-case results are
    independent of the worker count. A failing case raises CaseError naming
    its position in the sweep.
    """
    specs = list(specs)
    if not specs:
        raise ValueError("sweep needs at least one case")
    results: list[CaseStats] = []
    if workers is not None and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_case, s) for s in specs]
            for i, (s, fut) in enumerate(zip(specs, futures)):
                try:
                    results.append(fut.result())
                except Exception as exc:
                    raise CaseError(i, s, exc) from exc
    else:
        for i, s in enumerate(specs):
            try:
                results.append(run_case(s))
            except Exception as exc:
                raise CaseError(i, s, exc) from exc
    return results
