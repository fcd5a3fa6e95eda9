"""Fault maps and safe/unsafe node labeling.

A fault map marks nodes as faulty. Non-faulty nodes are then labeled by a
fixed-point propagation: a node becomes unsafe when too many of its
neighbors are faulty or unsafe, under one of two classical trigger rules:

* Chiu's rule: 2 or more faulty neighbors, or 3 or more unsafe neighbors.
* Lee's rule: 2 or more faulty-or-unsafe neighbors (joint count).

Unsafe nodes split into ordinary unsafe (at least one safe neighbor) and
strongly unsafe (no safe neighbor). Faulty nodes are never themselves
labeled unsafe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Iterable

import numpy as np

from .topology import Hypercube


class UnsafeRule(Enum):
    CHIU = "chiu"
    LEE = "lee"


class NodeStatus(IntEnum):
    SAFE = 0
    ORDINARY_UNSAFE = 1
    STRONGLY_UNSAFE = 2
    FAULTY = 3


@dataclass(frozen=True, eq=False)
class FaultMap:
    """Boolean fault flags for every node of a hypercube."""

    cube: Hypercube
    bits: np.ndarray
    # derived in __post_init__; kept as an index array for vectorized cost sums
    faulty_nodes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=bool)
        if bits.shape != (self.cube.node_count,):
            raise ValueError(
                f"fault vector must have length {self.cube.node_count}, got {bits.shape}"
            )
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "faulty_nodes", np.flatnonzero(bits).astype(np.int64))

    @property
    def fault_count(self) -> int:
        return int(self.bits.sum())

    def is_faulty(self, x: int) -> bool:
        self.cube.check_node(x)
        return bool(self.bits[x])


def fault_map_from_list(cube: Hypercube, faulty: Iterable[int]) -> FaultMap:
    """Fault map with exactly the listed nodes marked faulty."""
    bits = np.zeros(cube.node_count, dtype=bool)
    for x in faulty:
        cube.check_node(x)
        bits[x] = True
    return FaultMap(cube, bits)


def random_fault_map(
    cube: Hypercube,
    count: int,
    rng: int | np.random.Generator,
    excluded: Iterable[int] = (),
) -> FaultMap:
    """Fault map with `count` distinct faulty nodes drawn uniformly, avoiding `excluded`.

    Deterministic given an integer seed; accepts a Generator so callers can
    thread one RNG through a whole run.
    """
    rng = np.random.default_rng(rng)
    excluded = np.unique(np.asarray(list(excluded), dtype=np.int64))
    for x in excluded:
        cube.check_node(int(x))
    if count < 0:
        raise ValueError(f"fault count must be non-negative, got {count}")
    if count + excluded.size > cube.node_count:
        raise ValueError(
            f"cannot place {count} faults outside {excluded.size} excluded nodes "
            f"in a network of {cube.node_count}"
        )
    candidates = np.setdiff1d(np.arange(cube.node_count, dtype=np.int64), excluded)
    chosen = rng.choice(candidates, size=count, replace=False)
    bits = np.zeros(cube.node_count, dtype=bool)
    bits[chosen] = True
    return FaultMap(cube, bits)


@dataclass(frozen=True, eq=False)
class SafetyClassification:
    """Per-node status labels produced by `classify`."""

    cube: Hypercube
    rule: UnsafeRule
    status: np.ndarray

    def status_of(self, x: int) -> NodeStatus:
        self.cube.check_node(x)
        return NodeStatus(int(self.status[x]))

    def nodes_with(self, status: NodeStatus) -> np.ndarray:
        return np.flatnonzero(self.status == status)

    @property
    def unsafe_count(self) -> int:
        return int(
            np.count_nonzero(self.status == NodeStatus.ORDINARY_UNSAFE)
            + np.count_nonzero(self.status == NodeStatus.STRONGLY_UNSAFE)
        )


def classify(cube: Hypercube, faults: FaultMap, rule: UnsafeRule) -> SafetyClassification:
    """Least fixed point of the unsafe-node rule, then the ordinary/strongly split.

    Starts with every non-faulty node safe and repeats full simultaneous
    sweeps until no new node triggers; the trigger is monotone in the
    unsafe set, so the result is independent of visitation order.
    """
    if faults.cube != cube:
        raise ValueError("fault map belongs to a different hypercube")
    nbr = cube.neighbor_table
    faulty = faults.bits
    faulty_nbrs = faulty[nbr].sum(axis=1)

    unsafe = np.zeros(cube.node_count, dtype=bool)
    while True:
        unsafe_nbrs = unsafe[nbr].sum(axis=1)
        if rule is UnsafeRule.CHIU:
            trigger = (faulty_nbrs >= 2) | (unsafe_nbrs >= 3)
        else:
            trigger = (faulty_nbrs + unsafe_nbrs) >= 2
        fresh = trigger & ~faulty & ~unsafe
        if not fresh.any():
            break
        unsafe |= fresh

    safe = ~faulty & ~unsafe
    has_safe_nbr = safe[nbr].any(axis=1)

    status = np.full(cube.node_count, NodeStatus.SAFE, dtype=np.int8)
    status[faulty] = NodeStatus.FAULTY
    status[unsafe & has_safe_nbr] = NodeStatus.ORDINARY_UNSAFE
    status[unsafe & ~has_safe_nbr] = NodeStatus.STRONGLY_UNSAFE
    return SafetyClassification(cube, rule, status)
