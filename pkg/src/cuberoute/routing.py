"""Routing outcomes shared by the classical and neural routers."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .safety import FaultMap
from .topology import Hypercube, hamming_distance


class RouteStatus(Enum):
    DELIVERED = "delivered"
    UNDELIVERABLE = "undeliverable"
    HOP_LIMIT_EXCEEDED = "hop_limit_exceeded"


@dataclass
class RoutingOutcome:
    """A routed walk: path[0] is the source; the last entry is wherever routing stopped."""

    path: list[int]
    status: RouteStatus

    @property
    def hops(self) -> int:
        return len(self.path) - 1

    @property
    def delivered(self) -> bool:
        return self.status is RouteStatus.DELIVERED


def default_max_hops(dimension: int) -> int:
    """Livelock cutoff: generous multiple of the network diameter."""
    return 4 * dimension


class PathAuditError(Exception):
    """A routed path violated a structural guarantee."""


def audit_path(
    outcome: RoutingOutcome, cube: Hypercube, faults: FaultMap, source: int, dest: int
) -> None:
    """Re-validate a routed path; raises PathAuditError on any violation.

    Checks: starts at the source, consecutive entries are neighbors, no entry
    is faulty, hop parity matches the distance from the source, and delivered
    paths end at the destination with at least the Hamming-distance hop count.
    """
    path = outcome.path
    if not path or path[0] != source:
        raise PathAuditError(f"path does not start at source {source}: {path[:3]}")
    for k, node in enumerate(path):
        cube.check_node(node)
        if faults.is_faulty(node):
            raise PathAuditError(f"path visits faulty node {node} at hop {k}")
        if (k - hamming_distance(source, node)) % 2 != 0:
            raise PathAuditError(f"hop parity broken at hop {k} (node {node})")
        if k > 0 and hamming_distance(path[k - 1], node) != 1:
            raise PathAuditError(f"non-neighbor step {path[k - 1]} -> {node} at hop {k}")
    if outcome.status is RouteStatus.DELIVERED:
        if path[-1] != dest:
            raise PathAuditError(f"delivered path ends at {path[-1]}, not {dest}")
        if outcome.hops < hamming_distance(source, dest):
            raise PathAuditError("delivered path shorter than the Hamming distance")
