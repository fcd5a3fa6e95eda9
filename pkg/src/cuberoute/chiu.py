"""Chiu's unsafe-node routing ladder for hypercubes.

Each step picks the next hop from a fixed preference ladder over the
current node's neighbors: safe nodes that get closer first, then ordinary
unsafe ones, then (only from a strongly unsafe node or very close to the
destination) strongly unsafe ones, and finally sideways moves to safe or
ordinary unsafe neighbors. Within a ladder class the lowest dimension
index wins.
"""

from __future__ import annotations

from .routing import RouteStatus, RoutingOutcome, default_max_hops
from .safety import NodeStatus, SafetyClassification
from .topology import hamming_distance


class _Signal:
    def __init__(self, name: str):
        self._name = name

    def __repr__(self):
        return self._name


# chiu_step results that are not a next-hop node
DELIVER = _Signal("DELIVER")
BLOCKED = _Signal("BLOCKED")


def chiu_step(c: int, t: int, classification: SafetyClassification):
    """One ladder decision at node c heading for t.

    Returns the chosen neighbor, DELIVER when c == t, or BLOCKED when no
    ladder class has an admissible neighbor.
    """
    cube = classification.cube
    status = classification.status
    if status[c] == NodeStatus.FAULTY:
        raise ValueError(f"current node {c} is faulty")
    if status[t] == NodeStatus.FAULTY:
        raise ValueError(f"destination node {t} is faulty")

    h = hamming_distance(c, t)
    if h == 0:
        return DELIVER

    towards = cube.towards_destination(c, t)
    toward_dims = sorted(towards)
    side_dims = [j for j in range(cube.dimension) if j not in towards]

    def first(dims, wanted):
        for j in dims:
            v = c ^ (1 << j)
            if status[v] == wanted:
                return v
        return None

    choice = first(toward_dims, NodeStatus.SAFE)
    if choice is None:
        choice = first(toward_dims, NodeStatus.ORDINARY_UNSAFE)
    if choice is None and (status[c] == NodeStatus.STRONGLY_UNSAFE or h <= 2):
        choice = first(toward_dims, NodeStatus.STRONGLY_UNSAFE)
    if choice is None:
        choice = first(side_dims, NodeStatus.SAFE)
    if choice is None:
        choice = first(side_dims, NodeStatus.ORDINARY_UNSAFE)
    return BLOCKED if choice is None else choice


def chiu_route(
    source: int,
    dest: int,
    classification: SafetyClassification,
    max_hops: int | None = None,
) -> RoutingOutcome:
    """Iterate chiu_step from source until delivery, a dead end, or the hop limit."""
    cube = classification.cube
    cube.check_node(source)
    cube.check_node(dest)
    if max_hops is None:
        max_hops = default_max_hops(cube.dimension)
    if max_hops < 1:
        raise ValueError(f"max_hops must be >= 1, got {max_hops}")

    path = [source]
    c = source
    while True:
        step = chiu_step(c, dest, classification)
        if step is DELIVER:
            return RoutingOutcome(path, RouteStatus.DELIVERED)
        if step is BLOCKED:
            return RoutingOutcome(path, RouteStatus.UNDELIVERABLE)
        if len(path) - 1 >= max_hops:
            return RoutingOutcome(path, RouteStatus.HOP_LIMIT_EXCEEDED)
        path.append(step)
        c = step
