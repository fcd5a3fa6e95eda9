"""Hypercube geometry: node addresses, neighbors, Hamming distance.

Nodes are plain unsigned integers; bit j of the address is the coordinate
along dimension j, so XOR and popcount give the neighbor relation and the
Hamming distance directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

# Upper bound keeps fault maps and per-node tables addressable.
MAX_DIMENSION = 30


def hamming_distance(x: int, y: int) -> int:
    """Number of differing address bits; equals the fault-free shortest-path length."""
    return (x ^ y).bit_count()


@dataclass(frozen=True)
class Hypercube:
    """An n-dimensional binary hypercube with 2**n nodes."""

    dimension: int

    def __post_init__(self):
        if not 1 <= self.dimension <= MAX_DIMENSION:
            raise ValueError(
                f"dimension must be in [1, {MAX_DIMENSION}], got {self.dimension}"
            )

    @property
    def node_count(self) -> int:
        return 1 << self.dimension

    def check_node(self, x: int) -> None:
        if not 0 <= x < self.node_count:
            raise ValueError(f"node {x} out of range for a {self.dimension}-cube")

    def neighbor_in_dim(self, x: int, j: int) -> int:
        """The node reached from x by flipping address bit j."""
        self.check_node(x)
        if not 0 <= j < self.dimension:
            raise ValueError(f"dimension index {j} out of range [0, {self.dimension})")
        return x ^ (1 << j)

    def neighbors(self, x: int) -> list[int]:
        """All n neighbors of x, ordered by ascending dimension index."""
        self.check_node(x)
        return [x ^ (1 << j) for j in range(self.dimension)]

    def towards_destination(self, c: int, t: int) -> set[int]:
        """Dimension indices along which stepping from c moves one hop closer to t.

        Empty iff c == t; its size equals hamming_distance(c, t).
        """
        self.check_node(c)
        self.check_node(t)
        diff = c ^ t
        return {j for j in range(self.dimension) if (diff >> j) & 1}

    @cached_property
    def neighbor_table(self) -> np.ndarray:
        """(node_count, dimension) array; row x lists neighbors of x by dimension."""
        nodes = np.arange(self.node_count, dtype=np.int64)
        flips = np.int64(1) << np.arange(self.dimension, dtype=np.int64)
        return nodes[:, None] ^ flips[None, :]
