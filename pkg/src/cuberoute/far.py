"""Fault avoidance routing (FAR) via a continuous-time Hopfield network.

Each hop scores every neighbor with a cost that mixes progress toward the
destination with proximity to the whole fault set:

    cost(v) = K3 * d(v, dest) + K4 * sum over faulty k of 1 / (d(v, k) + eps)

The neighbor with the smallest cost should carry the message. That argmin
is embedded in a Hopfield network with one neuron per dimension and energy

    E(V) = K1 * (sum_j cost_j * V_j)**2 + K2 * (sum_j V_j - 1)**2

whose gradient yields closed-form weights and thresholds

    W[j, k] = -(2*K1*cost_j*cost_k + 2*K2)        T[j] = 2*K2

so integrating dU_j/dt = sum_k W[j,k]*V_k + T_j with a sigmoid readout
V_j = 1 / (1 + exp(-gain*U_j)) settles toward a one-hot V selecting the
cheapest admissible neighbor. A deterministic argmin oracle is provided
both as an alternative decision mode and as the fallback when the network
fails to produce a clear winner.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .routing import RouteStatus, RoutingOutcome, default_max_hops
from .safety import FaultMap
from .topology import Hypercube, hamming_distance


@dataclass(frozen=True)
class FarParams:
    """Cost and dynamics coefficients; defaults follow the reference tuning."""

    k1: float = 0.01  # energy weight on the cost-of-chosen-neighbor term
    k2: float = 15.0  # energy weight on the pick-exactly-one term
    k3: float = 1.0  # cost weight on distance to destination
    k4: float = 0.42  # cost weight on fault proximity
    epsilon: float = 0.01  # divergence guard in the inverse-distance sum
    dt: float = 1e-3  # Euler step size
    gain: float = 50.0  # sigmoid steepness
    conv_tol: float = 1e-6  # convergence threshold on max |dV|
    conv_steps: int = 3  # consecutive quiet steps required
    max_iters: int = 10_000  # iteration cap
    winner_floor: float = 0.5  # minimum output level to accept a winner
    zero_diagonal: bool = False  # zero the self-weights W[j, j]

    def __post_init__(self):
        for name in ("k1", "k2", "k3", "k4", "epsilon", "dt", "gain"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0 < self.winner_floor < 1:
            raise ValueError("winner_floor must be in (0, 1)")
        if self.conv_steps < 1 or self.max_iters < 1:
            raise ValueError("conv_steps and max_iters must be >= 1")


class DecisionMode(Enum):
    HOPFIELD = "hopfield"
    ARGMIN = "argmin"


@dataclass
class HopfieldState:
    """One routing decision's network: n neurons, one per dimension."""

    U: np.ndarray
    V: np.ndarray
    W: np.ndarray
    T: np.ndarray
    costs: np.ndarray
    candidate_mask: np.ndarray
    iterations: int = 0
    energy_trace: np.ndarray | None = field(default=None, repr=False)


def far_cost(
    cube: Hypercube, faults: FaultMap, neighbor: int, dest: int, params: FarParams
) -> float:
    """Routing cost of handing the message to `neighbor` when heading for `dest`."""
    cube.check_node(neighbor)
    cube.check_node(dest)
    cost = params.k3 * hamming_distance(neighbor, dest)
    fn = faults.faulty_nodes
    if fn.size:
        dists = np.bitwise_count(np.int64(neighbor) ^ fn).astype(np.float64)
        cost += params.k4 * float((1.0 / (dists + params.epsilon)).sum())
    return float(cost)


def neighbor_costs(
    cube: Hypercube, faults: FaultMap, node: int, dest: int, params: FarParams
) -> np.ndarray:
    """far_cost of every neighbor of `node`, indexed by dimension."""
    cube.check_node(node)
    cube.check_node(dest)
    nbrs = np.int64(node) ^ (np.int64(1) << np.arange(cube.dimension, dtype=np.int64))
    costs = params.k3 * np.bitwise_count(nbrs ^ np.int64(dest)).astype(np.float64)
    fn = faults.faulty_nodes
    if fn.size:
        dists = np.bitwise_count(nbrs[:, None] ^ fn[None, :]).astype(np.float64)
        costs += params.k4 * (1.0 / (dists + params.epsilon)).sum(axis=1)
    return costs


def far_argmin(costs: Sequence[float] | np.ndarray, candidate_mask=None) -> int:
    """Admissible dimension with the smallest cost; ties go to the lowest index."""
    costs = np.asarray(costs, dtype=np.float64)
    if candidate_mask is None:
        candidate_mask = np.ones(costs.shape, dtype=bool)
    idx = np.flatnonzero(candidate_mask)
    if idx.size == 0:
        raise ValueError("no admissible candidates")
    return int(idx[np.argmin(costs[idx])])


def build_hopfield(
    costs: Sequence[float] | np.ndarray,
    candidate_mask=None,
    params: FarParams | None = None,
    rng: np.random.Generator | None = None,
) -> HopfieldState:
    """Weights, thresholds, and initial state for one routing decision.

    Inadmissible neurons are clamped off (V = 0, zero weight rows). Initial
    outputs start at 1/n_admissible plus, when an rng is supplied, uniform
    noise in [-0.01, 0.01] to break symmetry deterministically.
    """
    params = params or FarParams()
    costs = np.asarray(costs, dtype=np.float64)
    n = costs.shape[0]
    if candidate_mask is None:
        candidate_mask = np.ones(n, dtype=bool)
    mask = np.asarray(candidate_mask, dtype=bool)
    n_adm = int(mask.sum())
    if n_adm == 0:
        raise ValueError("no admissible candidates")

    g = np.where(mask, costs, 0.0)
    W = -(2.0 * params.k1 * np.outer(g, g) + 2.0 * params.k2)
    W[~mask, :] = 0.0
    W[:, ~mask] = 0.0
    if params.zero_diagonal:
        np.fill_diagonal(W, 0.0)
    T = np.where(mask, 2.0 * params.k2, 0.0)

    v0 = np.full(n_adm, 1.0 / n_adm)
    if rng is not None:
        v0 = v0 + rng.uniform(-0.01, 0.01, size=n_adm)
    # keep the inverse sigmoid finite
    v0 = np.clip(v0, 1e-6, 1.0 - 1e-6)
    V = np.zeros(n)
    V[mask] = v0
    U = np.zeros(n)
    U[mask] = np.log(v0 / (1.0 - v0)) / params.gain
    return HopfieldState(U=U, V=V, W=W, T=T, costs=costs, candidate_mask=mask)


def hopfield_energy(state: HopfieldState, params: FarParams) -> float:
    """E(V) for the state's current outputs."""
    g = np.where(state.candidate_mask, state.costs, 0.0)
    picked = float(g @ state.V)
    total = float(state.V.sum())
    return params.k1 * picked**2 + params.k2 * (total - 1.0) ** 2


def _euler_descend(U, V, W, T, mask, g, gain, dt, k1, k2, conv_tol, conv_steps,
                   max_iters, energy, record):
    """Integrate dU/dt = W @ V + T until V settles; returns the step count.

    V is read out through the sigmoid (tanh form, overflow-safe). Updates are
    simultaneous: all dU terms use the previous step's V. When `record` is
    set, energy[i] holds E(V) after i steps.
    """
    n = U.shape[0]
    if record:
        picked = 0.0
        total = 0.0
        for j in range(n):
            picked += g[j] * V[j]
            total += V[j]
        energy[0] = k1 * picked * picked + k2 * (total - 1.0) * (total - 1.0)
    streak = 0
    it = 0
    while it < max_iters:
        it += 1
        for j in range(n):
            if mask[j]:
                acc = T[j]
                for k in range(n):
                    acc += W[j, k] * V[k]
                U[j] = U[j] + dt * acc
        dmax = 0.0
        for j in range(n):
            if mask[j]:
                v = 0.5 * (np.tanh(0.5 * gain * U[j]) + 1.0)
                d = abs(v - V[j])
                if d > dmax:
                    dmax = d
                V[j] = v
        if record:
            picked = 0.0
            total = 0.0
            for j in range(n):
                picked += g[j] * V[j]
                total += V[j]
            energy[it] = k1 * picked * picked + k2 * (total - 1.0) * (total - 1.0)
        if dmax < conv_tol:
            streak += 1
            if streak >= conv_steps:
                break
        else:
            streak = 0
    return it


try:  # compiled kernel; the pure-Python body above is the fallback
    from numba import njit

    _euler_descend = njit(cache=True)(_euler_descend)
except ImportError:  # pragma: no cover
    pass


def hopfield_run(
    state: HopfieldState, params: FarParams, record_energy: bool = False
) -> tuple[int | None, int]:
    """Run the dynamics to convergence or the iteration cap.

    Returns (winner, iterations); winner is the admissible dimension with the
    largest output if that output reaches winner_floor, else None. Mutates
    the state (U, V, iterations, and energy_trace when recorded).
    """
    g = np.where(state.candidate_mask, state.costs, 0.0)
    energy = np.zeros(params.max_iters + 1 if record_energy else 1)
    iters = _euler_descend(
        state.U, state.V, state.W, state.T, state.candidate_mask, g,
        params.gain, params.dt, params.k1, params.k2,
        params.conv_tol, params.conv_steps, params.max_iters,
        energy, record_energy,
    )
    state.iterations = int(iters)
    if record_energy:
        state.energy_trace = energy[: iters + 1].copy()
    masked_v = np.where(state.candidate_mask, state.V, -np.inf)
    winner = int(np.argmax(masked_v))
    if state.V[winner] < params.winner_floor:
        return None, state.iterations
    return winner, state.iterations


@dataclass(frozen=True)
class DecisionRecord:
    """Telemetry for one hop decision."""

    hop: int
    node: int
    chosen_dim: int
    argmin_dim: int
    iterations: int
    fallback: bool

    @property
    def agreed(self) -> bool:
        return self.chosen_dim == self.argmin_dim


def far_route(
    source: int,
    dest: int,
    cube: Hypercube,
    faults: FaultMap,
    params: FarParams | None = None,
    max_hops: int | None = None,
    mode: DecisionMode = DecisionMode.HOPFIELD,
    seed: int | Sequence[int] = 0,
) -> tuple[RoutingOutcome, list[DecisionRecord]]:
    """Route by repeatedly picking the cheapest admissible neighbor.

    Admissible candidates are the non-faulty neighbors of the current node.
    In HOPFIELD mode each decision runs its own network, seeded from
    (seed, hop index), and falls back to the argmin oracle when no winner
    emerges; ARGMIN mode uses the oracle directly. Returns the outcome and
    the per-hop decision telemetry.
    """
    params = params or FarParams()
    cube.check_node(source)
    cube.check_node(dest)
    if faults.is_faulty(source):
        raise ValueError(f"source node {source} is faulty")
    if faults.is_faulty(dest):
        raise ValueError(f"destination node {dest} is faulty")
    if max_hops is None:
        max_hops = default_max_hops(cube.dimension)
    if max_hops < 1:
        raise ValueError(f"max_hops must be >= 1, got {max_hops}")
    entropy = (int(seed),) if isinstance(seed, (int, np.integer)) else tuple(int(s) for s in seed)

    path = [source]
    records: list[DecisionRecord] = []
    c = source
    while True:
        if c == dest:
            return RoutingOutcome(path, RouteStatus.DELIVERED), records
        nbrs = cube.neighbors(c)
        mask = np.array([not faults.is_faulty(v) for v in nbrs])
        if not mask.any():
            return RoutingOutcome(path, RouteStatus.UNDELIVERABLE), records
        if len(path) - 1 >= max_hops:
            return RoutingOutcome(path, RouteStatus.HOP_LIMIT_EXCEEDED), records

        hop = len(path) - 1
        costs = neighbor_costs(cube, faults, c, dest, params)
        am = far_argmin(costs, mask)
        if mode is DecisionMode.HOPFIELD:
            rng = np.random.default_rng((*entropy, hop))
            net = build_hopfield(costs, mask, params, rng=rng)
            winner, iters = hopfield_run(net, params)
            fallback = winner is None
            chosen = am if fallback else winner
        else:
            chosen, iters, fallback = am, 0, False
        records.append(
            DecisionRecord(hop=hop, node=c, chosen_dim=chosen, argmin_dim=am,
                           iterations=iters, fallback=fallback)
        )
        c = nbrs[chosen]
        path.append(c)
