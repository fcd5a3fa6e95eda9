"""Fault-tolerant routing laboratory for n-dimensional hypercube networks.

Three routers over a common topology and fault model:

* chiu_route: classical safety-vector routing on safe/unsafe node labels
* far_route in HOPFIELD mode: per-hop neighbor choice by a continuous
  Hopfield network minimizing a fault-proximity cost
* far_route in ARGMIN mode: the same cost minimized exactly

plus a seeded Monte Carlo harness (run_case, sweep) that reports delivery
counts and fault-free-normalized path lengths, and a CLI (cuberoute) that
emits the sweep as CSV or JSON.
"""

from .topology import MAX_DIMENSION, Hypercube, hamming_distance
from .safety import (
    FaultMap,
    NodeStatus,
    SafetyClassification,
    UnsafeRule,
    classify,
    fault_map_from_list,
    random_fault_map,
)
from .routing import (
    PathAuditError,
    RouteStatus,
    RoutingOutcome,
    audit_path,
    default_max_hops,
)
from .chiu import chiu_route, chiu_step
from .far import (
    DecisionMode,
    DecisionRecord,
    FarParams,
    HopfieldState,
    build_hopfield,
    far_argmin,
    far_cost,
    far_route,
    hopfield_energy,
    hopfield_run,
    neighbor_costs,
)
from .harness import (
    CaseError,
    CaseSpec,
    CaseStats,
    Router,
    RunTally,
    bfs_shortest,
    finalize,
    run_case,
    sweep,
    tally_runs,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_DIMENSION",
    "Hypercube",
    "hamming_distance",
    "FaultMap",
    "NodeStatus",
    "SafetyClassification",
    "UnsafeRule",
    "classify",
    "fault_map_from_list",
    "random_fault_map",
    "PathAuditError",
    "RouteStatus",
    "RoutingOutcome",
    "audit_path",
    "default_max_hops",
    "chiu_route",
    "chiu_step",
    "DecisionMode",
    "DecisionRecord",
    "FarParams",
    "HopfieldState",
    "build_hopfield",
    "far_argmin",
    "far_cost",
    "far_route",
    "hopfield_energy",
    "hopfield_run",
    "neighbor_costs",
    "CaseError",
    "CaseSpec",
    "CaseStats",
    "Router",
    "RunTally",
    "bfs_shortest",
    "finalize",
    "run_case",
    "sweep",
    "tally_runs",
    "__version__",
]
