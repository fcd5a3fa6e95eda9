"""One neural routing decision, opened up.

Each candidate neighbor gets a cost: distance to the destination plus a
penalty for sitting close to faults. A tiny Hopfield network with one
neuron per dimension relaxes to a one-hot vote for the cheapest neighbor;
its energy can only fall along the way.
"""

import numpy as np

from cuberoute import (
    DecisionMode,
    FarParams,
    Hypercube,
    build_hopfield,
    far_argmin,
    far_route,
    fault_map_from_list,
    hopfield_run,
    neighbor_costs,
)

cube = Hypercube(4)
fm = fault_map_from_list(cube, [0b0011, 0b1010, 0b1100])
params = FarParams()
c, dest = 0b0010, 0b1101

print(f"at {c:04b}, heading for {dest:04b}, faults "
      f"{[f'{int(x):04b}' for x in fm.faulty_nodes]}\n")

costs = neighbor_costs(cube, fm, c, dest, params)
mask = np.array([not fm.is_faulty(v) for v in cube.neighbors(c)])
for j, v in enumerate(cube.neighbors(c)):
    note = "faulty, inadmissible" if not mask[j] else f"cost {costs[j]:.4f}"
    print(f"  dim {j}: {v:04b}  {note}")

state = build_hopfield(costs, mask, params, rng=np.random.default_rng(5))
print(f"\nthresholds T = {state.T}")
print(f"weights W =\n{np.array_str(state.W, precision=3)}")

winner, iterations = hopfield_run(state, params, record_energy=True)
trace = state.energy_trace
print(f"\nafter {iterations} Euler steps: V = {np.round(state.V, 4)}")
print(f"energy {trace[0]:.5f} -> {trace[-1]:.6f}, never increasing: "
      f"{bool(np.all(np.diff(trace) <= 1e-9 * np.abs(trace[:-1])))}")
pick = f"dim {winner}" if winner is not None else "no clear winner (router falls back to argmin)"
print(f"network's pick: {pick}   exact argmin: dim {far_argmin(costs, mask)}")

out, records = far_route(c, dest, cube, fm, params, seed=5)
picks = " -> ".join(f"{x:04b}" for x in out.path)
print(f"\nfull route ({out.status.value}): {picks}")
for r in records:
    tag = "fallback to argmin" if r.fallback else (
        "agrees with argmin" if r.agreed else "tie broken differently")
    print(f"  hop {r.hop} at {r.node:04b}: dim {r.chosen_dim} "
          f"after {r.iterations} steps ({tag})")

exact, _ = far_route(c, dest, cube, fm, params, mode=DecisionMode.ARGMIN)
print(f"argmin-oracle route, same cost function: "
      f"{' -> '.join(f'{x:04b}' for x in exact.path)}")
