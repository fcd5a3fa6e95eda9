"""Classical routing on safety labels: prefer safe progress, sidestep when stuck.

The router only looks one hop ahead. At each node it tries, in order:
a safe neighbor that makes progress, an ordinary-unsafe one, a strongly
unsafe one (only near the destination or from a strongly unsafe node),
then sideways moves through safe or ordinary-unsafe neighbors.
"""

from cuberoute import (
    Hypercube,
    RouteStatus,
    UnsafeRule,
    bfs_shortest,
    chiu_route,
    classify,
    fault_map_from_list,
    hamming_distance,
)


def narrate(n, faults, s, t, max_hops=None):
    cube = Hypercube(n)
    fm = fault_map_from_list(cube, faults)
    cls = classify(cube, fm, UnsafeRule.CHIU)
    out = chiu_route(s, t, cls, max_hops=max_hops)
    w = max(3, n)
    path = " -> ".join(f"{x:0{n}b}" for x in out.path)
    print(f"n={n} faults={sorted(faults)}  {s:0{n}b} -> {t:0{n}b}")
    print(f"  {out.status.value}: {path}")
    print(f"  hops={out.hops}  hamming={hamming_distance(s, t)}  "
          f"bfs={bfs_shortest(cube, fm, s, t)}\n")
    return out


print("fault-free: always a shortest path\n")
narrate(4, [], 0b0000, 0b1111)

print("a fault on the straight line costs a detour of two hops\n")
narrate(3, [0b001, 0b011], 0b000, 0b111)

print("walled-in destination: every route is hopeless, the router reports it\n")
out = narrate(2, [0b01, 0b10], 0b00, 0b11)
assert out.status is RouteStatus.UNDELIVERABLE

print("livelock: a reachable pair the one-hop ladder never resolves;")
print("the hop budget turns the endless sideways walk into a verdict\n")
out = narrate(4, [0, 1, 2, 7], 4, 3)
assert out.status is RouteStatus.HOP_LIMIT_EXCEEDED
