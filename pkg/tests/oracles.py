"""Independent reference implementations used to check the library.

Everything here is deliberately written against the definitions, not the
library: plain Python ints, sets, and loops, no imports from cuberoute.
Slow is fine; these run on networks of at most a few hundred nodes.
"""

from collections import deque


def popcount(x: int) -> int:
    return bin(x).count("1")


def node_neighbors(n: int, x: int) -> list:
    return [x ^ (1 << j) for j in range(n)]


def brute_force_classify(n, faulty, rule, order=None):
    """Least fixed point of the unsafe-node rules, one node at a time.

    rule: "chiu" marks a non-faulty node unsafe on >=2 faulty or >=3 unsafe
    neighbors; "lee" on >=2 neighbors that are faulty or unsafe, counted
    jointly. `order` fixes the scan order (any order must give the same
    fixed point). Returns a dict node -> "faulty"/"safe"/"ordinary"/"strongly".
    """
    faulty = set(faulty)
    nodes = list(range(2 ** n)) if order is None else list(order)
    unsafe = set()
    changed = True
    while changed:
        changed = False
        for x in nodes:
            if x in faulty or x in unsafe:
                continue
            nbrs = node_neighbors(n, x)
            nf = sum(1 for v in nbrs if v in faulty)
            nu = sum(1 for v in nbrs if v in unsafe)
            if rule == "chiu":
                hit = nf >= 2 or nu >= 3
            elif rule == "lee":
                hit = nf + nu >= 2
            else:
                raise ValueError(rule)
            if hit:
                unsafe.add(x)
                changed = True
    status = {}
    for x in range(2 ** n):
        if x in faulty:
            status[x] = "faulty"
        elif x not in unsafe:
            status[x] = "safe"
        else:
            has_safe = any(
                v not in faulty and v not in unsafe for v in node_neighbors(n, x)
            )
            status[x] = "ordinary" if has_safe else "strongly"
    return status


def ref_far_cost(n, faulty, neighbor, dest, k3, k4, eps):
    """Eq-by-eq evaluation of the routing cost with scalar loops."""
    cost = k3 * popcount(neighbor ^ dest)
    for f in faulty:
        cost += k4 / (popcount(neighbor ^ f) + eps)
    return cost


def ref_energy(costs, mask, v, k1, k2):
    """Decision energy from its definition, scalar loops only."""
    picked = 0.0
    total = 0.0
    for g, m, x in zip(costs, mask, v):
        if m:
            picked += g * x
        total += x
    return k1 * picked ** 2 + k2 * (total - 1.0) ** 2


def ref_bfs(n, faulty, source, dest):
    """Shortest fault-avoiding path length or None, dict-based BFS."""
    faulty = set(faulty)
    if source == dest:
        return 0
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for v in node_neighbors(n, x):
            if v in dist or v in faulty:
                continue
            dist[v] = dist[x] + 1
            if v == dest:
                return dist[v]
            queue.append(v)
    return None


def ref_chiu_step(n, status, c, t):
    """The routing ladder from the status dict; "deliver", "blocked", or a node.

    Priority: toward-safe, toward-ordinary, toward-strongly (only when the
    current node is strongly unsafe or the distance is at most 2), then
    sideways-safe, sideways-ordinary. Lowest dimension wins within a class.
    """
    if c == t:
        return "deliver"
    h = popcount(c ^ t)
    toward = [j for j in range(n) if ((c >> j) & 1) != ((t >> j) & 1)]
    side = [j for j in range(n) if j not in toward]

    def pick(dims, allowed):
        for j in sorted(dims):
            v = c ^ (1 << j)
            if status[v] in allowed:
                return v
        return None

    v = pick(toward, ("safe",))
    if v is None:
        v = pick(toward, ("ordinary",))
    if v is None and (status[c] == "strongly" or h <= 2):
        v = pick(toward, ("strongly",))
    if v is None:
        v = pick(side, ("safe",))
    if v is None:
        v = pick(side, ("ordinary",))
    return "blocked" if v is None else v
