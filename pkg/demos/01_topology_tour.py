"""Tour of the hypercube geometry underneath everything else.

Nodes are n-bit integers; flipping one bit moves to a neighbor; the
Hamming distance counts the bit flips a message needs.
"""

from cuberoute import Hypercube, hamming_distance

cube = Hypercube(4)
print(f"{cube.dimension}-cube: {cube.node_count} nodes, {cube.dimension} links each")

x = 0b0110
print(f"\nnode  {x:04b}")
for j, v in enumerate(cube.neighbors(x)):
    print(f"  dim {j} -> {v:04b}")

s, t = 0b0000, 0b1011
print(f"\nfrom {s:04b} to {t:04b}:")
print(f"  hamming distance   {hamming_distance(s, t)}")
dims = sorted(cube.towards_destination(s, t))
print(f"  useful dimensions  {dims}")

c = s
print(f"  one shortest path  {c:04b}", end="")
for j in dims:
    c = cube.neighbor_in_dim(c, j)
    print(f" -> {c:04b}", end="")
print()

# every step along a useful dimension gets strictly closer
c, h = s, hamming_distance(s, t)
for j in dims:
    c = cube.neighbor_in_dim(c, j)
    assert hamming_distance(c, t) == h - 1
    h -= 1
print("\neach hop along a useful dimension cuts the distance by exactly 1")
