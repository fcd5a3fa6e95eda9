"""Safe and unsafe nodes: how faults poison their surroundings.

A non-faulty node becomes unsafe when too many of its neighbors are faulty
or unsafe; unsafe nodes with no safe neighbor at all are strongly unsafe.
The two published rules disagree on how to count.
"""

from cuberoute import (
    Hypercube,
    NodeStatus,
    UnsafeRule,
    classify,
    fault_map_from_list,
)

SYMBOL = {
    NodeStatus.SAFE: ".",
    NodeStatus.ORDINARY_UNSAFE: "u",
    NodeStatus.STRONGLY_UNSAFE: "U",
    NodeStatus.FAULTY: "X",
}


def show(cube, cls, title):
    row = " ".join(SYMBOL[cls.status_of(x)] for x in range(cube.node_count))
    print(f"{title:28s} {row}   (unsafe: {cls.unsafe_count})")


cube = Hypercube(3)
print("nodes 0..7, X faulty, u ordinary unsafe, U strongly unsafe\n")

fm = fault_map_from_list(cube, [0b000, 0b011])
show(cube, classify(cube, fm, UnsafeRule.CHIU), "faults {0,3}, chiu rule")
print("  -> 1 and 2 sit between both faults; each sees 2 faulty neighbors\n")

two = Hypercube(2)
cls = classify(two, fault_map_from_list(two, [0b01, 0b10]), UnsafeRule.CHIU)
print("2-cube, faults {1,2}:",
      " ".join(SYMBOL[cls.status_of(x)] for x in range(4)))
print("  -> 0 and 3 are strongly unsafe: no safe neighbor is left\n")

# lee's joint count cascades where chiu's separate thresholds stay quiet
four = Hypercube(4)
fm4 = fault_map_from_list(four, [0b0000, 0b0011, 0b1100])
show(four, classify(four, fm4, UnsafeRule.CHIU), "4-cube {0,3,12}, chiu rule")
show(four, classify(four, fm4, UnsafeRule.LEE), "4-cube {0,3,12}, lee rule")
print("  -> one faulty plus one unsafe neighbor already fires lee's rule,")
print("     so the unsafe region spreads across the whole cube\n")

# chiu's separate counters make the rule non-monotone in the fault set
before = classify(cube, fault_map_from_list(cube, [0, 3, 5]), UnsafeRule.CHIU)
after = classify(cube, fault_map_from_list(cube, [0, 2, 3, 5]), UnsafeRule.CHIU)
show(cube, before, "faults {0,3,5}, chiu rule")
show(cube, after, "faults {0,2,3,5}, chiu rule")
print("  -> adding the fault at 2 RESCUES node 6: its unsafe-neighbor count")
print("     drops from 3 to 2 while only 1 neighbor is faulty")
