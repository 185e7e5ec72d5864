"""Walk through the unit group modulo a small prime.

Every unit is a quadratic residue, a primitive root, or a QNRNP (a
non-residue that does not generate the group).  The index table makes the
split visible: even index, odd index coprime to p - 1, odd index sharing a
factor with p - 1.
"""

import math
import sys

from qnrnp import build_index_table, classify_unit, qnrnp_set

p = int(sys.argv[1]) if len(sys.argv) > 1 else 13
table = build_index_table(p)
print(f"p = {p}, smallest primitive root {table.root}")
print(f"{'v':>4} {'ind':>4} {'gcd':>4}  class")
for v in range(1, p):
    k = table.ind(v)
    print(f"{v:>4} {k:>4} {math.gcd(k, p - 1):>4}  {classify_unit(v, p).value}")

print("QNRNPs:", qnrnp_set(p))
