"""
The 123 hyperbolic GCMs of rank three
=====================================

"""

from collections import Counter

from k2gcm import k2
from k2gcm.catalog import enumerate_rank3_hyperbolic, partition_lines, rank3_partition
from k2gcm.k2engine import DEFAULT_RULES

# Every 2x2 principal block of a rank-3 hyperbolic matrix is finite or
# affine, so a_ij * a_ji <= 4.  That bounds the search.

mats = enumerate_rank3_hyperbolic()
print(len(mats), "matrices")

# Which rule settles each one?  trace[0] records the block split, so
# trace[1] is the first rule that applied.  A leaf deletion then recurses on
# a smaller matrix.

used = Counter(k2(g).trace[1].rule for g in mats)
for rule, n in used.most_common():
    print(f"{rule:>14} {n}")

# Without the lookup table some matrices stay open.

no_table = tuple(r for r in DEFAULT_RULES if r != "catalog")
open_ = [g for g in mats if not k2(g, no_table).resolved]
print(len(open_), "need the table")
for g in open_:
    print("  ", g)

# The successive categories used to cover all 123, with a comparison to the
# published counts.  The lone -1 count differs: two of those columns hang
# on a column whose only other entry is even, so deleting them is not safe.

for line in partition_lines(rank3_partition(mats)):
    print(line)
