"""
K2 of a GCM whose columns all contain an odd entry
==================================================

"""

# When every column has an odd entry, K2(A,F) is a product of quotients of
# K2(F), one for each invariant factor of a small abelian group G.

from k2gcm import k2, render_factors, validate
from k2gcm.intlat import invariant_factors, smith_normal_form
from k2gcm.k2engine import odd_column_relations

A = validate([[2, -1, -3],
              [-3, 2, -1],
              [-1, -3, 2]])
print(A)

# G has one generator per column and one relation x_i^{a_ji} = x_j^{a_ij}
# per bonded pair.  Each row below is the exponent vector of one relation.

rels = odd_column_relations(A)
for row in rels:
    print(row)

# Smith normal form of the relation matrix gives the invariant factors.

snf = smith_normal_form(rels)
print("diagonal:", snf.d)
G = invariant_factors(rels, A.n)
print("torsion:", G.torsion, "free rank:", G.free_rank)

# Z/26 splits as Z/2 x Z/13, and k2 reports the split form.

res = k2(A)
print(render_factors(res.factors))

# Each step of the derivation is recorded along with the rule behind it.

for step in res.trace:
    print("  " * step.depth, step.rule, "-", step.citation)
