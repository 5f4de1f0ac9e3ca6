"""
Rank two: a table of K2 for [[2,-b],[-a,2]]
===========================================

"""

from k2gcm import classify_indecomposable, k2, k2_equiv, validate
from k2gcm.factors import factor_token
from k2gcm.k2engine import reduce_rank2

# Rank-2 matrices are finite for ab <= 3, affine for ab = 4, and hyperbolic
# beyond that.

N = 8
for a in range(1, N + 1):
    row = []
    for b in range(1, N + 1):
        kind = classify_indecomposable(validate([[2, -b], [-a, 2]])).kind.value
        row.append(kind[0].upper())
    print(a, " ".join(row))

# K2 depends only on the parities of a and b and on a gcd.  Tokens: S0 is
# K2(F), Sr is K2(F)/r, C0 is K2(2,F), Cr is K2(2,F)/r<{u^2,v}>.

for a in range(1, N + 1):
    cells = []
    for b in range(1, N + 1):
        fs = reduce_rank2(a, b)
        cells.append("x".join(factor_token(f) for f in fs).ljust(7))
    print(a, " ".join(cells))

# The general pipeline agrees with the closed form whenever ab > 4, up to
# splitting K2(F)/15 into K2(F)/3 x K2(F)/5.

mismatches = [(a, b) for a in range(1, 16) for b in range(1, 16)
              if a * b > 4 and not k2_equiv(k2(validate([[2, -b], [-a, 2]])).factors,
                                            reduce_rank2(a, b))]
print("mismatches:", mismatches)
