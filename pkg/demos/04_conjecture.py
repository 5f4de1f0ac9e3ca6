"""
Predicting K2 from parity-typed invariant factors
=================================================

"""

from k2gcm import render_factors, validate
from k2gcm.catalog import enumerate_rank3_hyperbolic
from k2gcm.conjecture import Verdict, conjecture_check

# The prediction orders columns odd-first, takes the Smith form of G, and
# types each canonical generator as a K2(F) or K2(2,F) slot from parities of
# the transform matrices.

A = validate([[2, -2], [-2, 2]])
rep = conjecture_check(A)
print(rep.verdict.value, render_factors(rep.prediction.factors))
print(rep.prediction.transform_disclosure())

# Across the rank-3 hyperbolics it agrees with the rules almost everywhere.

reports = [(g, conjecture_check(g)) for g in enumerate_rank3_hyperbolic()]
print(sum(r.verdict is Verdict.AGREE for _, r in reports), "of", len(reports), "agree")

# The exceptions, with the necessary-condition checks that fail for them.

for g, r in reports:
    if r.verdict is Verdict.DISAGREE:
        failed = [k for k, ok in r.checks.items() if not ok]
        print(g)
        print("   rules:     ", render_factors(r.pipeline.factors))
        print("   prediction:", render_factors(r.prediction.factors))
        print("   failed checks:", failed)
