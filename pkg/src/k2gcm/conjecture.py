"""Parity-typed invariant-factor prediction for arbitrary GCMs, and a checker
comparing it with the rule pipeline.

Columns are reordered so that odd columns come first, G is the abelian group
on the column generators with x_i^{a_ji} = x_j^{a_ij}, and its Smith form
supplies orders r_i together with exponent matrices mu (x -> y) and
nu (y -> x).  Canonical generator y_i gets a K_2(F) factor when

* nu_ji is even for every all-even column j, and
* mu_ij is odd for some odd column j;

otherwise a K_2(2,F) factor, which needs r_i even.

The checker only tests necessary conditions at the exponent level; agreement
is evidence, not proof.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .factors import CocyclePart, Factors, K2Factor, SymbolPart, canonicalize, k2_equiv
from .gcm import ColumnParity, Gcm, column_parity
from .intlat import AbelianStructure, in_row_lattice, invariant_factors
from .k2engine import K2Result, k2, odd_column_relations


@dataclass(frozen=True)
class Prediction:
    factors: Optional[Factors]
    order: Tuple[int, ...]              # new position k holds old column order[k]
    structure: AbelianStructure
    symbol_slots: Tuple[bool, ...]      # per canonical generator
    diagnostic: str = ""

    @property
    def resolved(self) -> bool:
        return self.factors is not None

    def transform_disclosure(self) -> str:
        d = self.structure.snf.d
        return (f"Smith form (smallest-pivot, lowest-index tie-break) on columns ordered "
                f"{[i + 1 for i in self.order]}; diagonal {list(d)}; "
                f"mu={[list(r) for r in self.structure.to_canonical]}; "
                f"nu={[list(r) for r in self.structure.from_canonical]}")


def odd_first_order(g: Gcm) -> List[int]:
    par = column_parity(g)
    odd = [i for i in range(g.n) if par[i] is ColumnParity.ODD_PRESENT]
    even = [i for i in range(g.n) if par[i] is ColumnParity.ALL_EVEN]
    return odd + even


def predict_structure(g: Gcm) -> Prediction:
    """Prediction together with the transforms it was read from."""
    order = odd_first_order(g)
    h = g.permuted(order)
    k = sum(1 for c in column_parity(h) if c is ColumnParity.ODD_PRESENT)
    st = invariant_factors(odd_column_relations(h), h.n)
    mu, nu = st.to_canonical, st.from_canonical
    n = h.n
    kinds = []
    factors: List[K2Factor] = []
    problems = []
    for i in range(n):
        nu_even = all(nu[j][i] % 2 == 0 for j in range(k, n))
        mu_odd = any(mu[i][j] % 2 for j in range(k))
        symbol = nu_even and mu_odd
        kinds.append(symbol)
        r = st.orders[i]
        if symbol:
            factors.append(SymbolPart(r))
        elif r % 2:
            problems.append(f"generator y{i + 1} is a K2(2,F) slot of odd order {r}")
        else:
            factors.append(CocyclePart(r // 2))
    if problems:
        return Prediction(None, tuple(order), st, tuple(kinds), "; ".join(problems))
    return Prediction(canonicalize(factors), tuple(order), st, tuple(kinds))


def conjecture_predict(g: Gcm) -> K2Result:
    pred = predict_structure(g)
    notes = (pred.transform_disclosure(),) + ((pred.diagnostic,) if pred.diagnostic else ())
    return K2Result(pred.factors, (), None, notes)


class Verdict(enum.Enum):
    AGREE = "agree"
    DISAGREE = "disagree"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ConjectureReport:
    verdict: Verdict
    prediction: Prediction
    pipeline: K2Result
    checks: Dict[str, bool] = field(default_factory=dict)
    reason: str = ""


def exponent_checks(g: Gcm, pred: Prediction) -> Dict[str, bool]:
    """Necessary conditions on the candidate maps Phi and Psi.

    * ``phi_kills_relations``: every relator of G maps into the target's
      relation lattice (exponent of y_i divisible by r_i);
    * ``round_trip``: nu @ mu is the identity modulo the relations of G;
    * ``phi_parity``: an odd source column only hits K_2(2,F) targets with
      even exponents, so its image is a Steinberg symbol;
    * ``psi_parity``: a K_2(F) target only pulls back even exponents from
      all-even source columns.
    """
    h = g.permuted(pred.order)
    n = h.n
    st = pred.structure
    mu, nu, r = st.to_canonical, st.from_canonical, st.orders
    rels = odd_column_relations(h)
    par = column_parity(h)

    kills = True
    for row in rels:
        img = [sum(mu[i][j] * row[j] for j in range(n)) for i in range(n)]
        if any((x != 0) if r[i] == 0 else (x % r[i] != 0) for i, x in enumerate(img)):
            kills = False
    round_trip = True
    for i in range(n):
        comp = [sum(nu[j][m] * mu[m][i] for m in range(n)) for j in range(n)]
        comp[i] -= 1
        if not in_row_lattice(comp, rels):
            round_trip = False
    phi_parity = all(mu[t][i] % 2 == 0
                     for i in range(n) if par[i] is ColumnParity.ODD_PRESENT
                     for t in range(n) if not pred.symbol_slots[t])
    psi_parity = all(nu[j][t] % 2 == 0
                     for t in range(n) if pred.symbol_slots[t]
                     for j in range(n) if par[j] is ColumnParity.ALL_EVEN)
    return {"phi_kills_relations": kills, "round_trip": round_trip,
            "phi_parity": phi_parity, "psi_parity": psi_parity}


def conjecture_check(g: Gcm) -> ConjectureReport:
    pipe = k2(g)
    pred = predict_structure(g)
    if not pipe.resolved:
        return ConjectureReport(Verdict.UNKNOWN, pred, pipe, reason="pipeline unresolved")
    if not pred.resolved:
        return ConjectureReport(Verdict.UNKNOWN, pred, pipe, reason=pred.diagnostic)
    checks = exponent_checks(g, pred)
    agree = k2_equiv(pipe.factors, pred.factors)
    verdict = Verdict.AGREE if agree else Verdict.DISAGREE
    reason = "" if agree else "factor multisets differ"
    return ConjectureReport(verdict, pred, pipe, checks, reason)
