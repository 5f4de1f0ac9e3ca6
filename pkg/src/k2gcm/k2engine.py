"""Reduce K_2(A,F) to a product of quotients of K_2(F) and K_2(2,F).

:func:`k2` splits A into indecomposable blocks and then tries the reduction
rules in a fixed order, recording every applied rule in a trace:

================  ==========================================================
``components``    direct product over indecomposable blocks
``finite-affine`` closed forms for finite and affine blocks
``R-SL``          simply-laced blocks give K_2(F)
``R-ODD``         every column odd: invariant factors of the exponent group
``R-RANK2``       closed forms for 2x2 matrices
``R-DEL``         delete a K_2(F) slot through a -1 entry, then recurse or
                  resolve the residual presentation
``R-C1/C2/C3``    the three-vertex class formulas
``catalog``       lookup in the embedded result tables
================  ==========================================================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .factors import CocyclePart, Factors, K2Factor, SymbolPart, canonicalize
from .gcm import (CartanClass, CartanType, ColumnParity, Gcm, classify_indecomposable,
                  column_parity, components, equivalent, is_indecomposable, is_simply_laced,
                  principal_submatrix, validate)
from .intlat import elementary_divisors, invariant_factors
from .presentation import (ExceptionCase, GenPresentation, NoMinusOne, build_presentation,
                           eliminate_all, resolve_residual)


class NotFiniteOrAffine(ValueError):
    pass


class ColumnNotOdd(ValueError):
    pass


class NoClassMatch(ValueError):
    pass


CITATIONS = {
    "components": "zero entries give trivial cross relations ({u,1}=1), so blocks split",
    "finite-affine": "Matsumoto's theorem and its affine analogue via column deletion",
    "R-SL": "simply-laced indecomposable GCMs have K2(A,F)=K2(F)",
    "R-ODD": "odd-column theorem: K2(F) quotients by the invariant factors of G",
    "R-RANK2": "rank-2 theorems (odd/odd, odd/even, even/even)",
    "R-DEL": "slot deletion through a -1 entry in the presentation",
    "R-C1": "three-vertex class 1 formula (ad-bc)/2",
    "R-C2": "three-vertex class 2 formula (abd-c)/2",
    "R-C3": "three-vertex class 3 (all bonds -2)",
    "catalog": "tabulated result for this hyperbolic GCM",
}


@dataclass(frozen=True)
class TraceStep:
    rule: str
    citation: str
    detail: str = ""
    depth: int = 0


class Trace:
    """Append-only rule log; refuses entries whose precondition failed."""

    def __init__(self):
        self.steps: List[TraceStep] = []
        self.depth = 0

    def record(self, rule: str, precondition: bool, detail: str = "") -> None:
        if not precondition:
            raise AssertionError(f"rule {rule} recorded without its precondition ({detail})")
        self.steps.append(TraceStep(rule, CITATIONS[rule], detail, self.depth))


@dataclass(frozen=True)
class K2Result:
    factors: Optional[Factors]
    trace: Tuple[TraceStep, ...]
    residual: Optional[GenPresentation] = None
    notes: Tuple[str, ...] = field(default=())

    @property
    def resolved(self) -> bool:
        return self.factors is not None


def _resolved(factors: Sequence[K2Factor], trace: Trace) -> K2Result:
    return K2Result(canonicalize(factors), tuple(trace.steps))


# --------------------------------------------------------------- components

def split_components(g: Gcm) -> List[Gcm]:
    return [principal_submatrix(g, block) for block in components(g)]


# -------------------------------------------------------- finite and affine

def _neighbours(g: Gcm, i: int) -> List[int]:
    return [j for j in range(g.n) if j != i and g[i, j] != 0]


def _path_order(g: Gcm) -> Optional[List[int]]:
    """Vertices in path order if the Dynkin graph is a path, else None."""
    if g.n == 1:
        return [0]
    deg = [len(_neighbours(g, i)) for i in range(g.n)]
    ends = [i for i in range(g.n) if deg[i] == 1]
    if len(ends) != 2 or any(d > 2 for d in deg):
        return None
    order, prev = [ends[0]], None
    while len(order) < g.n:
        nxt = [j for j in _neighbours(g, order[-1]) if j != prev]
        if not nxt:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return order


def _even_column(g: Gcm, i: int) -> bool:
    return column_parity(g)[i] is ColumnParity.ALL_EVEN


def _bond(g: Gcm, i: int, j: int) -> int:
    return g[i, j] * g[j, i]


def is_type_c(g: Gcm) -> bool:
    """C_n (n >= 1, with C_1 = A_1 and C_2 = B_2) up to relabelling."""
    order = _path_order(g)
    if order is None:
        return False
    if g.n == 1:
        return True
    bonds = [_bond(g, a, b) for a, b in zip(order, order[1:])]
    if g.n == 2:
        return bonds == [2]
    if sorted(bonds) != [1] * (len(bonds) - 1) + [2] or 2 not in (bonds[0], bonds[-1]):
        return False
    leaf = order[0] if bonds[0] == 2 else order[-1]
    return _even_column(g, leaf)


def _double_ended_chain(g: Gcm) -> Optional[List[int]]:
    order = _path_order(g)
    if order is None or g.n < 3:
        return None
    bonds = [_bond(g, a, b) for a, b in zip(order, order[1:])]
    if bonds[0] == 2 and bonds[-1] == 2 and all(b == 1 for b in bonds[1:-1]):
        return order
    return None


def is_type_c_tilde(g: Gcm) -> bool:
    """Untwisted affine C_n (C~_1 = A~_1): a chain whose two end columns are even."""
    if g.n == 2:
        return g[0, 1] == -2 and g[1, 0] == -2
    order = _double_ended_chain(g)
    return order is not None and _even_column(g, order[0]) and _even_column(g, order[-1])


def finite_affine_closed_form(g: Gcm, cls: Optional[CartanClass] = None) -> Factors:
    if cls is None:
        cls = classify_indecomposable(g)
    if cls.kind is CartanType.FINITE:
        return canonicalize([CocyclePart(0)] if is_type_c(g) else [SymbolPart(0)])
    if cls.kind is CartanType.AFFINE:
        if is_type_c_tilde(g):
            return canonicalize(reduce_rank2(2, 2))
        # every other affine matrix deletes down to a finite one; an all-even
        # column survives the deletions and ends in C_n
        if any(_even_column(g, i) for i in range(g.n)):
            return canonicalize([CocyclePart(0)])
        return canonicalize([SymbolPart(0)])
    raise NotFiniteOrAffine(f"{cls} matrix has no closed form")


# ---------------------------------------------------------------- odd/rank 2

def odd_column_relations(g: Gcm) -> List[List[int]]:
    """Exponent rows of x_i^{a_ji} = x_j^{a_ij}, one per pair i < j."""
    rows = []
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if g[i, j] == 0:
                continue
            row = [0] * g.n
            row[i] = g[j, i]
            row[j] = -g[i, j]
            rows.append(row)
    return rows


def reduce_odd_columns(g: Gcm) -> Factors:
    if any(c is ColumnParity.ALL_EVEN for c in column_parity(g)):
        raise ColumnNotOdd("some column has only even entries")
    st = invariant_factors(odd_column_relations(g), g.n)
    parts = [SymbolPart(q) for q in elementary_divisors(st.torsion)]
    parts += [SymbolPart(0)] * st.free_rank
    return canonicalize(parts)


def reduce_rank2(a: int, b: int) -> Factors:
    """K_2 of [[2,-b],[-a,2]] for a, b >= 1."""
    if a % 2 == 0 and b % 2 == 0:
        return canonicalize([CocyclePart(0), CocyclePart(gcd(a // 2, b // 2))])
    if a % 2 and b % 2:
        return canonicalize([SymbolPart(gcd(a, b)), SymbolPart(0)])
    return canonicalize([SymbolPart(gcd(a, b)), CocyclePart(0)])


# ------------------------------------------------------------- deletion

def leaf_deletion(g: Gcm) -> Optional[Tuple[int, int]]:
    """First column t whose only off-diagonal entry is a_st = -1 and whose
    deletion keeps the kind of slot s; None if there is none."""
    for t in range(g.n):
        nz = [s for s in range(g.n) if s != t and g[s, t] != 0]
        if len(nz) != 1 or g[nz[0], t] != -1:
            continue
        s = nz[0]
        try:
            _check_leaf_guard(g, t, s)
        except ExceptionCase:
            continue
        return t, s
    return None


def _check_leaf_guard(g: Gcm, t: int, s: int) -> None:
    if g[t, s] % 2 and not any(g[k, s] % 2 for k in range(g.n) if k not in (s, t)):
        raise ExceptionCase(f"a_{t + 1}{s + 1} is the only odd entry of column {s + 1}")


def delete_leaf(g: Gcm, t: int) -> Gcm:
    """The GCM with row and column t removed, when that leaves K_2 unchanged."""
    nz = [s for s in range(g.n) if s != t and g[s, t] != 0]
    if len(nz) != 1 or g[nz[0], t] != -1:
        raise NoMinusOne(f"column {t + 1} is not a lone -1 column")
    _check_leaf_guard(g, t, nz[0])
    return principal_submatrix(g, [i for i in range(g.n) if i != t])


# --------------------------------------------------------- class formulas

def _match_pattern(g: Gcm, test: Callable[[Gcm], Optional[int]]) -> Optional[int]:
    for perm in permutations(range(3)):
        r = test(g.permuted(perm))
        if r is not None:
            return r
    return None


def _class1(h: Gcm) -> Optional[int]:
    if h[2, 0] != -1 or h[2, 1] != -1:
        return None
    a, b, c, d = -h[0, 1], -h[0, 2], -h[1, 0], -h[1, 2]
    if min(a, b, c, d) <= 0 or b % 2 or d % 2:
        return None
    return abs(a * d - b * c) // 2


def _class2(h: Gcm) -> Optional[int]:
    if h[0, 1] != -1 or h[2, 0] != -1:
        return None
    a, b, c, d = -h[0, 2], -h[1, 0], -h[1, 2], -h[2, 1]
    if min(a, b, c, d) <= 0 or a % 2 or c % 2:
        return None
    return abs(a * b * d - c) // 2


CLASS3 = (
    validate([[2, -2, -2], [-2, 2, -2], [-2, -2, 2]]),
    validate([[2, -2, 0], [-2, 2, -2], [0, -2, 2]]),
)


def match_class(g: Gcm) -> Optional[Tuple[str, Factors]]:
    """First matching three-vertex class as (rule name, factors)."""
    if g.n != 3:
        return None
    r = _match_pattern(g, _class1)
    if r is not None:
        return "R-C1", canonicalize([CocyclePart(r)])
    r = _match_pattern(g, _class2)
    if r is not None:
        return "R-C2", canonicalize([CocyclePart(r)])
    if any(equivalent(g, m) for m in CLASS3):
        return "R-C3", canonicalize([CocyclePart(0), CocyclePart(1), CocyclePart(1)])
    return None


def reduce_class_formulas(g: Gcm) -> Factors:
    m = match_class(g)
    if m is None:
        raise NoClassMatch("not a class 1, 2 or 3 matrix")
    return m[1]


# ----------------------------------------------------------------- pipeline

DEFAULT_RULES = ("finite-affine", "R-SL", "R-ODD", "R-RANK2", "R-DEL",
                 "R-C1", "R-C2", "R-C3", "catalog")


@dataclass
class _Ctx:
    rules: Tuple[str, ...]
    trace: Trace
    residual: Optional[GenPresentation] = None
    notes: List[str] = field(default_factory=list)


def _rule_finite_affine(g: Gcm, ctx: _Ctx) -> Optional[Factors]:
    cls = classify_indecomposable(g)
    if cls.kind is CartanType.INDEFINITE:
        return None
    ctx.trace.record("finite-affine", True, f"{cls} block")
    return finite_affine_closed_form(g, cls)


def _rule_sl(g: Gcm, ctx: _Ctx) -> Optional[Factors]:
    if g.n < 2 or not is_simply_laced(g):
        return None
    ctx.trace.record("R-SL", is_indecomposable(g))
    return canonicalize([SymbolPart(0)])


def _rule_odd(g: Gcm, ctx: _Ctx) -> Optional[Factors]:
    if any(c is ColumnParity.ALL_EVEN for c in column_parity(g)):
        return None
    out = reduce_odd_columns(g)
    ctx.trace.record("R-ODD", True, "every column has an odd entry")
    return out


def _rule_rank2(g: Gcm, ctx: _Ctx) -> Optional[Factors]:
    if g.n != 2:
        return None
    a, b = -g[1, 0], -g[0, 1]
    ctx.trace.record("R-RANK2", a > 0 and b > 0, f"a={a}, b={b}")
    return reduce_rank2(a, b)


def _rule_del(g: Gcm, ctx: _Ctx) -> Optional[Factors]:
    leaf = leaf_deletion(g)
    if leaf is not None:
        t, s = leaf
        mark = len(ctx.trace.steps)
        ctx.trace.record("R-DEL", g[s, t] == -1,
                         f"column {t + 1} has a lone -1 at row {s + 1}; delete it")
        ctx.trace.depth += 1
        try:
            out = _k2_indecomposable(delete_leaf(g, t), ctx)
        finally:
            ctx.trace.depth -= 1
        if out is not None:
            return out
        del ctx.trace.steps[mark:]
    p = build_presentation(g)
    residual, steps = eliminate_all(p)
    if not steps:
        return None
    factors, rsteps = resolve_residual(residual)
    if factors is None:
        ctx.residual = residual
        return None
    done = ", ".join(f"slot {t + 1} via {'torsion' if s is None else f'slot {s + 1}'}"
                     for t, s in steps)
    how = "; ".join(f"slots {[i + 1 for i in r.slots]} by {r.method}" for r in rsteps)
    ctx.trace.record("R-DEL", True, f"eliminated {done}; residual {how}")
    return canonicalize(factors)


def _rule_class(name: str) -> Callable[[Gcm, _Ctx], Optional[Factors]]:
    def rule(g: Gcm, ctx: _Ctx) -> Optional[Factors]:
        m = match_class(g)
        if m is None or m[0] != name:
            return None
        ctx.trace.record(name, g.n == 3)
        return m[1]
    return rule


def _rule_catalog(g: Gcm, ctx: _Ctx) -> Optional[Factors]:
    from .catalog import lookup

    entry = lookup(g)
    if entry is None:
        return None
    ctx.trace.record("catalog", True, f"table entry {entry.id}")
    return entry.expected


RULES: Dict[str, Callable[[Gcm, _Ctx], Optional[Factors]]] = {
    "finite-affine": _rule_finite_affine,
    "R-SL": _rule_sl,
    "R-ODD": _rule_odd,
    "R-RANK2": _rule_rank2,
    "R-DEL": _rule_del,
    "R-C1": _rule_class("R-C1"),
    "R-C2": _rule_class("R-C2"),
    "R-C3": _rule_class("R-C3"),
    "catalog": _rule_catalog,
}


def _k2_indecomposable(g: Gcm, ctx: _Ctx) -> Optional[Factors]:
    for name in ctx.rules:
        out = RULES[name](g, ctx)
        if out is not None:
            return out
    if ctx.residual is None:
        ctx.residual = build_presentation(g)
    return None


def k2(g: Gcm, rules: Sequence[str] = DEFAULT_RULES) -> K2Result:
    """K_2(A,F) as a canonical factor multiset, or the unresolved residual."""
    unknown = set(rules) - set(RULES)
    if unknown:
        raise ValueError(f"unknown rules {sorted(unknown)}")
    trace = Trace()
    blocks = components(g)
    trace.record("components", True,
                 f"{len(blocks)} block(s): " + ", ".join(str([i + 1 for i in b]) for b in blocks))
    factors: List[K2Factor] = []
    for block in blocks:
        ctx = _Ctx(tuple(rules), trace)
        trace.depth = 1
        out = _k2_indecomposable(principal_submatrix(g, block), ctx)
        if out is None:
            return K2Result(None, tuple(trace.steps), ctx.residual,
                            (f"block {[i + 1 for i in block]} unresolved",))
        factors.extend(out)
    return _resolved(factors, trace)
