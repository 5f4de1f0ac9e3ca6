"""Exponent-level model of the product-over-J presentation of K_2(A,F).

Slot i carries K_2(F) (``SlotKind.SYMBOL``) when column i of A has an odd
off-diagonal entry and K_2(2,F) (``SlotKind.COCYCLE``) otherwise.  A link
``(i, p, j, q)`` stands for the family of relations {u^p,v}_i = {u^q,v}_j for
all u, v; a torsion ``(i, p, m)`` for {u^p,v}_i^m = 1.  Field elements are
never instantiated.

Every relation is a product of powers of *unit symbols*: {u,v}_i in a symbol
slot and {u^2,v}_i in a cocycle slot.  Both are Steinberg symbols in (u, v),
so as long as every cocycle-slot exponent is even (true for anything built
from a GCM, and preserved by deletion) a presentation is determined by its
kinds plus an integer matrix of unit coefficients.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .factors import CocyclePart, K2Factor, SymbolPart
from .gcm import ColumnParity, Gcm, column_parity
from .intlat import smith_normal_form


class SlotKind(enum.Enum):
    SYMBOL = "symbol"
    COCYCLE = "cocycle"


class NoMinusOne(ValueError):
    pass


class ExceptionCase(ValueError):
    """Deleting the column would change the kind of the slot it hangs on."""


class OddCocycleExponent(ValueError):
    pass


@dataclass(frozen=True)
class Link:
    i: int
    p: int
    j: int
    q: int

    @property
    def degenerate(self) -> bool:
        return self.p == 0 or self.q == 0


@dataclass(frozen=True)
class Torsion:
    i: int
    p: int
    m: int


@dataclass(frozen=True)
class GenPresentation:
    slots: Tuple[SlotKind, ...]
    links: Tuple[Link, ...] = ()
    torsions: Tuple[Torsion, ...] = ()
    # original column index of each slot
    labels: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(len(self.slots))))
        n = len(self.slots)
        for ln in self.links:
            if not (0 <= ln.i < n and 0 <= ln.j < n) or ln.i == ln.j:
                raise ValueError(f"bad link {ln}")
        for t in self.torsions:
            if not 0 <= t.i < n or t.m < 0:
                raise ValueError(f"bad torsion {t}")

    @property
    def n(self) -> int:
        return len(self.slots)

    def unit_rows(self) -> List[List[int]]:
        """Relation matrix in unit-symbol coordinates (one row per relation)."""
        rows = []
        for ln in self.links:
            row = [0] * self.n
            row[ln.i] += _to_unit(self.slots[ln.i], ln.p)
            row[ln.j] -= _to_unit(self.slots[ln.j], ln.q)
            if any(row):
                rows.append(row)
        for t in self.torsions:
            row = [0] * self.n
            row[t.i] = _to_unit(self.slots[t.i], t.p) * t.m
            if any(row):
                rows.append(row)
        return rows

    @classmethod
    def from_unit_rows(cls, slots: Sequence[SlotKind], rows: Sequence[Sequence[int]],
                       labels: Sequence[int]) -> "GenPresentation":
        links, torsions = [], []
        for row in rows:
            nz = [k for k, x in enumerate(row) if x]
            if not nz:
                continue
            if len(nz) == 1:
                i = nz[0]
                torsions.append(Torsion(i, _from_unit(slots[i], 1), abs(row[i])))
            elif len(nz) == 2:
                i, j = nz
                links.append(Link(i, _from_unit(slots[i], row[i]), j, _from_unit(slots[j], -row[j])))
            else:
                raise ValueError("relation with more than two slots is not representable")
        return cls(tuple(slots), tuple(links), tuple(torsions), tuple(labels))


def _to_unit(kind: SlotKind, p: int) -> int:
    if kind is SlotKind.SYMBOL:
        return p
    if p % 2:
        raise OddCocycleExponent(f"odd exponent {p} in a cocycle slot")
    return p // 2


def _from_unit(kind: SlotKind, c: int) -> int:
    return c if kind is SlotKind.SYMBOL else 2 * c


def slot_kinds(g: Gcm) -> Tuple[SlotKind, ...]:
    return tuple(SlotKind.SYMBOL if c is ColumnParity.ODD_PRESENT else SlotKind.COCYCLE
                 for c in column_parity(g))


def build_presentation(g: Gcm) -> GenPresentation:
    """Slots from column parity, one link (i, a_ji, j, a_ij) per pair i < j."""
    links = tuple(Link(i, g[j, i], j, g[i, j])
                  for i in range(g.n) for j in range(i + 1, g.n))
    return GenPresentation(slot_kinds(g), links)


def reduce_delete_column(p: GenPresentation, t: int, s: int) -> GenPresentation:
    """Eliminate symbol slot ``t`` through a link to ``s`` with exponent ±1 at t.

    The link gives {u,v}_t = (unit of s)^c for a fixed integer c, and the
    right-hand side is a Steinberg symbol, so t can be substituted away in
    every other relation.  Slot kinds of the survivors are untouched, which is
    why no parity exception is needed at this level.
    """
    if p.slots[t] is not SlotKind.SYMBOL:
        raise NoMinusOne(f"slot {t + 1} is not a K2(F) slot")
    rows = p.unit_rows()
    pivot = None
    for row in rows:
        others = [k for k, x in enumerate(row) if x and k != t]
        if abs(row[t]) == 1 and others == [s]:
            pivot = row
            break
    if pivot is None:
        raise NoMinusOne(f"no relation between slots {t + 1} and {s + 1} "
                         f"with exponent -1 on slot {t + 1}")
    return _eliminate(p, t, pivot, rows)


def _eliminate(p: GenPresentation, t: int, pivot: List[int], rows: List[List[int]]) -> GenPresentation:
    # pivot: e*x_t + sum_k c_k y_k = 0 with e = ±1, so x_t = -e * sum_k c_k y_k
    e = pivot[t]
    new_rows = []
    for row in rows:
        if row is pivot:
            continue
        k = row[t]
        if k:
            row = [x - k * e * y for x, y in zip(row, pivot)]
        new_rows.append([x for idx, x in enumerate(row) if idx != t])
    keep = [i for i in range(p.n) if i != t]
    return GenPresentation.from_unit_rows([p.slots[i] for i in keep], new_rows,
                                          [p.labels[i] for i in keep])


def deletable_pair(p: GenPresentation) -> Optional[Tuple[int, Optional[int]]]:
    """First (t, s) usable by :func:`reduce_delete_column`; s is None for a
    torsion row that kills slot t outright."""
    for row in p.unit_rows():
        for t, x in enumerate(row):
            if abs(x) != 1 or p.slots[t] is not SlotKind.SYMBOL:
                continue
            others = [k for k, y in enumerate(row) if y and k != t]
            if len(others) == 1:
                return t, others[0]
            if not others:
                return t, None
    return None


def eliminate_all(p: GenPresentation) -> Tuple[GenPresentation, List[Tuple[int, Optional[int]]]]:
    """Repeatedly delete slots; returns the residual and the deleted labels."""
    steps = []
    while True:
        pair = deletable_pair(p)
        if pair is None:
            return p, steps
        t, s = pair
        steps.append((p.labels[t], None if s is None else p.labels[s]))
        if s is None:
            rows = p.unit_rows()
            pivot = next(r for r in rows if abs(r[t]) == 1 and sum(1 for x in r if x) == 1)
            p = _eliminate(p, t, pivot, rows)
        else:
            p = reduce_delete_column(p, t, s)


def presentation_components(p: GenPresentation) -> List[List[int]]:
    parent = list(range(p.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in p.unit_rows():
        nz = [k for k, x in enumerate(row) if x]
        for k in nz[1:]:
            parent[find(k)] = find(nz[0])
    groups: Dict[int, List[int]] = {}
    for i in range(p.n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


@dataclass(frozen=True)
class ResidualStep:
    slots: Tuple[int, ...]
    method: str
    factors: Tuple[K2Factor, ...]


def _lattice_factors(kind: SlotKind, rows: List[List[int]], n: int) -> List[K2Factor]:
    d = list(smith_normal_form(rows).d) if rows else []
    orders = d + [0] * (n - len(d))
    make = SymbolPart if kind is SlotKind.SYMBOL else CocyclePart
    return [make(r) for r in orders]


def resolve_residual(p: GenPresentation) -> Tuple[Optional[List[K2Factor]], List[ResidualStep]]:
    """Resolve a presentation using only provably sound lattice moves.

    Per connected component: all-symbol components via invariant factors
    (odd-column argument), all-cocycle components via invariant factors of the
    {u^2,v} lattice (even rank-2 argument), and a single mixed relation
    {u^a,v}_1 = {u^b,v}_2 with a odd via the mixed rank-2 argument.
    Returns (None, steps) when some component is out of reach.
    """
    rows = p.unit_rows()
    factors: List[K2Factor] = []
    steps: List[ResidualStep] = []
    for comp in presentation_components(p):
        sub = [[row[i] for i in comp] for row in rows if any(row[i] for i in comp)]
        kinds = {p.slots[i] for i in comp}
        labels = tuple(p.labels[i] for i in comp)
        if len(kinds) == 1:
            kind = kinds.pop()
            got = _lattice_factors(kind, sub, len(comp))
            method = "symbol-lattice" if kind is SlotKind.SYMBOL else "cocycle-lattice"
        elif len(comp) == 2 and len(sub) == 1:
            row = sub[0]
            si = 0 if p.slots[comp[0]] is SlotKind.SYMBOL else 1
            a, k = row[si], row[1 - si]
            if a % 2 == 0:
                return None, steps
            got = [SymbolPart(gcd(a, 2 * k)), CocyclePart(0)]
            method = "mixed-rank2"
        else:
            return None, steps
        factors.extend(got)
        steps.append(ResidualStep(labels, method, tuple(got)))
    return factors, steps
