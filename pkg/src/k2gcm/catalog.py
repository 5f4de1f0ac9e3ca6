"""Tabulated results and enumeration of low-rank hyperbolic GCMs."""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .factors import Factors, canonicalize, k2_equiv, parse_factor_token, render_factors
from .gcm import Gcm, canonical_form, column_parity, ColumnParity, is_hyperbolic, is_indecomposable, validate
from .textio import parse_int_matrix


class CatalogError(RuntimeError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    matrix: Gcm
    expected: Factors
    source: str


SECTIONS = {
    "7": ("rank3-table", "class3"),
    "8": ("rank4-table", "rank5-table", "rank6-table"),
}


def parse_catalog(text: str) -> List[CatalogEntry]:
    entries = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 4:
            raise CatalogError(f"line {lineno}: expected 4 fields, got {len(parts)}")
        ident, source, mtext, ftext = parts
        try:
            g = validate(parse_int_matrix(mtext))
            expected = canonicalize(parse_factor_token(t) for t in ftext.split())
        except ValueError as exc:
            raise CatalogError(f"line {lineno}: {exc}") from exc
        entries.append(CatalogEntry(ident, g, expected, source))
    return entries


@functools.lru_cache(maxsize=None)
def load_catalog() -> Tuple[CatalogEntry, ...]:
    text = resources.files("k2gcm").joinpath("data/tables.txt").read_text(encoding="utf-8")
    return tuple(parse_catalog(text))


@functools.lru_cache(maxsize=None)
def _index() -> Dict[Gcm, CatalogEntry]:
    return {canonical_form(e.matrix): e for e in load_catalog()}


def lookup(g: Gcm) -> Optional[CatalogEntry]:
    """Entry equal to ``g`` up to simultaneous permutation, or None."""
    if g.n not in {e.matrix.n for e in load_catalog()}:
        return None
    return _index().get(canonical_form(g))


def entries_for(section: str = "all") -> List[CatalogEntry]:
    if section == "all":
        return list(load_catalog())
    sources = SECTIONS[section]
    return [e for e in load_catalog() if e.source in sources]


# --------------------------------------------------------------- enumeration

def enumerate_rank2_hyperbolic(bound: int) -> List[Gcm]:
    if bound < 1:
        raise ValueError("bound must be positive")
    out = []
    for a in range(1, bound + 1):
        for b in range(a, bound + 1):
            if a * b > 4:
                out.append(canonical_form(validate([[2, -b], [-a, 2]])))
    return sorted(set(out), key=lambda g: g.entries)


@functools.lru_cache(maxsize=None)
def enumerate_rank3_hyperbolic() -> Tuple[Gcm, ...]:
    """All 3x3 hyperbolic GCMs up to relabelling.

    Hyperbolicity forces every 2x2 principal block to be finite or affine, so
    a_ij * a_ji <= 4 and entries lie in [-4, 0].
    """
    seen = set()
    pairs = [(i, j) for i in range(3) for j in range(3) if i != j]
    for vals in product(range(-4, 1), repeat=6):
        a = [[2] * 3 for _ in range(3)]
        ok = True
        for (i, j), x in zip(pairs, vals):
            a[i][j] = x
        for i, j in pairs:
            if (a[i][j] == 0) != (a[j][i] == 0) or a[i][j] * a[j][i] > 4:
                ok = False
                break
        if not ok:
            continue
        g = Gcm(tuple(tuple(r) for r in a))
        c = canonical_form(g)
        if c in seen:
            continue
        if is_indecomposable(g) and is_hyperbolic(g):
            seen.add(c)
    return tuple(sorted(seen, key=lambda g: g.entries))


# ----------------------------------------------------------- verification

@dataclass
class VerifyRecord:
    entry: CatalogEntry
    passed: bool
    got: Optional[Factors]
    trace: tuple = ()


@dataclass
class VerifyReport:
    records: List[VerifyRecord] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.records)

    def lines(self) -> List[str]:
        out = []
        for r in self.records:
            got = "unresolved" if r.got is None else render_factors(r.got)
            status = "PASS" if r.passed else "FAIL"
            out.append(f"{status} {r.entry.id:>4} [{r.entry.source}] {got}")
            if not r.passed:
                out.append(f"     expected {render_factors(r.entry.expected)}")
                out.extend(f"     {s.rule}: {s.detail}" for s in r.trace)
        n_pass = sum(r.passed for r in self.records)
        out.append(f"{n_pass}/{len(self.records)} entries pass")
        return out


def verify_catalog(entries: Optional[Iterable[CatalogEntry]] = None,
                   rules: Optional[Sequence[str]] = None) -> VerifyReport:
    from .k2engine import DEFAULT_RULES, k2

    if entries is None:
        entries = load_catalog()
    report = VerifyReport()
    for e in entries:
        res = k2(e.matrix, rules if rules is not None else DEFAULT_RULES)
        ok = res.resolved and k2_equiv(res.factors, e.expected)
        report.records.append(VerifyRecord(e, ok, res.factors, res.trace))
    return report


# ------------------------------------------------------------- partition

CLAIMED = {"all-odd": 67, "lone-minus-one": 12, "class1": 18, "class2": 8, "class3": 2,
           "table": 18}


def rank3_partition(matrices: Optional[Sequence[Gcm]] = None) -> Dict[str, object]:
    """Sort the rank-3 hyperbolics into the successive categories used to
    cover them: all columns odd, then a deletable lone -1 column, then the
    class formulas, then the tables.  Counts are compared with the claimed
    ones; mismatches are reported, not raised."""
    from .k2engine import _class1, _class2, _match_pattern, CLASS3, leaf_deletion
    from .gcm import equivalent

    if matrices is None:
        matrices = enumerate_rank3_hyperbolic()
    counts: Counter = Counter()
    members: Dict[str, List[Gcm]] = {}
    table = {canonical_form(e.matrix) for e in load_catalog() if e.source == "rank3-table"}
    for g in matrices:
        if all(c is ColumnParity.ODD_PRESENT for c in column_parity(g)):
            cat = "all-odd"
        elif leaf_deletion(g) is not None:
            cat = "lone-minus-one"
        elif _match_pattern(g, _class1) is not None:
            cat = "class1"
        elif _match_pattern(g, _class2) is not None:
            cat = "class2"
        elif any(equivalent(g, m) for m in CLASS3):
            cat = "class3"
        elif canonical_form(g) in table:
            cat = "table"
        else:
            cat = "uncovered"
        counts[cat] += 1
        members.setdefault(cat, []).append(g)
    # lone -1 columns counted without the parity exception
    counts_unguarded = sum(1 for g in matrices if _has_lone_minus_one(g)
                           and not all(c is ColumnParity.ODD_PRESENT for c in column_parity(g)))
    mismatches = {k: (counts.get(k, 0), v) for k, v in CLAIMED.items() if counts.get(k, 0) != v}
    return {"total": len(matrices), "counts": dict(counts), "claimed": dict(CLAIMED),
            "mismatches": mismatches, "members": members,
            "lone-minus-one-ignoring-exception": counts_unguarded}


def _has_lone_minus_one(g: Gcm) -> bool:
    for t in range(g.n):
        col = [g[s, t] for s in range(g.n) if s != t and g[s, t] != 0]
        if col == [-1]:
            return True
    return False


def partition_lines(report: Dict[str, object]) -> List[str]:
    counts = report["counts"]
    out = [f"rank-3 hyperbolic GCMs: {report['total']}"]
    for key in ("all-odd", "lone-minus-one", "class1", "class2", "class3", "table", "uncovered"):
        got = counts.get(key, 0)
        claimed = report["claimed"].get(key)
        tag = "" if claimed is None else (" (matches claim)" if got == claimed
                                          else f" (claimed {claimed}: MISMATCH)")
        if got or claimed is not None:
            out.append(f"  {key:<15} {got:>4}{tag}")
    out.append(f"  lone -1 columns ignoring the parity exception: "
               f"{report['lone-minus-one-ignoring-exception']}")
    rest = report["total"] - counts.get("all-odd", 0) - counts.get("lone-minus-one", 0)
    out.append(f"  remaining after the first two categories: {rest} "
               f"(claimed arithmetic 123 - 67 - 12 = 44, stated as 46)")
    return out
