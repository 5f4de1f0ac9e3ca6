"""Generalized Cartan matrices: validation, blocks and Cartan type.

Indices are 0-based in the API; error messages report 1-based (row, column)
positions the way matrices are usually written down.  A simple root
corresponds to a column.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Sequence, Tuple

from .intlat import determinant


class GcmError(ValueError):
    """Base class for GCM axiom violations."""

    def __init__(self, message: str, position: Tuple[int, int] | None = None):
        super().__init__(message)
        self.position = position


class BadDiagonal(GcmError):
    pass


class PositiveOffDiagonal(GcmError):
    pass


class AsymmetricZero(GcmError):
    pass


class NotSquareMatrix(GcmError):
    pass


class EmptySubset(ValueError):
    pass


class Decomposable(ValueError):
    pass


@dataclass(frozen=True)
class Gcm:
    entries: Tuple[Tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> List[List[int]]:
        return [list(r) for r in self.entries]

    def permuted(self, perm: Sequence[int]) -> "Gcm":
        """Simultaneous relabelling: new index k is old index perm[k]."""
        return Gcm(tuple(tuple(self.entries[perm[i]][perm[j]] for j in range(self.n))
                         for i in range(self.n)))

    def __str__(self) -> str:
        return "; ".join(" ".join(str(x) for x in row) for row in self.entries)


def validate(matrix: Sequence[Sequence[int]]) -> Gcm:
    rows = [tuple(int(x) for x in r) for r in matrix]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise NotSquareMatrix("a GCM must be a nonempty square matrix")
    for i in range(n):
        if rows[i][i] != 2:
            raise BadDiagonal(f"diagonal entry at ({i + 1},{i + 1}) is {rows[i][i]}, not 2",
                              (i + 1, i + 1))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if rows[i][j] > 0:
                raise PositiveOffDiagonal(
                    f"off-diagonal entry at ({i + 1},{j + 1}) is positive", (i + 1, j + 1))
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                # report the zero side
                zi, zj = (i, j) if rows[i][j] == 0 else (j, i)
                raise AsymmetricZero(
                    f"entry at ({zi + 1},{zj + 1}) is zero but ({zj + 1},{zi + 1}) is not",
                    (zi + 1, zj + 1))
    return Gcm(tuple(rows))


def components(g: Gcm) -> List[List[int]]:
    """Connected components of the off-diagonal support graph, sorted."""
    seen = [False] * g.n
    out = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack, block = [start], []
        seen[start] = True
        while stack:
            i = stack.pop()
            block.append(i)
            for j in range(g.n):
                if j != i and g[i, j] != 0 and not seen[j]:
                    seen[j] = True
                    stack.append(j)
        out.append(sorted(block))
    return out


def is_indecomposable(g: Gcm) -> bool:
    return len(components(g)) == 1


def principal_submatrix(g: Gcm, subset: Iterable[int]) -> Gcm:
    idx = sorted(set(subset))
    if not idx:
        raise EmptySubset("principal submatrix of an empty index set")
    return Gcm(tuple(tuple(g[i, j] for j in idx) for i in idx))


class CartanType(enum.Enum):
    FINITE = "finite"
    AFFINE = "affine"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class CartanClass:
    kind: CartanType
    hyperbolic: bool = False

    def __post_init__(self):
        if self.hyperbolic and self.kind is not CartanType.INDEFINITE:
            raise ValueError("only indefinite matrices can be hyperbolic")

    def __str__(self) -> str:
        if self.kind is CartanType.INDEFINITE:
            return "indefinite (hyperbolic)" if self.hyperbolic else "indefinite"
        return self.kind.value


def _minor(g: Gcm, idx: Sequence[int]) -> int:
    return determinant([[g[i, j] for j in idx] for i in idx])


def _cartan_type(g: Gcm) -> CartanType:
    n = g.n
    proper_positive = all(_minor(g, s) > 0
                          for k in range(1, n) for s in combinations(range(n), k))
    if proper_positive:
        det = _minor(g, range(n))
        if det > 0:
            return CartanType.FINITE
        if det == 0:
            return CartanType.AFFINE
    return CartanType.INDEFINITE


def classify_indecomposable(g: Gcm) -> CartanClass:
    if not is_indecomposable(g):
        raise Decomposable("matrix is decomposable; classify its blocks instead")
    kind = _cartan_type(g)
    if kind is CartanType.INDEFINITE:
        return CartanClass(kind, hyperbolic=_proper_blocks_tame(g))
    return CartanClass(kind)


def classify(g: Gcm) -> List[Tuple[List[int], CartanClass]]:
    """Blockwise classification; one entry per indecomposable block."""
    return [(block, classify_indecomposable(principal_submatrix(g, block)))
            for block in components(g)]


def _proper_blocks_tame(g: Gcm) -> bool:
    # maximal proper subsets suffice: sub-blocks of finite/affine blocks are finite
    for drop in range(g.n):
        if g.n == 1:
            break
        sub = principal_submatrix(g, [i for i in range(g.n) if i != drop])
        for block in components(sub):
            if _cartan_type(principal_submatrix(sub, block)) is CartanType.INDEFINITE:
                return False
    return True


def is_hyperbolic(g: Gcm) -> bool:
    if not is_indecomposable(g):
        return False
    if _cartan_type(g) is not CartanType.INDEFINITE:
        return False
    return _proper_blocks_tame(g)


class ColumnParity(enum.Enum):
    ODD_PRESENT = "odd"
    ALL_EVEN = "even"


def column_parity(g: Gcm) -> List[ColumnParity]:
    return [ColumnParity.ODD_PRESENT
            if any(g[k, i] % 2 for k in range(g.n) if k != i)
            else ColumnParity.ALL_EVEN
            for i in range(g.n)]


def is_simply_laced(g: Gcm) -> bool:
    return all(g[i, j] in (0, -1) for i in range(g.n) for j in range(g.n) if i != j)


def canonical_form(g: Gcm) -> Gcm:
    """Lexicographically smallest matrix over all simultaneous permutations."""
    from itertools import permutations

    return min((g.permuted(p) for p in permutations(range(g.n))), key=lambda h: h.entries)


def equivalent(g: Gcm, h: Gcm) -> bool:
    return g.n == h.n and canonical_form(g) == canonical_form(h)
