"""Exact integer linear algebra.

Everything here works on plain Python ints, so there is no overflow and no
magnitude bound.  Matrices are passed around as sequences of rows and
returned as lists of lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

Matrix = List[List[int]]


class NotSquare(ValueError):
    pass


class ColumnMismatch(ValueError):
    pass


def _copy(m: Sequence[Sequence[int]]) -> Matrix:
    return [[int(x) for x in row] for row in m]


def _shape(m: Sequence[Sequence[int]]) -> Tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    for row in m:
        if len(row) != cols:
            raise ValueError("matrix is not rectangular")
    return rows, cols


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    inner = len(b)
    cols = len(b[0]) if inner else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for row in a]


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n, cols = _shape(m)
    if n != cols:
        raise NotSquare(f"determinant needs a square matrix, got {n}x{cols}")
    if n == 0:
        return 1
    a = _copy(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form ``u @ m @ v == diag(d)``.

    ``v_inv`` is the exact inverse of ``v``; it is carried along because the
    cokernel maps need both directions.
    """

    d: Tuple[int, ...]
    u: Tuple[Tuple[int, ...], ...]
    v: Tuple[Tuple[int, ...], ...]
    v_inv: Tuple[Tuple[int, ...], ...]

    def diagonal_matrix(self) -> Matrix:
        rows, cols = len(self.u), len(self.v)
        out = [[0] * cols for _ in range(rows)]
        for k, x in enumerate(self.d):
            out[k][k] = x
        return out


def smith_normal_form(m: Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form with unimodular transforms.

    Pivot choice is deterministic: the nonzero entry of smallest magnitude in
    the active block, ties broken by lowest (row, column) index.
    """
    rows, cols = _shape(m)
    a = _copy(m)
    u = identity(rows)
    v = identity(cols)
    v_inv = identity(cols)

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        # col dst += q * col src; inverse gets row src -= q * row dst
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]
        v_inv[src] = [x - q * y for x, y in zip(v_inv[src], v_inv[dst])]

    for k in range(min(rows, cols)):
        while True:
            best = None
            for i in range(k, rows):
                for j in range(k, cols):
                    x = a[i][j]
                    if x != 0 and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i, j = best
            if i != k:
                swap_rows(i, k)
            if j != k:
                swap_cols(j, k)
            p = a[k][k]
            dirty = False
            for i in range(k + 1, rows):
                if a[i][k]:
                    add_row(i, k, -(a[i][k] // p))
                    dirty = dirty or a[i][k] != 0
            for j in range(k + 1, cols):
                if a[k][j]:
                    add_col(j, k, -(a[k][j] // p))
                    dirty = dirty or a[k][j] != 0
            if dirty:
                continue
            # row and column clear; enforce divisibility on the rest
            bad = next((i for i in range(k + 1, rows)
                        if any(a[i][j] % p for j in range(k + 1, cols))), None)
            if bad is None:
                break
            add_row(k, bad, 1)
        if best is None:
            break

    for k in range(min(rows, cols)):
        if a[k][k] < 0:
            a[k][k] = -a[k][k]
            u[k] = [-x for x in u[k]]

    d = tuple(a[k][k] for k in range(min(rows, cols)))
    as_tuple = lambda mat: tuple(tuple(r) for r in mat)  # noqa: E731
    return SnfResult(d, as_tuple(u), as_tuple(v), as_tuple(v_inv))


@dataclass(frozen=True)
class AbelianStructure:
    """Cokernel of an integer relation matrix.

    The canonical generators y_0..y_{n-1} correspond to the columns of the
    Smith transform ``v``; ``orders[k]`` is the order of y_k (0 for infinite,
    1 for trivial ones that were trimmed from ``torsion``).

    ``to_canonical[k][i]`` is the exponent of y_k in the image of x_i, and
    ``from_canonical[j][k]`` the exponent of x_j in the image of y_k.
    """

    torsion: Tuple[int, ...]
    free_rank: int
    orders: Tuple[int, ...]
    to_canonical: Tuple[Tuple[int, ...], ...]
    from_canonical: Tuple[Tuple[int, ...], ...]
    snf: SnfResult

    @property
    def trivial(self) -> Tuple[int, ...]:
        return tuple(k for k, r in enumerate(self.orders) if r == 1)


def invariant_factors(relations: Sequence[Sequence[int]], n_generators: int) -> AbelianStructure:
    """Structure of <x_1..x_n | relations> as an abelian group.

    Each row of ``relations`` is the exponent vector of one relator.
    """
    rels = _copy(relations)
    for row in rels:
        if len(row) != n_generators:
            raise ColumnMismatch(
                f"relation {row} has {len(row)} entries, expected {n_generators}")
    if not rels:
        eye = identity(n_generators)
        snf = SnfResult((), (), tuple(map(tuple, eye)), tuple(map(tuple, eye)))
    else:
        snf = smith_normal_form(rels)
    orders = list(snf.d) + [0] * (n_generators - len(snf.d))
    # phi(x) = x @ v on exponent row vectors, so mu = v^T and nu = v_inv^T
    to_can = tuple(tuple(snf.v[i][k] for i in range(n_generators)) for k in range(n_generators))
    from_can = tuple(tuple(snf.v_inv[k][j] for k in range(n_generators)) for j in range(n_generators))
    return AbelianStructure(
        torsion=tuple(r for r in orders if r > 1),
        free_rank=sum(1 for r in orders if r == 0),
        orders=tuple(orders),
        to_canonical=to_can,
        from_canonical=from_can,
        snf=snf,
    )


def in_row_lattice(vector: Sequence[int], relations: Sequence[Sequence[int]]) -> bool:
    """Is ``vector`` an integer combination of the rows of ``relations``?"""
    if not any(vector):
        return True
    if not relations:
        return False
    snf = smith_normal_form(relations)
    # rows(M) = rows(D v^-1); test vector @ v against rows(D)
    w = [sum(vector[i] * snf.v[i][k] for i in range(len(vector))) for k in range(len(vector))]
    for k, x in enumerate(w):
        dk = snf.d[k] if k < len(snf.d) else 0
        if dk == 0:
            if x != 0:
                return False
        elif x % dk:
            return False
    return True


def elementary_divisors(torsion: Sequence[int]) -> List[int]:
    """Split each torsion order into prime powers (CRT)."""
    from sympy import factorint

    out: List[int] = []
    for r in torsion:
        if r in (0, 1):
            out.append(r)
            continue
        out.extend(p ** e for p, e in sorted(factorint(abs(r)).items()))
    return out
