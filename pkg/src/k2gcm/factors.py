"""Factors of a K_2(A,F) decomposition and their comparison.

A result is a multiset of factors, each a quotient of K_2(F) or K_2(2,F):

* ``SymbolPart(0)``  is K_2(F), ``SymbolPart(r)`` is K_2(F)/rK_2(F);
* ``CocyclePart(0)`` is K_2(2,F), ``CocyclePart(r)`` is K_2(2,F)/r<{u^2,v}>.

SymbolPart(1) is trivial; CocyclePart(1) is not.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, List, Tuple

from .intlat import elementary_divisors


class FactorKind(enum.Enum):
    SYMBOL = "symbol"
    COCYCLE = "cocycle"

    @property
    def rank(self) -> int:
        return 0 if self is FactorKind.SYMBOL else 1


@dataclass(frozen=True)
class K2Factor:
    kind: FactorKind
    r: int = 0

    def sort_key(self) -> Tuple[int, int]:
        return (self.kind.rank, self.r)

    def __lt__(self, other: "K2Factor") -> bool:
        return self.sort_key() < other.sort_key()

    @property
    def trivial(self) -> bool:
        return self.kind is FactorKind.SYMBOL and abs(self.r) == 1

    def __repr__(self) -> str:
        name = "SymbolPart" if self.kind is FactorKind.SYMBOL else "CocyclePart"
        return f"{name}({self.r})"


def SymbolPart(r: int = 0) -> K2Factor:
    return K2Factor(FactorKind.SYMBOL, r)


def CocyclePart(r: int = 0) -> K2Factor:
    return K2Factor(FactorKind.COCYCLE, r)


Factors = Tuple[K2Factor, ...]


def canonicalize(factors: Iterable[K2Factor]) -> Factors:
    """Drop trivial factors, take |r|, sort by (kind, r).  No CRT splitting."""
    out = [K2Factor(f.kind, abs(f.r)) for f in factors]
    return tuple(sorted(f for f in out if not f.trivial))


def _split(factors: Iterable[K2Factor]) -> Counter:
    c: Counter = Counter()
    for f in canonicalize(factors):
        if f.kind is FactorKind.SYMBOL and f.r > 1:
            for q in elementary_divisors([f.r]):
                c[K2Factor(FactorKind.SYMBOL, q)] += 1
        else:
            c[f] += 1
    return c


def k2_equiv(x: Iterable[K2Factor], y: Iterable[K2Factor]) -> bool:
    """Equality up to CRT splitting of the K_2(F) quotients.

    K_2(F)/rsK_2(F) = K_2(F)/r x K_2(F)/s for coprime r, s, as for any abelian
    group.  Quotients of K_2(2,F) are compared verbatim.
    """
    return _split(x) == _split(y)


def factor_name(f: K2Factor) -> str:
    if f.kind is FactorKind.SYMBOL:
        return "K2(F)" if f.r == 0 else f"K2(F)/{f.r}K2(F)"
    if f.r == 0:
        return "K2(2,F)"
    if f.r == 1:
        return "K2(2,F)/<{u^2,v}>"
    return f"K2(2,F)/{f.r}<{{u^2,v}}>"


_ORDINALS = ["first", "second", "third", "fourth", "fifth", "sixth", "seventh",
             "eighth", "ninth", "tenth"]


def _ordinal(k: int) -> str:
    return _ORDINALS[k] if k < len(_ORDINALS) else f"#{k + 1}"


def render_factors(factors: Iterable[K2Factor]) -> str:
    """Human-readable product, e.g. ``K2(F)/2K2(F) x K2(F)/13K2(F)``."""
    fs: List[K2Factor] = list(factors)
    if not fs:
        return "1"
    text = " x ".join(factor_name(f) for f in fs)
    ones = [k for k, f in enumerate(fs) if f.kind is FactorKind.COCYCLE and f.r == 1]
    if ones:
        words = [_ordinal(k) for k in ones]
        if len(words) == 1:
            which = f"{words[0]} factor"
        else:
            which = ", ".join(words[:-1]) + f" and {words[-1]} factors"
        text += f"  ({which} ≅ I^2(F))"
    return text


def parse_factor_token(token: str) -> K2Factor:
    """Compact token form used in data files: ``S0``, ``S4``, ``C0``, ``C1``."""
    token = token.strip()
    if len(token) < 2 or token[0] not in "SC" or not token[1:].isdigit():
        raise ValueError(f"bad factor token {token!r}")
    kind = FactorKind.SYMBOL if token[0] == "S" else FactorKind.COCYCLE
    return K2Factor(kind, int(token[1:]))


def factor_token(f: K2Factor) -> str:
    return ("S" if f.kind is FactorKind.SYMBOL else "C") + str(f.r)
