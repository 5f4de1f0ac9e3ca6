"""Exact computation of K_2(A,F) for generalized Cartan matrices."""

from .factors import CocyclePart, K2Factor, SymbolPart, canonicalize, k2_equiv, render_factors
from .gcm import Gcm, classify, classify_indecomposable, is_hyperbolic, validate
from .k2engine import K2Result, k2

__all__ = [
    "CocyclePart", "Gcm", "K2Factor", "K2Result", "SymbolPart", "canonicalize",
    "classify", "classify_indecomposable", "is_hyperbolic", "k2", "k2_equiv",
    "render_factors", "validate",
]
