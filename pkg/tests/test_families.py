"""Closed forms for finite and affine matrices against the general rules."""

import itertools

import pytest

from families import affine_family, finite_family, transpose
from k2gcm.factors import CocyclePart, SymbolPart, k2_equiv
from k2gcm.gcm import CartanType, ColumnParity, classify, column_parity, principal_submatrix
from k2gcm.k2engine import DEFAULT_RULES, finite_affine_closed_form, is_type_c, k2

RULES_ONLY = tuple(r for r in DEFAULT_RULES if r != "finite-affine")

FINITE = finite_family() + [transpose(g) for g in finite_family()]
AFFINE = affine_family() + [transpose(g) for g in affine_family()]


@pytest.mark.parametrize("g", FINITE + AFFINE, ids=str)
def test_closed_form_matches_rules(g):
    r = k2(g, RULES_ONLY)
    if g.n > 1:
        assert r.resolved, "the rules alone should reach every family member of rank > 1"
    if r.resolved:
        assert k2_equiv(r.factors, finite_affine_closed_form(g))


@pytest.mark.parametrize("g", FINITE, ids=str)
def test_type_c_is_all_even_column(g):
    # rank 1 counts as C_1
    has_even = g.n == 1 or any(c is ColumnParity.ALL_EVEN for c in column_parity(g))
    assert is_type_c(g) == has_even
    expected = (CocyclePart(0),) if is_type_c(g) else (SymbolPart(0),)
    assert finite_affine_closed_form(g) == expected


@pytest.mark.parametrize("g", [g for g in FINITE if g.n <= 6], ids=str)
def test_heredity_on_families(g):
    for k in range(1, g.n):
        for subset in itertools.combinations(range(g.n), k):
            p = principal_submatrix(g, subset)
            assert all(c.kind is CartanType.FINITE for _, c in classify(p))
