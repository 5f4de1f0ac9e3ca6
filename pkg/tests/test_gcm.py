import itertools

import pytest
from hypothesis import given, settings, strategies as st

from families import affine_family, finite_family, transpose
from strategies import gcm_strategy
from k2gcm.catalog import load_catalog
from k2gcm.gcm import (AsymmetricZero, BadDiagonal, CartanType, ColumnParity, Decomposable,
                       EmptySubset, NotSquareMatrix, PositiveOffDiagonal, canonical_form,
                       classify, classify_indecomposable, column_parity, components,
                       equivalent, is_hyperbolic, is_simply_laced, principal_submatrix,
                       validate)

ODD_EXAMPLE = [[2, -1, -3], [-3, 2, -1], [-1, -3, 2]]


def test_validate_accepts():
    assert validate([[2, -1], [-1, 2]]).n == 2
    assert validate(ODD_EXAMPLE).n == 3


@pytest.mark.parametrize("m, exc, pos", [
    ([[2, -1], [0, 2]], AsymmetricZero, (2, 1)),
    ([[3, -1], [-1, 2]], BadDiagonal, (1, 1)),
    ([[2, 1], [-1, 2]], PositiveOffDiagonal, (1, 2)),
])
def test_validate_rejects(m, exc, pos):
    with pytest.raises(exc) as info:
        validate(m)
    assert info.value.position == pos


def test_validate_rejects_ragged():
    with pytest.raises(NotSquareMatrix):
        validate([[2, -1, 0], [-1, 2]])


def test_components():
    assert components(validate([[2, -1], [-1, 2]])) == [[0, 1]]
    assert components(validate([[2, 0], [0, 2]])) == [[0], [1]]
    assert components(validate([[2, -2, 0], [-2, 2, -2], [0, -2, 2]])) == [[0, 1, 2]]


def test_principal_submatrix():
    g = validate(ODD_EXAMPLE)
    assert principal_submatrix(g, [0, 1]).tolist() == [[2, -1], [-3, 2]]
    assert principal_submatrix(g, range(3)) == g
    assert principal_submatrix(validate([[2, -2], [-2, 2]]), [0]).tolist() == [[2]]
    with pytest.raises(EmptySubset):
        principal_submatrix(g, [])


def test_classify_examples():
    assert classify_indecomposable(validate([[2, -1], [-1, 2]])).kind is CartanType.FINITE
    assert classify_indecomposable(validate([[2, -2], [-2, 2]])).kind is CartanType.AFFINE
    c = classify_indecomposable(validate(ODD_EXAMPLE))
    assert c.kind is CartanType.INDEFINITE and c.hyperbolic
    with pytest.raises(Decomposable):
        classify_indecomposable(validate([[2, 0], [0, 2]]))


def test_classify_blockwise():
    g = validate([[2, -1, 0, 0], [-1, 2, 0, 0], [0, 0, 2, -2], [0, 0, -2, 2]])
    assert [(b, c.kind) for b, c in classify(g)] == [
        ([0, 1], CartanType.FINITE), ([2, 3], CartanType.AFFINE)]


def test_is_hyperbolic_examples():
    assert is_hyperbolic(validate([[2, -5], [-1, 2]]))
    assert not is_hyperbolic(validate([[2, -1], [-1, 2]]))
    assert is_hyperbolic(validate(ODD_EXAMPLE))
    assert not is_hyperbolic(validate([[2, -5, 0, 0], [-1, 2, 0, 0], [0, 0, 2, -1], [0, 0, -1, 2]]))


def test_non_hyperbolic_indefinite():
    # the proper block [[2,-3],[-3,2]] is already indefinite
    g = validate([[2, -3, 0], [-3, 2, -3], [0, -3, 2]])
    c = classify_indecomposable(g)
    assert c.kind is CartanType.INDEFINITE and not c.hyperbolic


def test_rank2_closed_form():
    for a in range(1, 9):
        for b in range(1, 9):
            c = classify_indecomposable(validate([[2, -b], [-a, 2]]))
            if a * b <= 3:
                assert c.kind is CartanType.FINITE
            elif a * b == 4:
                assert c.kind is CartanType.AFFINE
            else:
                assert c.kind is CartanType.INDEFINITE and c.hyperbolic


def test_column_parity_examples():
    O, E = ColumnParity.ODD_PRESENT, ColumnParity.ALL_EVEN
    assert column_parity(validate(ODD_EXAMPLE)) == [O, O, O]
    assert column_parity(validate([[2, -2], [-2, 2]])) == [E, E]
    assert column_parity(validate([[2, -2], [-1, 2]])) == [O, E]


def test_simply_laced():
    assert is_simply_laced(validate([[2, -1], [-1, 2]]))
    assert not is_simply_laced(validate([[2, -2], [-1, 2]]))


@pytest.mark.parametrize("g", finite_family() + [transpose(g) for g in finite_family()],
                         ids=str)
def test_family_lists_finite(g):
    assert classify_indecomposable(g).kind is CartanType.FINITE


@pytest.mark.parametrize("g", affine_family() + [transpose(g) for g in affine_family()],
                         ids=str)
def test_family_lists_affine(g):
    assert classify_indecomposable(g).kind is CartanType.AFFINE


@settings(max_examples=60, deadline=None)
@given(gcm_strategy(), st.randoms(use_true_random=False))
def test_classification_permutation_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.permuted(perm)
    assert sorted(c.kind.value for _, c in classify(g)) == sorted(c.kind.value for _, c in classify(h))
    assert is_hyperbolic(g) == is_hyperbolic(h)


def test_catalog_permutation_invariance():
    for e in load_catalog():
        if e.matrix.n > 4:
            continue
        for perm in itertools.permutations(range(e.matrix.n)):
            h = e.matrix.permuted(perm)
            assert is_hyperbolic(h)
            assert equivalent(h, e.matrix)
            assert canonical_form(h) == canonical_form(e.matrix)


@settings(max_examples=60, deadline=None)
@given(gcm_strategy(max_n=6, low=-3))
def test_heredity_of_finite(g):
    for block, c in classify(g):
        if c.kind is not CartanType.FINITE:
            continue
        sub = principal_submatrix(g, block)
        for k in range(1, sub.n):
            for subset in itertools.combinations(range(sub.n), k):
                p = principal_submatrix(sub, subset)
                assert all(cc.kind is CartanType.FINITE for _, cc in classify(p))


@settings(max_examples=60, deadline=None)
@given(gcm_strategy(), st.data())
def test_principal_submatrix_stays_valid(g, data):
    subset = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    p = principal_submatrix(g, subset)
    assert validate(p.tolist()) == p
