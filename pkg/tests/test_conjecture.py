from collections import Counter

from hypothesis import given, settings

from k2gcm.catalog import enumerate_rank3_hyperbolic
from k2gcm.conjecture import (Verdict, conjecture_check, conjecture_predict, odd_first_order,
                              predict_structure)
from k2gcm.factors import CocyclePart, SymbolPart, k2_equiv
from k2gcm.gcm import ColumnParity, column_parity, validate
from k2gcm.k2engine import reduce_rank2
from strategies import gcm_strategy

ODD_EXAMPLE = validate([[2, -1, -3], [-3, 2, -1], [-1, -3, 2]])
AFFINE_A1 = validate([[2, -2], [-2, 2]])


def test_predict_examples():
    assert k2_equiv(conjecture_predict(ODD_EXAMPLE).factors, [SymbolPart(2), SymbolPart(13)])
    assert conjecture_predict(AFFINE_A1).factors == (CocyclePart(0), CocyclePart(1))
    assert k2_equiv(conjecture_predict(validate([[2, -3], [-2, 2]])).factors, [CocyclePart(0)])


def test_prediction_discloses_transform():
    res = conjecture_predict(ODD_EXAMPLE)
    assert res.notes and "diagonal" in res.notes[0]


def test_odd_first_order():
    g = validate([[2, -2, -1], [-2, 2, -1], [-2, -2, 2]])
    order = odd_first_order(g)
    par = column_parity(g.permuted(order))
    k = sum(c is ColumnParity.ODD_PRESENT for c in par)
    assert all(c is ColumnParity.ODD_PRESENT for c in par[:k])


def test_check_examples():
    assert conjecture_check(ODD_EXAMPLE).verdict is Verdict.AGREE
    assert conjecture_check(AFFINE_A1).verdict is Verdict.AGREE


def test_unresolved_input_is_unknown():
    rep = conjecture_check(validate([[2, 0, -1], [0, 2, -2], [-1, -4, 2]]))
    assert rep.verdict is Verdict.UNKNOWN


def test_rank2_predictions_match_closed_form():
    for a in range(1, 16):
        for b in range(1, 16):
            if a * b > 4:
                pred = conjecture_predict(validate([[2, -b], [-a, 2]]))
                assert k2_equiv(pred.factors, reduce_rank2(a, b)), (a, b)


@settings(max_examples=200, deadline=None)
@given(gcm_strategy(max_n=5, low=-6, connected=True))
def test_prediction_total(g):
    pred = predict_structure(g)
    assert len(pred.symbol_slots) == g.n
    if not pred.resolved:
        assert "odd order" in pred.diagnostic


def test_harness_over_rank3():
    tally = Counter()
    for g in enumerate_rank3_hyperbolic():
        rep = conjecture_check(g)
        tally[rep.verdict] += 1
        if all(c is ColumnParity.ODD_PRESENT for c in column_parity(g)):
            assert rep.verdict is Verdict.AGREE, str(g)
            assert all(rep.checks.values())
        if rep.verdict is Verdict.AGREE:
            assert rep.checks["phi_kills_relations"] and rep.checks["round_trip"]
    assert sum(tally.values()) == 123
