from __future__ import annotations

from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tagsim.metrics import (
    BLE_AC_BOM,
    UWB_RAW_BOM,
    BatterySpec,
    BomItem,
    OutOfRangeAnswer,
    WrongQuestionCount,
    ZeroCurrent,
    battery_bounds,
    battery_life_days,
    bom_cost,
    model_summary,
    sus_score,
)

PUBLISHED_AVERAGES = [4.43, 1.30, 4.78, 1.61, 4.74, 1.35, 4.52, 1.48, 4.74, 1.56]


def test_battery_life_published_rows():
    assert battery_life_days(6000, 1.0) == pytest.approx(250.0)
    assert battery_life_days(9000, 75.0) == pytest.approx(5.0)


def test_battery_life_ratio_identity():
    for c in (1.0, 7.5, 123.0):
        assert battery_life_days(c, c) == pytest.approx(1 / 24)


def test_battery_life_rejects_zero_current():
    with pytest.raises(ZeroCurrent):
        battery_life_days(6000, 0.0)


def test_battery_bounds_ble():
    assert battery_bounds(BatterySpec(), 1.0) == pytest.approx((250.0, 375.0))


def test_battery_bounds_uwb():
    lo, hi = battery_bounds(BatterySpec(), 75.0)
    assert lo == pytest.approx(3.3333, abs=5e-4)
    assert abs(lo - 3.3) < 0.05  # printed value in the published table
    assert hi == pytest.approx(5.0)


def test_bom_published_totals():
    assert bom_cost(BLE_AC_BOM) == Decimal("21.66")
    assert bom_cost(UWB_RAW_BOM) == Decimal("20.26")


def test_bom_empty_and_rounding():
    assert bom_cost([]) == Decimal("0.00")
    assert bom_cost([BomItem("x", 0.005)]) == Decimal("0.01")  # half-up


def test_bom_additive_and_permutation_invariant():
    items = [BomItem("a", 1.10), BomItem("b", 2.25, 2), BomItem("c", 0.33)]
    assert bom_cost(items) == bom_cost(list(reversed(items)))
    assert bom_cost(items) == bom_cost(items[:1]) + bom_cost(items[1:])


def test_bom_validation():
    with pytest.raises(ValueError):
        BomItem("x", -1.0)
    with pytest.raises(ValueError):
        BomItem("x", 1.0, quantity=0)


def test_sus_published_averages():
    score = sus_score(PUBLISHED_AVERAGES)
    assert score == pytest.approx(89.775, abs=1e-9)
    assert abs(score - 89.77) < 0.1


def test_sus_extremes():
    assert sus_score([5, 1, 5, 1, 5, 1, 5, 1, 5, 1]) == 100.0
    assert sus_score([1, 5, 1, 5, 1, 5, 1, 5, 1, 5]) == 0.0
    assert sus_score([3] * 10) == 50.0


def test_sus_validation():
    with pytest.raises(WrongQuestionCount):
        sus_score([3] * 9)
    with pytest.raises(OutOfRangeAnswer):
        sus_score([3] * 9 + [6])


def test_model_summary_rows():
    rows = {row["model"]: row for row in model_summary()}
    assert rows["BLE-AC"]["price_usd"] == 21.66
    assert rows["BLE-AC"]["min_days"] == pytest.approx(250)
    assert rows["BLE-AC"]["max_days"] == pytest.approx(375)
    assert rows["UWB-RAW"]["price_usd"] == 20.26
    assert rows["UWB-RAW"]["min_days"] == pytest.approx(10 / 3)
    assert rows["UWB-RAW"]["max_days"] == pytest.approx(5)


@given(
    capacity=st.floats(1.0, 1e6),
    current=st.floats(0.01, 1e3),
    k=st.floats(0.01, 100.0),
)
def test_battery_life_homogeneous(capacity, current, k):
    a = battery_life_days(capacity, current)
    b = battery_life_days(capacity * k, current * k)
    assert b == pytest.approx(a, rel=1e-9)


@given(
    answers=st.lists(st.floats(1.0, 5.0), min_size=10, max_size=10),
    index=st.integers(0, 9),
    bump=st.floats(0.01, 1.0),
)
def test_sus_monotone_and_bounded(answers, index, bump):
    base = sus_score(answers)
    assert 0.0 <= base <= 100.0
    shifted = list(answers)
    shifted[index] = min(5.0, shifted[index] + bump)
    moved = sus_score(shifted)
    if shifted[index] == answers[index]:
        return
    if index % 2 == 0:  # odd-numbered question (1-indexed)
        assert moved >= base
    else:
        assert moved <= base
