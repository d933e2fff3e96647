from __future__ import annotations

import math
import statistics
from random import Random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tagsim.radio import (
    PropagationParams,
    ble_deliver,
    discovery_radius,
    invert_rssi,
    nfc_readable,
    rssi_at,
    uwb_range_estimate,
)

P = PropagationParams()


def test_reference_distance_rssi():
    assert rssi_at(P, 1.0) == pytest.approx(-59.0)


def test_ten_meter_rssi():
    assert rssi_at(P, 10.0) == pytest.approx(-79.0)


def test_discovery_window_edges():
    # 25 m is below sensitivity, 15 m above: the paper-stated window holds
    assert rssi_at(P, 25.0) == pytest.approx(-86.9588, abs=1e-3)
    assert rssi_at(P, 15.0) == pytest.approx(-82.5218, abs=1e-3)
    assert rssi_at(P, 25.0) < P.reader_sensitivity_dbm < rssi_at(P, 15.0)


def test_analytic_crossover_radius_in_window():
    radius = discovery_radius(P)
    assert 15.0 < radius <= 20.0
    assert radius == pytest.approx(10 ** (26 / 20), rel=1e-12)


def test_walls_attenuate():
    assert rssi_at(P, 15.0, walls_crossed=2) == pytest.approx(-88.5218, abs=1e-3)


def test_distance_clamp_below_ten_centimeters():
    assert rssi_at(P, 0.0) == rssi_at(P, 0.1)


def test_ble_deliver_same_point_received():
    assert ble_deliver(P, (3.0, 3.0), (3.0, 3.0), []) is not None


def test_ble_deliver_at_25m_not_received():
    assert ble_deliver(P, (0.0, 0.0), (25.0, 0.0), []) is None


def test_ble_deliver_walls_shrink_range():
    walls = [(7.0, -1.0, 7.0, 1.0), (8.0, -1.0, 8.0, 1.0)]
    assert ble_deliver(P, (0.0, 0.0), (15.0, 0.0), []) is not None
    assert ble_deliver(P, (0.0, 0.0), (15.0, 0.0), walls) is None


def test_uwb_noiseless_identity():
    quiet = PropagationParams(uwb_sigma_m=0.0)
    assert uwb_range_estimate(quiet, 3.0) == pytest.approx(3.0)


def test_uwb_out_of_range_beyond_five_meters():
    assert uwb_range_estimate(P, 6.0, rng=Random(1)) is None
    assert uwb_range_estimate(P, 5.0, rng=Random(1)) is not None


def test_uwb_nlos_bias_applied():
    quiet = PropagationParams(uwb_sigma_m=0.0)
    assert uwb_range_estimate(quiet, 3.0, nlos=True) == pytest.approx(3.2)


def test_uwb_noise_statistics():
    rng = Random(42)
    samples = [uwb_range_estimate(P, 3.0, rng=rng) for _ in range(10_000)]
    assert abs(statistics.fmean(samples) - 3.0) < 0.01
    assert abs(statistics.stdev(samples) - 0.10) < 0.01


def test_nfc_gate_boundary():
    assert nfc_readable(P, 0.05)
    assert nfc_readable(P, 0.10)
    assert not nfc_readable(P, 0.20)


def test_nfc_range_is_fixed():
    with pytest.raises(ValueError):
        PropagationParams(nfc_range_m=0.2)


def test_coarse_inversion_is_exact():
    for d in (0.5, 1.0, 3.7, 12.0, 19.9):
        assert invert_rssi(P, rssi_at(P, d)) == pytest.approx(d, rel=1e-9)


def test_same_seed_same_noise():
    a = [rssi_at(PropagationParams(rssi_noise_sigma_db=2.0), 5.0, rng=Random(9)) for _ in range(1)]
    b = [rssi_at(PropagationParams(rssi_noise_sigma_db=2.0), 5.0, rng=Random(9)) for _ in range(1)]
    assert a == b


def test_params_dict_round_trip():
    params = PropagationParams(path_loss_exponent=2.4, wall_penalty_db=5.0)
    assert PropagationParams.from_dict(params.to_dict()) == params
    with pytest.raises(ValueError):
        PropagationParams.from_dict({"nonsense": 1})


@given(
    d1=st.floats(0.1, 50.0),
    d2=st.floats(0.1, 50.0),
)
def test_rssi_monotone_in_distance(d1, d2):
    if d1 == d2:
        return
    lo, hi = sorted((d1, d2))
    assert rssi_at(P, lo) >= rssi_at(P, hi)
    if hi > lo * (1 + 1e-9):
        assert rssi_at(P, lo) > rssi_at(P, hi)


@given(walls=st.integers(0, 10))
def test_rssi_monotone_in_walls(walls):
    assert rssi_at(P, 5.0, walls) > rssi_at(P, 5.0, walls + 1)
