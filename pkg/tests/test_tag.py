from __future__ import annotations

import pytest

from tagsim.beacon import (
    FLAG_ACTIVATE,
    MODEL_BLE_AC,
    MODEL_UWB_RAW,
    decode_beacon,
    encode_beacon,
    make_activation_frame,
)
from tagsim.tag import (
    ACCEPTED,
    IGNORED,
    PASSWORD_REQUIRED,
    BUZZ_TOTAL_MS,
    Tag,
    buzzer_sequence,
)

TID = b"\x01\x02\x03\x04\x05\x06"
OTHER = b"\x06\x05\x04\x03\x02\x01"


def make_tag(model=MODEL_BLE_AC, **kwargs) -> Tag:
    return Tag(tag_id=TID, model=model, position=(0.0, 0.0), **kwargs)


def activation_for(tag_id=TID, model=MODEL_BLE_AC) -> bytes:
    return make_activation_frame(decode_beacon(encode_beacon(1, model, tag_id)))


def beacons_of(emissions):
    return [e for e in emissions if e.kind == "beacon"]


def test_four_beacons_in_two_seconds():
    tag = make_tag()
    emissions = tag.tick(2000)
    assert len(beacons_of(emissions)) == 4
    assert [e.t_ms for e in beacons_of(emissions)] == [500, 1000, 1500, 2000]


def test_zero_elapsed_emits_nothing():
    tag = make_tag()
    tag.tick(1000)
    drawn = tag.battery.drawn_mah
    assert tag.tick(1000) == []
    assert tag.battery.drawn_mah == drawn


def test_tick_backwards_rejected():
    tag = make_tag()
    tag.tick(1000)
    with pytest.raises(ValueError):
        tag.tick(500)


def test_beacon_frames_decode_to_own_identity():
    tag = make_tag(model=MODEL_UWB_RAW)
    frame = beacons_of(tag.tick(500))[0].data["frame"]
    beacon = decode_beacon(frame)
    assert beacon.tag_id == TID
    assert beacon.model == MODEL_UWB_RAW
    assert not beacon.activation


def test_beacon_bytes_never_depend_on_ndef_contents():
    a = Tag(tag_id=TID, model=MODEL_BLE_AC, position=(0, 0), ndef_image=b"")
    b = Tag(tag_id=TID, model=MODEL_BLE_AC, position=(0, 0), ndef_image=b"\xff" * 200)
    assert a.beacon_frame() == b.beacon_frame()


def test_buzzer_sequence_shape():
    tones = buzzer_sequence()
    assert len(tones) == 3
    assert all(duration == 3.0 for _, duration in tones)
    freqs = [f for f, _ in tones]
    assert len(set(freqs)) == 3
    assert sum(d for _, d in tones) == 9.0


def test_activation_starts_buzzer_and_led():
    tag = make_tag()
    tag.tick(1000)
    assert tag.on_frame(activation_for()) == ACCEPTED
    assert tag.buzzing
    assert tag.led_on
    emissions = tag.tick(1100)
    kinds = [(e.t_ms, e.kind) for e in emissions]
    assert (1000, "led") in kinds
    assert (1000, "tone_start") in kinds


def test_activation_for_other_tag_ignored():
    tag = make_tag()
    assert tag.on_frame(activation_for(tag_id=OTHER)) == IGNORED
    assert not tag.buzzing


def test_plain_beacon_does_not_self_trigger():
    tag = make_tag()
    assert tag.on_frame(encode_beacon(1, MODEL_BLE_AC, TID)) == IGNORED


def test_garbage_frame_ignored():
    tag = make_tag()
    assert tag.on_frame(b"\x00" * 10) == IGNORED
    assert tag.on_frame(b"") == IGNORED


def test_password_mode():
    tag = make_tag(password="sesame99")
    assert tag.on_frame(activation_for()) == PASSWORD_REQUIRED
    assert not tag.buzzing
    assert tag.on_frame(activation_for(), password="wrong") == PASSWORD_REQUIRED
    assert tag.on_frame(activation_for(), password="sesame99") == ACCEPTED
    assert tag.buzzing


def test_full_buzz_cycle_tones_and_led():
    tag = make_tag()
    tag.tick(1000)
    tag.on_frame(activation_for())
    emissions = tag.tick(11000)
    tones = [(e.t_ms, e.kind, e.data["freq_hz"]) for e in emissions if "tone" in e.kind]
    assert tones == [
        (1000, "tone_start", 2000.0),
        (4000, "tone_stop", 2000.0),
        (4000, "tone_start", 3000.0),
        (7000, "tone_stop", 3000.0),
        (7000, "tone_start", 4000.0),
        (10000, "tone_stop", 4000.0),
    ]
    leds = [(e.t_ms, e.data["on"]) for e in emissions if e.kind == "led"]
    assert leds == [(1000, True), (10000, False)]
    assert not tag.buzzing
    assert not tag.led_on


def test_retrigger_while_playing_does_not_restart():
    tag = make_tag()
    tag.tick(1000)
    tag.on_frame(activation_for())
    tag.tick(2000)
    assert tag.on_frame(activation_for()) == ACCEPTED
    tag.tick(9999)
    assert tag.buzzing
    tag.tick(10000)
    assert not tag.buzzing  # original 9 s schedule, not restarted


def test_uwb_led_always_on():
    tag = make_tag(model=MODEL_UWB_RAW)
    assert tag.led_on
    tag.tick(5000)
    assert tag.led_on


def test_current_draw_profiles():
    ble = make_tag()
    assert ble.current_draw_ma() == pytest.approx(1.0)
    uwb = make_tag(model=MODEL_UWB_RAW)
    assert uwb.current_draw_ma() == pytest.approx(75.0)
    ble.on_frame(activation_for())
    assert ble.current_draw_ma() == pytest.approx(31.0)


def test_battery_accrual_arithmetic():
    tag = make_tag()
    tag.tick(3_600_000)  # one hour at 1 mA
    assert tag.battery.drawn_mah == pytest.approx(1.0)


def test_depleted_tag_goes_silent_but_monotone():
    tag = make_tag(capacity_mah=0.001)
    emissions = tag.tick(3_600_000 * 2)
    kinds = [e.kind for e in emissions]
    assert "battery_depleted" in kinds
    assert tag.battery.depleted
    before = tag.battery.drawn_mah
    late = tag.tick(3_600_000 * 3)
    assert beacons_of(late) == []
    assert tag.battery.drawn_mah >= before
    assert tag.on_frame(activation_for()) == IGNORED
    assert not tag.led_on


def test_beacons_stop_at_depletion():
    # 1 mA drains 0.0005 mAh in 1.8 s; set capacity so depletion hits at 1.8 s
    tag = make_tag(capacity_mah=0.0005)
    emissions = tag.tick(10_000)
    times = [e.t_ms for e in beacons_of(emissions)]
    assert all(t <= 1800 for t in times)
