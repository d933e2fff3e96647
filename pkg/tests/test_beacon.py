from __future__ import annotations

from random import Random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tagsim.beacon import (
    CHECKSUM_MAGIC,
    FLAG_ACTIVATE,
    FRAME_SIZE,
    Beacon,
    ChecksumMismatch,
    InvalidModel,
    InvalidTagId,
    ReservedFlags,
    WrongLength,
    decode_beacon,
    encode_beacon,
    format_tag_id,
    is_tag_frame,
    make_activation_frame,
    parse_tag_id,
)

ZERO_ID = bytes(6)


def test_zero_id_frame_checksum_byte():
    # byte sum of version+model+id+flags is 0x02, so the checksum byte
    # must be (0xD1 - 0x02) % 256 = 0xCF
    frame = encode_beacon(0x01, 0x01, ZERO_ID, 0x00)
    assert frame[-1] == 0xCF
    assert sum(frame) % 256 == CHECKSUM_MAGIC


def test_any_frame_sums_to_magic():
    frame = encode_beacon(0x01, 0x02, bytes([0xD1] * 6), 0x00)
    assert len(frame) == FRAME_SIZE
    assert sum(frame) % 256 == CHECKSUM_MAGIC


def test_unknown_model_rejected():
    with pytest.raises(InvalidModel):
        encode_beacon(0x01, 0x03, ZERO_ID, 0x00)


def test_reserved_flags_rejected():
    with pytest.raises(ReservedFlags):
        encode_beacon(0x01, 0x01, ZERO_ID, 0x02)


def test_bad_tag_id_rejected():
    with pytest.raises(InvalidTagId):
        encode_beacon(0x01, 0x01, b"short", 0x00)


def test_round_trip_fields():
    frame = encode_beacon(0x07, 0x02, b"\x01\x02\x03\x04\x05\x06", FLAG_ACTIVATE)
    beacon = decode_beacon(frame)
    assert beacon == Beacon(0x07, 0x02, b"\x01\x02\x03\x04\x05\x06", FLAG_ACTIVATE)
    assert beacon.to_bytes() == frame


def test_wrong_length_rejected():
    with pytest.raises(WrongLength):
        decode_beacon(b"\x00" * 9)


def test_every_single_byte_corruption_rejected():
    frame = encode_beacon(0x01, 0x01, b"\xaa\xbb\xcc\xdd\xee\xff", 0x00)
    mutants = 0
    for pos in range(FRAME_SIZE):
        for value in range(256):
            if value == frame[pos]:
                continue
            mutant = frame[:pos] + bytes((value,)) + frame[pos + 1 :]
            mutants += 1
            with pytest.raises(ChecksumMismatch):
                decode_beacon(mutant)
    assert mutants == FRAME_SIZE * 255


def test_activation_frame_sets_flag_and_rechecksums():
    frame = encode_beacon(0x01, 0x01, b"\x10\x20\x30\x40\x50\x60", 0x00)
    beacon = decode_beacon(frame)
    activation = make_activation_frame(beacon)
    decoded = decode_beacon(activation)
    assert decoded.activation
    assert decoded.tag_id == beacon.tag_id
    assert sum(activation) % 256 == CHECKSUM_MAGIC


def test_activation_is_idempotent():
    frame = encode_beacon(0x01, 0x02, b"\x10\x20\x30\x40\x50\x60", 0x00)
    once = make_activation_frame(decode_beacon(frame))
    twice = make_activation_frame(decode_beacon(once))
    assert once == twice


def test_is_tag_frame_matches_decoder():
    good = encode_beacon(0x01, 0x01, ZERO_ID, 0x00)
    assert is_tag_frame(good)
    assert not is_tag_frame(b"")
    assert not is_tag_frame(good[:-1])
    assert not is_tag_frame(good[:-1] + bytes(((good[-1] + 1) % 256,)))


def test_random_frames_pass_filter_at_chance_rate():
    # a uniform 10-byte frame hits the checksum with probability 1/256
    rng = Random(20240917)
    samples = 100_000
    hits = sum(
        1 for _ in range(samples) if is_tag_frame(rng.getrandbits(80).to_bytes(10, "big"))
    )
    expected = samples / 256
    sigma = (samples * (1 / 256) * (255 / 256)) ** 0.5
    assert abs(hits - expected) < 3 * sigma


def test_tag_id_text_round_trip():
    assert parse_tag_id("0a1b2c3d4e5f") == b"\x0a\x1b\x2c\x3d\x4e\x5f"
    assert format_tag_id(b"\x0a\x1b\x2c\x3d\x4e\x5f") == "0a1b2c3d4e5f"
    with pytest.raises(InvalidTagId):
        parse_tag_id("zz")
    with pytest.raises(InvalidTagId):
        parse_tag_id("0a1b2c3d4e")


@given(
    version=st.integers(0, 255),
    model=st.sampled_from([0x01, 0x02]),
    tag_id=st.binary(min_size=6, max_size=6),
    flags=st.sampled_from([0x00, 0x01]),
)
def test_round_trip_property(version, model, tag_id, flags):
    frame = encode_beacon(version, model, tag_id, flags)
    beacon = decode_beacon(frame)
    assert (beacon.version, beacon.model, beacon.tag_id, beacon.flags) == (
        version,
        model,
        tag_id,
        flags,
    )
    assert beacon.to_bytes() == frame


@given(
    version=st.integers(0, 255),
    tag_id=st.binary(min_size=6, max_size=6),
    flags=st.sampled_from([0x00, 0x01]),
)
def test_frames_are_pure_functions_of_fields(version, tag_id, flags):
    a = encode_beacon(version, 0x01, tag_id, flags)
    b = encode_beacon(version, 0x01, tag_id, flags)
    assert a == b
