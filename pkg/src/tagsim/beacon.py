"""Advertising-frame codec for locator tags.

Frame layout (10 bytes, normative):

    offset  size  field
    0       1     version
    1       1     model (0x01 = BLE-AC, 0x02 = UWB-RAW)
    2-7     6     tag id
    8       1     flags (bit 0 = activation echo, bits 1-7 reserved zero)
    9       1     checksum

The checksum byte is chosen so that the sum of all ten bytes modulo 256
equals CHECKSUM_MAGIC.  Receivers silently drop anything failing the
length or checksum gate: those are other people's radio frames, not ours.

Frames carry identity only.  No byte of a frame ever depends on the
device information stored behind the NFC interface.
"""

from __future__ import annotations

from dataclasses import dataclass

FRAME_SIZE = 10
CHECKSUM_MAGIC = 0xD1

PROTOCOL_VERSION = 0x01
MODEL_BLE_AC = 0x01
MODEL_UWB_RAW = 0x02
KNOWN_MODELS = (MODEL_BLE_AC, MODEL_UWB_RAW)

FLAG_ACTIVATE = 0x01
RESERVED_FLAG_MASK = 0xFE

TAG_ID_SIZE = 6

MODEL_NAMES = {MODEL_BLE_AC: "BLE-AC", MODEL_UWB_RAW: "UWB-RAW"}
MODEL_CODES = {name: code for code, name in MODEL_NAMES.items()}


class BeaconError(ValueError):
    """Base class for frame encode/decode failures."""


class InvalidModel(BeaconError):
    pass


class ReservedFlags(BeaconError):
    pass


class InvalidTagId(BeaconError):
    pass


class WrongLength(BeaconError):
    pass


class ChecksumMismatch(BeaconError):
    pass


@dataclass(frozen=True)
class Beacon:
    """Decoded frame fields (checksum is derived, never stored)."""

    version: int
    model: int
    tag_id: bytes
    flags: int

    def to_bytes(self) -> bytes:
        """Re-encode without validation; exact inverse of decode_beacon."""
        body = bytes((self.version, self.model)) + self.tag_id + bytes((self.flags,))
        return body + bytes(((CHECKSUM_MAGIC - sum(body)) % 256,))

    @property
    def model_name(self) -> str:
        return MODEL_NAMES.get(self.model, f"0x{self.model:02x}")

    @property
    def activation(self) -> bool:
        return bool(self.flags & FLAG_ACTIVATE)


def parse_tag_id(text: str) -> bytes:
    """Parse a 12-hex-char tag id as used in scenario files and the CLI."""
    try:
        raw = bytes.fromhex(text)
    except ValueError as exc:
        raise InvalidTagId(f"tag id is not hex: {text!r}") from exc
    if len(raw) != TAG_ID_SIZE:
        raise InvalidTagId(f"tag id must be {TAG_ID_SIZE} bytes, got {len(raw)}")
    return raw


def format_tag_id(tag_id: bytes) -> str:
    return tag_id.hex()


def encode_beacon(version: int, model: int, tag_id: bytes, flags: int = 0) -> bytes:
    """Build a 10-byte frame satisfying the checksum invariant."""
    if model not in KNOWN_MODELS:
        raise InvalidModel(f"unknown model byte 0x{model:02x}")
    if flags & RESERVED_FLAG_MASK:
        raise ReservedFlags(f"reserved flag bits set in 0x{flags:02x}")
    if len(tag_id) != TAG_ID_SIZE:
        raise InvalidTagId(f"tag id must be {TAG_ID_SIZE} bytes, got {len(tag_id)}")
    if not 0 <= version <= 0xFF:
        raise BeaconError(f"version byte out of range: {version}")
    return Beacon(version, model, bytes(tag_id), flags).to_bytes()


def decode_beacon(frame: bytes) -> Beacon:
    """Parse a frame; rejects anything that is not 10 checksum-valid bytes.

    Field values are taken as-is once the checksum holds, so
    ``decode_beacon(f).to_bytes() == f`` for every accepted frame.
    """
    if len(frame) != FRAME_SIZE:
        raise WrongLength(f"expected {FRAME_SIZE} bytes, got {len(frame)}")
    if sum(frame) % 256 != CHECKSUM_MAGIC:
        raise ChecksumMismatch("byte sum does not match the frame magic")
    return Beacon(frame[0], frame[1], bytes(frame[2:8]), frame[8])


def make_activation_frame(beacon: Beacon) -> bytes:
    """Echo a tag's beacon back with the activation flag set.

    Idempotent: activating an already-activated frame changes nothing.
    Only the tag whose id matches will react.
    """
    return Beacon(
        beacon.version, beacon.model, beacon.tag_id, beacon.flags | FLAG_ACTIVATE
    ).to_bytes()


def is_tag_frame(frame: bytes) -> bool:
    """Cheap receiver-side filter: true iff decode_beacon would succeed."""
    return len(frame) == FRAME_SIZE and sum(frame) % 256 == CHECKSUM_MAGIC
