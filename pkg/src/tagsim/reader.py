"""Reader-side state: discovery list, buzz requests, ranging, NFC inventory.

A reader is one client device moving through the world.  It keeps an
upsert-by-id list of every tag heard recently (entries lapse after the
stale timeout), can echo a discovered tag's frame back to ring its
buzzer, can range ultra-wideband tags, and collects device information
into a persistent inventory -- but only from tags it physically touched.

No pairing anywhere: two readers in the same world see the same tags and
may buzz them independently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import TYPE_CHECKING

from tagsim import ndef, radio
from tagsim.beacon import (
    MODEL_UWB_RAW,
    PROTOCOL_VERSION,
    decode_beacon,
    encode_beacon,
    format_tag_id,
    make_activation_frame,
    parse_tag_id,
)
from tagsim.geometry import distance

if TYPE_CHECKING:  # pragma: no cover
    from tagsim.world import World

STALE_TIMEOUT_S = 10.0

INVENTORY_SCHEMA_VERSION = 1

RADAR_OK = "ok"
RADAR_OUT_OF_RANGE = "out_of_range"
RADAR_NOT_UWB = "not_uwb"


class UnknownTag(KeyError):
    pass


class NotUwbCapable(RuntimeError):
    pass


class NothingInRange(LookupError):
    pass


class MalformedFile(ValueError):
    pass


@dataclass
class DiscoveredTag:
    tag_id: bytes
    model: int
    last_rssi: float
    last_seen: float
    coarse_distance: float


@dataclass
class RadarResult:
    status: str
    meters: float | None = None


@dataclass
class InventoryEntry:
    tag_id: bytes
    device_info: ndef.DeviceInfo
    read_at: float
    read_position: tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "tag_id": format_tag_id(self.tag_id),
            "device_info": self.device_info.to_dict(),
            "read_at": self.read_at,
            "read_position": list(self.read_position),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "InventoryEntry":
        try:
            return cls(
                tag_id=parse_tag_id(data["tag_id"]),
                device_info=ndef.DeviceInfo.from_dict(data["device_info"]),
                read_at=float(data["read_at"]),
                read_position=(
                    float(data["read_position"][0]),
                    float(data["read_position"][1]),
                ),
            )
        except (KeyError, TypeError, IndexError, ValueError) as exc:
            raise MalformedFile(f"bad inventory entry: {exc}") from exc


class Reader:
    def __init__(
        self,
        params: radio.PropagationParams,
        position: tuple[float, float] = (0.0, 0.0),
        uwb_capable: bool = True,
        stale_timeout: float = STALE_TIMEOUT_S,
    ) -> None:
        self.params = params
        self.position = position
        self.uwb_capable = uwb_capable
        self.stale_timeout = stale_timeout
        self.discovered: dict[bytes, DiscoveredTag] = {}
        self.inventory: list[InventoryEntry] = []

    def on_frame(self, frame: bytes, rssi: float, now: float) -> DiscoveredTag | None:
        """Upsert the sender into the discovery list; non-tag frames ignored."""
        try:
            beacon = decode_beacon(frame)
        except ValueError:
            return None
        entry = DiscoveredTag(
            tag_id=beacon.tag_id,
            model=beacon.model,
            last_rssi=rssi,
            last_seen=now,
            coarse_distance=radio.invert_rssi(self.params, rssi),
        )
        self.discovered[beacon.tag_id] = entry
        return entry

    def expire_stale(self, now: float) -> None:
        cutoff = now - self.stale_timeout
        self.discovered = {
            tid: d for tid, d in self.discovered.items() if d.last_seen >= cutoff
        }

    def discovered_list(self) -> list[DiscoveredTag]:
        """Stable display order: sorted by tag id."""
        return sorted(self.discovered.values(), key=lambda d: d.tag_id)

    def request_buzz(self, tag_id: bytes) -> bytes:
        """Activation frame for a discovered tag, ready to broadcast.

        Any password travels out-of-band in the transport request, never
        inside the frame.
        """
        try:
            entry = self.discovered[tag_id]
        except KeyError:
            raise UnknownTag(format_tag_id(tag_id)) from None
        beacon = decode_beacon(
            encode_beacon(PROTOCOL_VERSION, entry.model, entry.tag_id)
        )
        return make_activation_frame(beacon)


def radar_read(reader: Reader, tag_id: bytes, world: "World") -> RadarResult:
    """Range a discovered tag; BLE-only tags cannot be ranged."""
    if tag_id not in reader.discovered:
        raise UnknownTag(format_tag_id(tag_id))
    if not reader.uwb_capable:
        raise NotUwbCapable("this reader has no ranging hardware")
    tag = world.tag_by_id(tag_id)
    if tag.model != MODEL_UWB_RAW:
        return RadarResult(RADAR_NOT_UWB)
    true_distance = distance(reader.position, tag.position)
    estimate = radio.uwb_range_estimate(
        world.params, true_distance, nlos=world.is_nlos(tag, reader), rng=world.rng
    )
    if estimate is None:
        return RadarResult(RADAR_OUT_OF_RANGE)
    return RadarResult(RADAR_OK, estimate)


def nfc_scan(reader: Reader, world: "World") -> tuple[bytes, ndef.DeviceInfo]:
    """Read the nearest tag within touch range and inventory the result.

    Ties at identical distance go to the smaller tag id.  The NFC coil is
    passive, so a drained battery does not stop the read.
    """
    candidates = [
        (distance(reader.position, tag.position), tag.tag_id, tag)
        for tag in world.tags
        if radio.nfc_readable(world.params, distance(reader.position, tag.position))
    ]
    if not candidates:
        raise NothingInRange("no tag within touch range")
    candidates.sort(key=lambda c: (c[0], c[1]))
    _, _, tag = candidates[0]
    info = ndef.decode_device_info(tag.ndef_image)
    reader.inventory.append(
        InventoryEntry(
            tag_id=tag.tag_id,
            device_info=info,
            read_at=world.clock,
            read_position=reader.position,
        )
    )
    return tag.tag_id, info


def save_inventory(reader: Reader, path: str) -> None:
    doc = {
        "version": INVENTORY_SCHEMA_VERSION,
        "entries": [entry.to_dict() for entry in reader.inventory],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_inventory(path: str) -> list[InventoryEntry]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedFile(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("version") != INVENTORY_SCHEMA_VERSION:
        raise MalformedFile("missing or unsupported inventory version")
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise MalformedFile("entries must be a list")
    return [InventoryEntry.from_dict(e) for e in entries]
