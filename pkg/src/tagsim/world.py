"""Deterministic discrete-event world: floor plan, tags, reader avatars.

A world is built from a scenario document and then driven purely by
commands (step, move, buzz, radar, nfc).  Every command is recorded in a
trace and every observable effect lands in the event log, so replaying
the trace against a fresh world reproduces the log byte for byte.

Time advances in 0.1 s substeps on an integer-millisecond clock; tags
beacon on the half-second grid.  The one shared random source is the
world's seeded generator, consumed only by command processing, never by
anything outside the trace.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from random import Random

from tagsim import radio, reader as reader_mod
from tagsim.beacon import MODEL_CODES, format_tag_id, parse_tag_id
from tagsim.geometry import (
    Point,
    Segment,
    clamp,
    distance,
    first_hit_fraction,
    point_in_rect,
)
from tagsim.reader import Reader
from tagsim.tag import CurrentProfile, Tag

SUBSTEP_MS = 100
WALL_STANDOFF_M = 0.05


class ParseError(ValueError):
    pass


class SemanticError(ValueError):
    pass


class NoSuchReader(IndexError):
    pass


@dataclass(frozen=True)
class Region:
    name: str
    rect: tuple[float, float, float, float]
    nlos: bool = False


_SCENARIO_KEYS = {
    "name",
    "bounds",
    "walls",
    "regions",
    "radio",
    "tags",
    "reader_start",
    "seed",
}
_TAG_KEYS = {"id", "model", "position", "ndef", "password", "profile", "capacity_mah"}
_PROFILE_KEYS = {"idle_ma", "buzz_ma", "uwb_ma"}
_REGION_KEYS = {"name", "rect", "nlos"}


def _require(cond: bool, exc: type[ValueError], msg: str) -> None:
    if not cond:
        raise exc(msg)


def load_scenario(document: dict | str) -> "World":
    """Build a world from a scenario document (dict or JSON text)."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"scenario is not valid JSON: {exc}") from exc
    _require(isinstance(document, dict), ParseError, "scenario must be an object")
    unknown = set(document) - _SCENARIO_KEYS
    _require(not unknown, ParseError, f"unknown scenario fields: {sorted(unknown)}")
    for key in ("bounds", "tags", "reader_start", "seed"):
        _require(key in document, ParseError, f"scenario missing field: {key}")

    bounds = document["bounds"]
    _require(
        isinstance(bounds, (list, tuple)) and len(bounds) == 2,
        ParseError,
        "bounds must be [width, height]",
    )
    width, height = float(bounds[0]), float(bounds[1])
    _require(width > 0 and height > 0, SemanticError, "bounds must be positive")

    walls: list[Segment] = []
    for seg in document.get("walls", []):
        _require(
            isinstance(seg, (list, tuple)) and len(seg) == 4,
            ParseError,
            "each wall must be [x1, y1, x2, y2]",
        )
        walls.append(tuple(float(v) for v in seg))

    regions: list[Region] = []
    for reg in document.get("regions", []):
        _require(isinstance(reg, dict), ParseError, "each region must be an object")
        unknown = set(reg) - _REGION_KEYS
        _require(not unknown, ParseError, f"unknown region fields: {sorted(unknown)}")
        _require(
            "name" in reg and "rect" in reg, ParseError, "region needs name and rect"
        )
        rect = reg["rect"]
        _require(
            isinstance(rect, (list, tuple)) and len(rect) == 4,
            ParseError,
            "region rect must be [x1, y1, x2, y2]",
        )
        regions.append(
            Region(
                name=str(reg["name"]),
                rect=tuple(float(v) for v in rect),
                nlos=bool(reg.get("nlos", False)),
            )
        )

    try:
        params = radio.PropagationParams.from_dict(document.get("radio", {}))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc

    tags: list[Tag] = []
    seen_ids: set[bytes] = set()
    _require(isinstance(document["tags"], list), ParseError, "tags must be a list")
    for spec in document["tags"]:
        _require(isinstance(spec, dict), ParseError, "each tag must be an object")
        unknown = set(spec) - _TAG_KEYS
        _require(not unknown, ParseError, f"unknown tag fields: {sorted(unknown)}")
        for key in ("id", "model", "position"):
            _require(key in spec, ParseError, f"tag missing field: {key}")
        try:
            tag_id = parse_tag_id(spec["id"])
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        _require(
            tag_id not in seen_ids,
            SemanticError,
            f"duplicate tag id: {spec['id']}",
        )
        seen_ids.add(tag_id)
        _require(
            spec["model"] in MODEL_CODES,
            ParseError,
            f"unknown tag model: {spec['model']!r}",
        )
        pos = spec["position"]
        _require(
            isinstance(pos, (list, tuple)) and len(pos) == 2,
            ParseError,
            "tag position must be [x, y]",
        )
        position = (float(pos[0]), float(pos[1]))
        _require(
            0 <= position[0] <= width and 0 <= position[1] <= height,
            SemanticError,
            f"tag {spec['id']} outside bounds",
        )
        profile_spec = spec.get("profile", {})
        _require(
            isinstance(profile_spec, dict), ParseError, "tag profile must be an object"
        )
        unknown = set(profile_spec) - _PROFILE_KEYS
        _require(not unknown, ParseError, f"unknown profile fields: {sorted(unknown)}")
        profile = CurrentProfile(**{k: float(v) for k, v in profile_spec.items()})
        try:
            ndef_image = bytes.fromhex(spec.get("ndef", ""))
        except ValueError as exc:
            raise ParseError(f"tag {spec['id']} ndef is not hex") from exc
        tags.append(
            Tag(
                tag_id=tag_id,
                model=MODEL_CODES[spec["model"]],
                position=position,
                ndef_image=ndef_image,
                password=spec.get("password"),
                profile=profile,
                capacity_mah=float(spec.get("capacity_mah", 6000.0)),
            )
        )

    start = document["reader_start"]
    _require(
        isinstance(start, (list, tuple)) and len(start) == 2,
        ParseError,
        "reader_start must be [x, y]",
    )
    reader_start = (float(start[0]), float(start[1]))
    _require(
        0 <= reader_start[0] <= width and 0 <= reader_start[1] <= height,
        SemanticError,
        "reader_start outside bounds",
    )
    seed = document["seed"]
    _require(isinstance(seed, int), ParseError, "seed must be an integer")

    return World(
        bounds=(width, height),
        walls=walls,
        regions=regions,
        params=params,
        tags=tags,
        reader_start=reader_start,
        seed=seed,
        name=str(document.get("name", "")),
    )


class World:
    def __init__(
        self,
        bounds: tuple[float, float],
        walls: list[Segment],
        regions: list[Region],
        params: radio.PropagationParams,
        tags: list[Tag],
        reader_start: Point,
        seed: int,
        name: str = "",
    ) -> None:
        self.name = name
        self.bounds = bounds
        self.walls = walls
        self.regions = regions
        self.params = params
        self.tags = tags
        self.readers = [Reader(params, position=reader_start)]
        self.seed = seed
        self.rng = Random(seed)
        self.clock_ms = 0
        self.events: list[dict] = []
        self.trace: list[dict] = []
        self.path_lengths = [0.0]
        self._tags_by_id = {t.tag_id: t for t in tags}

    # -- queries -----------------------------------------------------------

    @property
    def clock(self) -> float:
        return self.clock_ms / 1000.0

    def tag_by_id(self, tag_id: bytes) -> Tag:
        try:
            return self._tags_by_id[tag_id]
        except KeyError:
            raise reader_mod.UnknownTag(format_tag_id(tag_id)) from None

    def reader_at(self, index: int) -> Reader:
        if not 0 <= index < len(self.readers):
            raise NoSuchReader(index)
        return self.readers[index]

    def add_reader(self, position: Point) -> int:
        """Attach another reader avatar; returns its index."""
        self.readers.append(Reader(self.params, position=position))
        self.path_lengths.append(0.0)
        return len(self.readers) - 1

    def is_nlos(self, tag: Tag, reader: Reader) -> bool:
        """A tag boxed into an obstruction region has no line of sight out."""
        for region in self.regions:
            if region.nlos and point_in_rect(tag.position, region.rect):
                if not point_in_rect(reader.position, region.rect):
                    return True
        return False

    def _region_wall_crossings(self, tag: Tag, pos: Point) -> int:
        return sum(
            1
            for region in self.regions
            if region.nlos
            and point_in_rect(tag.position, region.rect) != point_in_rect(pos, region.rect)
        )

    def buzz_levels(self, position: Point) -> dict[bytes, float]:
        """Audible intensity of every playing buzzer at a position."""
        out = {}
        for tag in self.tags:
            if tag.buzzing:
                d = distance(position, tag.position)
                out[tag.tag_id] = 1.0 / (1.0 + d * d)
        return out

    def event_log_text(self) -> str:
        return "".join(
            json.dumps(event, separators=(",", ":")) + "\n" for event in self.events
        )

    # -- command layer -------------------------------------------------------

    def apply(self, command: dict) -> object:
        """Run one recorded command; the only mutation entry point."""
        op = command.get("op")
        if op == "step":
            self.trace.append(command)
            return self._step_ms(int(command["dt_ms"]))
        if op == "move":
            self.trace.append(command)
            return self._move_reader(
                int(command.get("reader", 0)),
                float(command["dx"]),
                float(command["dy"]),
            )
        if op == "buzz":
            self.trace.append(command)
            return self._buzz(
                int(command.get("reader", 0)),
                parse_tag_id(command["tag_id"]),
                command.get("password"),
            )
        if op == "radar":
            self.trace.append(command)
            return self._radar(
                int(command.get("reader", 0)), parse_tag_id(command["tag_id"])
            )
        if op == "nfc":
            self.trace.append(command)
            return self._nfc(int(command.get("reader", 0)))
        raise ParseError(f"unknown command op: {op!r}")

    def step(self, dt: float) -> None:
        if dt <= 0:
            raise ValueError("dt must be positive")
        self.apply({"op": "step", "dt_ms": max(1, round(dt * 1000))})

    def move_reader(self, index: int, dx: float, dy: float) -> Point:
        return self.apply({"op": "move", "reader": index, "dx": dx, "dy": dy})

    def buzz(self, index: int, tag_id: bytes, password: str | None = None) -> str:
        return self.apply(
            {
                "op": "buzz",
                "reader": index,
                "tag_id": format_tag_id(tag_id),
                "password": password,
            }
        )

    def radar(self, index: int, tag_id: bytes) -> reader_mod.RadarResult:
        return self.apply(
            {"op": "radar", "reader": index, "tag_id": format_tag_id(tag_id)}
        )

    def nfc(self, index: int):
        return self.apply({"op": "nfc", "reader": index})

    # -- command implementations ----------------------------------------------

    def _log(self, kind: str, t_ms: int | None = None, **fields) -> None:
        event = {"t": (self.clock_ms if t_ms is None else t_ms) / 1000.0, "kind": kind}
        event.update(fields)
        self.events.append(event)

    def _step_ms(self, dt_ms: int) -> None:
        if dt_ms <= 0:
            raise ValueError("dt must be positive")
        target = self.clock_ms + dt_ms
        while self.clock_ms < target:
            self._substep(min(SUBSTEP_MS, target - self.clock_ms))
        self._log("clock_advance", dt=dt_ms / 1000.0)

    def _substep(self, dt_ms: int) -> None:
        now_ms = self.clock_ms + dt_ms
        for tag in self.tags:
            for emission in tag.tick(now_ms):
                if emission.kind == "beacon":
                    self._deliver_beacon(tag, emission.t_ms, emission.data["frame"])
                else:
                    self._log(
                        emission.kind,
                        t_ms=emission.t_ms,
                        tag_id=format_tag_id(tag.tag_id),
                        **emission.data,
                    )
        self.clock_ms = now_ms
        now = self.clock
        for rdr in self.readers:
            rdr.expire_stale(now)

    def _deliver_beacon(self, tag: Tag, t_ms: int, frame: bytes) -> None:
        self._log("beacon_tx", t_ms=t_ms, tag_id=format_tag_id(tag.tag_id))
        for index, rdr in enumerate(self.readers):
            rssi = radio.ble_deliver(
                self.params,
                tag.position,
                rdr.position,
                self.walls,
                rng=self.rng,
                extra_wall_crossings=self._region_wall_crossings(tag, rdr.position),
            )
            if rssi is None:
                continue
            rdr.on_frame(frame, rssi, t_ms / 1000.0)
            self._log(
                "beacon_rx",
                t_ms=t_ms,
                reader=index,
                tag_id=format_tag_id(tag.tag_id),
                rssi=round(rssi, 6),
            )

    def _move_reader(self, index: int, dx: float, dy: float) -> Point:
        rdr = self.reader_at(index)
        x0, y0 = rdr.position
        width, height = self.bounds
        tx = clamp(x0 + dx, 0.0, width)
        ty = clamp(y0 + dy, 0.0, height)
        delta = (tx - x0, ty - y0)
        hit = first_hit_fraction((x0, y0), delta, self.walls)
        if hit is not None:
            length = math.hypot(*delta)
            if length > 0:
                back = WALL_STANDOFF_M / length
                hit = max(0.0, hit - back)
            tx = x0 + delta[0] * hit
            ty = y0 + delta[1] * hit
        new_pos = (tx, ty)
        self.path_lengths[index] += distance(rdr.position, new_pos)
        rdr.position = new_pos
        self._log("reader_move", reader=index, x=round(tx, 6), y=round(ty, 6))
        return new_pos

    def _buzz(self, index: int, tag_id: bytes, password: str | None) -> str:
        rdr = self.reader_at(index)
        frame = rdr.request_buzz(tag_id)
        result = "out_of_range"
        for tag in self.tags:
            rssi = radio.ble_deliver(
                self.params,
                rdr.position,
                tag.position,
                self.walls,
                rng=self.rng,
                extra_wall_crossings=self._region_wall_crossings(tag, rdr.position),
            )
            if rssi is None:
                continue
            outcome = tag.on_frame(frame, password=password)
            if tag.tag_id == tag_id:
                result = outcome
        self._log(
            "buzz_request", reader=index, tag_id=format_tag_id(tag_id), result=result
        )
        return result

    def _radar(self, index: int, tag_id: bytes) -> reader_mod.RadarResult:
        rdr = self.reader_at(index)
        result = reader_mod.radar_read(rdr, tag_id, self)
        fields = {"status": result.status}
        if result.meters is not None:
            fields["meters"] = round(result.meters, 6)
        self._log("radar_read", reader=index, tag_id=format_tag_id(tag_id), **fields)
        return result

    def _nfc(self, index: int):
        rdr = self.reader_at(index)
        try:
            tag_id, info = reader_mod.nfc_scan(rdr, self)
        except reader_mod.NothingInRange:
            self._log("nfc_miss", reader=index)
            raise
        self._log("nfc_read", reader=index, tag_id=format_tag_id(tag_id))
        return tag_id, info


def replay(document: dict | str, commands: list[dict]) -> World:
    """Rebuild a world and apply a recorded command list.

    Domain errors raised by individual commands are swallowed: they
    happened in the original session too, and their side effects (log
    entries, rng draws) are what matters for reproduction.
    """
    world = load_scenario(document)
    for command in commands:
        try:
            world.apply(dict(command))
        except (reader_mod.UnknownTag, reader_mod.NothingInRange, reader_mod.NotUwbCapable):
            continue
    return world
