"""Session state for the interactive service.

One session owns one world and one reader avatar.  All message handling
for a session runs under its lock, so commands are strictly serialized;
distinct sessions share nothing and may run concurrently.
"""

from __future__ import annotations

import asyncio
import uuid

from tagsim import reader as reader_mod
from tagsim.beacon import MODEL_NAMES, format_tag_id, parse_tag_id
from tagsim.geometry import distance
from tagsim.scenarios import get_scenario
from tagsim.service import schemas
from tagsim.tag import ACCEPTED
from tagsim.world import World, load_scenario

LOCATE_RADIUS_M = 0.5


class SessionError(Exception):
    def __init__(self, code: str, detail: str = "") -> None:
        super().__init__(detail or code)
        self.code = code
        self.detail = detail or code


class Session:
    def __init__(self, session_id: str) -> None:
        self.session_id = session_id
        self.lock = asyncio.Lock()
        self.world: World | None = None
        self.document: dict | None = None
        self.scenario_name: str | None = None
        self.located: set[bytes] = set()
        self.auto_tick = False
        self.auto_tick_hz = 10.0
        self._event_cursor = 0

    # -- helpers -------------------------------------------------------------

    def _require_world(self) -> World:
        if self.world is None:
            raise SessionError("no_world", "load a scenario first")
        return self.world

    def _refresh_located(self) -> None:
        world = self.world
        if world is None:
            return
        rdr = world.readers[0]
        for tag in world.tags:
            if distance(rdr.position, tag.position) <= LOCATE_RADIUS_M:
                self.located.add(tag.tag_id)

    def drain_pushes(self) -> list[schemas.EventPush | schemas.BuzzingPush]:
        """New event pushes since the last drain, plus live buzz levels."""
        world = self.world
        if world is None:
            return []
        out: list[schemas.EventPush | schemas.BuzzingPush] = [
            schemas.EventPush(event=e) for e in world.events[self._event_cursor :]
        ]
        self._event_cursor = len(world.events)
        rdr = world.readers[0]
        for tag_id, level in sorted(world.buzz_levels(rdr.position).items()):
            out.append(
                schemas.BuzzingPush(tag_id=format_tag_id(tag_id), level=round(level, 6))
            )
        return out

    def world_state(self) -> schemas.WorldState:
        state = schemas.WorldState(
            session_id=self.session_id,
            scenario=self.scenario_name,
            auto_tick=self.auto_tick,
        )
        world = self.world
        if world is None:
            return state
        rdr = world.readers[0]
        state.clock = world.clock
        state.bounds = list(world.bounds)
        state.walls = [list(w) for w in world.walls]
        state.regions = [
            {"name": r.name, "rect": list(r.rect), "nlos": r.nlos}
            for r in world.regions
        ]
        state.reader = schemas.ReaderState(x=rdr.position[0], y=rdr.position[1])
        state.located = [
            schemas.LocatedTag(
                tag_id=format_tag_id(t.tag_id),
                model=MODEL_NAMES[t.model],
                x=t.position[0],
                y=t.position[1],
            )
            for t in world.tags
            if t.tag_id in self.located
        ]
        state.buzzing = [
            schemas.BuzzingTag(tag_id=format_tag_id(tid), level=round(level, 6))
            for tid, level in sorted(world.buzz_levels(rdr.position).items())
        ]
        state.nfc_available = any(
            distance(rdr.position, t.position) <= world.params.nfc_range_m
            for t in world.tags
        )
        state.inventory = [
            schemas.InventoryItem(**e.to_dict()) for e in rdr.inventory
        ]
        return state

    # -- message handling -----------------------------------------------------

    def handle(self, msg) -> schemas.ServerMessage:
        """Apply one client message and build its response."""
        kind = msg.type
        if kind == "hello":
            return self.world_state()
        if kind == "load_scenario":
            return self._load(msg)
        if kind == "move":
            world = self._require_world()
            world.move_reader(0, msg.dx, msg.dy)
            self._refresh_located()
            return self.world_state()
        if kind == "step":
            world = self._require_world()
            if msg.dt <= 0:
                raise SessionError("bad_message", "dt must be positive")
            world.step(msg.dt)
            self._refresh_located()
            return self.world_state()
        if kind == "auto_tick":
            self._require_world()
            self.auto_tick = msg.enabled
            self.auto_tick_hz = msg.hz
            return self.world_state()
        if kind == "list_tags":
            world = self._require_world()
            rows = [
                schemas.TagRow(
                    tag_id=format_tag_id(d.tag_id),
                    model=MODEL_NAMES.get(d.model, hex(d.model)),
                    last_rssi=round(d.last_rssi, 6),
                    last_seen=d.last_seen,
                    coarse_distance=round(d.coarse_distance, 6),
                )
                for d in world.readers[0].discovered_list()
            ]
            return schemas.TagList(tags=rows)
        if kind == "buzz":
            return self._buzz(msg)
        if kind == "radar":
            return self._radar(msg)
        if kind == "nfc_read":
            return self._nfc()
        if kind == "save_inventory":
            world = self._require_world()
            path = msg.path or f"inventory-{self.session_id}.json"
            reader_mod.save_inventory(world.readers[0], path)
            return self.world_state()
        raise SessionError("unknown_type", f"unhandled message type {kind!r}")

    def tick_once(self) -> None:
        """One auto-tick step; caller holds the session lock."""
        if self.world is not None:
            self.world.step(0.1)
            self._refresh_located()

    def _load(self, msg) -> schemas.WorldState:
        if msg.document is not None:
            document = dict(msg.document)
        elif msg.name:
            document = get_scenario(msg.name)
        else:
            raise SessionError("bad_message", "need a scenario name or document")
        if msg.seed is not None:
            document["seed"] = msg.seed
        self.world = load_scenario(document)
        self.document = document
        self.scenario_name = document.get("name") or msg.name
        self.located = set()
        self._event_cursor = 0
        self._refresh_located()
        return self.world_state()

    def _buzz(self, msg) -> schemas.ServerMessage:
        world = self._require_world()
        try:
            tag_id = parse_tag_id(msg.tag_id)
        except ValueError as exc:
            raise SessionError("bad_message", str(exc)) from exc
        try:
            outcome = world.buzz(0, tag_id, msg.password)
        except reader_mod.UnknownTag:
            raise SessionError("unknown_tag", msg.tag_id) from None
        if outcome != ACCEPTED:
            raise SessionError(outcome, f"buzz request returned {outcome}")
        rdr = world.readers[0]
        level = world.buzz_levels(rdr.position).get(tag_id, 0.0)
        return schemas.BuzzingPush(tag_id=msg.tag_id, level=round(level, 6))

    def _radar(self, msg) -> schemas.Distance:
        world = self._require_world()
        try:
            tag_id = parse_tag_id(msg.tag_id)
        except ValueError as exc:
            raise SessionError("bad_message", str(exc)) from exc
        try:
            result = world.radar(0, tag_id)
        except reader_mod.UnknownTag:
            raise SessionError("unknown_tag", msg.tag_id) from None
        except reader_mod.NotUwbCapable as exc:
            raise SessionError("not_uwb_capable", str(exc)) from None
        meters = None if result.meters is None else round(result.meters, 6)
        return schemas.Distance(tag_id=msg.tag_id, status=result.status, meters=meters)

    def _nfc(self) -> schemas.NdefResult:
        world = self._require_world()
        try:
            tag_id, info = world.nfc(0)
        except reader_mod.NothingInRange:
            raise SessionError("nothing_in_range", "no tag within 0.10 m") from None
        return schemas.NdefResult(
            tag_id=format_tag_id(tag_id), device_info=info.to_dict()
        )


class SessionManager:
    def __init__(self) -> None:
        self.sessions: dict[str, Session] = {}

    def get_or_create(self, session_id: str | None) -> Session:
        if session_id is not None and session_id in self.sessions:
            return self.sessions[session_id]
        new_id = session_id or uuid.uuid4().hex
        session = Session(new_id)
        self.sessions[new_id] = session
        return session
