"""Scripted hunters that locate tags the way a person with the app would.

The radar strategy repeatedly ranges the target and keeps walking in
whichever of the eight compass directions shrinks the reading, falling
back to coarse RSSI distance while the target is beyond ranging reach.
The buzz strategy rings the target and descends the audible intensity
field.  Both are greedy with momentum: hold the current heading while
measurements improve, rotate through the compass when they stop, and
take a fresh random heading after a full circle of failures.

Agents draw their tie-break randomness from their own generator, never
from the world's, so a recorded command trace replays bit-identically
without rerunning any agent logic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from random import Random

from tagsim.beacon import MODEL_UWB_RAW, format_tag_id
from tagsim.geometry import distance
from tagsim.reader import RADAR_OK
from tagsim.tag import Tag
from tagsim.world import World

RADAR_GRADIENT = "radar_gradient"
BUZZ_WALKER = "buzz_walker"
RANDOM_WALK = "random_walk"

_SQ = math.sqrt(0.5)
_COMPASS = (
    (0.0, 1.0),
    (_SQ, _SQ),
    (1.0, 0.0),
    (_SQ, -_SQ),
    (0.0, -1.0),
    (-_SQ, -_SQ),
    (-1.0, 0.0),
    (-_SQ, _SQ),
)

_IMPROVE_EPS = 0.05
_TICK_S = 0.1
_LOST_AFTER_S = 2.0
_STALL_LIMIT = 16
_ESCAPE_STEPS = (8, 20)


class Timeout(RuntimeError):
    pass


@dataclass
class Agent:
    kind: str = RADAR_GRADIENT
    step_size: float = 0.25
    locate_radius: float = 0.5
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.step_size <= 0 or self.locate_radius <= 0:
            raise ValueError("step size and locate radius must be positive")
        if self.kind not in (RADAR_GRADIENT, BUZZ_WALKER, RANDOM_WALK):
            raise ValueError(f"unknown agent kind: {self.kind!r}")


@dataclass
class TagHunt:
    tag_id: str
    discovered_at: float
    located_at: float
    method: str

    def to_dict(self) -> dict:
        return {
            "tag_id": self.tag_id,
            "discovered_at": self.discovered_at,
            "located_at": self.located_at,
            "method": self.method,
        }


@dataclass
class HuntReport:
    entries: list[TagHunt] = field(default_factory=list)
    total_time: float = 0.0
    path_length: float = 0.0
    timed_out: bool = False

    def to_dict(self) -> dict:
        return {
            "entries": [e.to_dict() for e in self.entries],
            "total_time": self.total_time,
            "path_length": self.path_length,
            "timed_out": self.timed_out,
        }


class _Hunter:
    """One avatar working through an ordered list of targets."""

    def __init__(self, world: World, reader_index: int, rng: Random) -> None:
        self.world = world
        self.reader_index = reader_index
        self.rng = rng
        self.first_seen: dict[bytes, float] = {}
        self._last_coarse_sample: dict[bytes, float] = {}

    def _note_discoveries(self) -> None:
        rdr = self.world.reader_at(self.reader_index)
        for tag_id in rdr.discovered:
            self.first_seen.setdefault(tag_id, self.world.clock)

    def _measure(self, tag: Tag, kind: str) -> float | None:
        """Fresh distance estimate, or None when nothing new was sensed."""
        world, rdr = self.world, self.world.reader_at(self.reader_index)
        tid = tag.tag_id
        if kind == RADAR_GRADIENT:
            result = world.radar(self.reader_index, tid)
            if result.status == RADAR_OK:
                return result.meters
            # Beyond ranging reach: fall back to coarse RSSI distance, but
            # only when a fresh beacon has refreshed it since the last look.
            entry = rdr.discovered.get(tid)
            if entry is None:
                return None
            if entry.last_seen <= self._last_coarse_sample.get(tid, -1.0):
                return None
            self._last_coarse_sample[tid] = entry.last_seen
            return entry.coarse_distance
        if kind == BUZZ_WALKER:
            levels = world.buzz_levels(rdr.position)
            if tid not in levels:
                world.buzz(self.reader_index, tid)
                levels = world.buzz_levels(rdr.position)
            level = levels.get(tid)
            if level is None or level <= 0:
                return None
            return math.sqrt(max(1.0 / level - 1.0, 0.0))
        return None

    def _move(self, heading: int, rotation: int, step_size: float) -> int:
        """One step along the compass heading; rotate away from blockers."""
        rdr = self.world.reader_at(self.reader_index)
        before = rdr.position
        dx, dy = _COMPASS[heading]
        self.world.move_reader(self.reader_index, dx * step_size, dy * step_size)
        if distance(before, rdr.position) < step_size * 0.5:
            return (heading + rotation) % 8
        return heading

    def hunt(self, tag: Tag, agent: Agent, deadline_ms: int) -> TagHunt | None:
        world = self.world
        rdr = world.reader_at(self.reader_index)
        tid = tag.tag_id
        heading = self.rng.randrange(8)
        rotation = self.rng.choice((1, -1))
        best = math.inf
        stalls = 0
        escape = 0
        last_fresh = world.clock

        while True:
            if world.clock_ms >= deadline_ms:
                return None
            self._note_discoveries()
            if tid in self.first_seen and (
                distance(rdr.position, tag.position) <= agent.locate_radius
            ):
                return TagHunt(
                    tag_id=format_tag_id(tid),
                    discovered_at=self.first_seen[tid],
                    located_at=world.clock,
                    method="radar" if tag.model == MODEL_UWB_RAW else "buzzer",
                )

            seen = tid in rdr.discovered
            estimate = self._measure(tag, agent.kind) if seen else None
            if estimate is not None:
                last_fresh = world.clock
            lost = world.clock - last_fresh > _LOST_AFTER_S

            if escape > 0:
                escape -= 1
                heading = self._move(heading, rotation, agent.step_size)
            elif lost:
                # Out of contact: sweep the floor until the tag is heard
                # (or buzzes) again.
                if self.rng.random() < 0.1:
                    heading = self.rng.randrange(8)
                heading = self._move(heading, rotation, agent.step_size)
            elif not seen:
                pass  # in contact recently but no list entry yet: hold
            elif estimate is not None:
                if estimate < best - _IMPROVE_EPS:
                    best = estimate
                    stalls = 0
                else:
                    stalls += 1
                    heading = (heading + rotation) % 8
                    if stalls >= _STALL_LIMIT:
                        # Circling without improvement means a local
                        # pocket (an obstacle between us and the tag):
                        # commit to a blind dash, then resume the descent.
                        escape = self.rng.randint(*_ESCAPE_STEPS)
                        heading = self.rng.randrange(8)
                        best = math.inf
                        stalls = 0
                heading = self._move(heading, rotation, agent.step_size)
            else:
                if agent.kind == RANDOM_WALK and self.rng.random() < 0.2:
                    heading = self.rng.randrange(8)
                heading = self._move(heading, rotation, agent.step_size)
            world.step(_TICK_S)


def run_agent(
    world: World,
    agent: Agent,
    tag_order: list[bytes],
    time_limit: float,
    reader_index: int = 0,
) -> HuntReport:
    """Hunt the listed tags in order with one strategy for all of them."""
    plan = [(agent, world.tag_by_id(tid)) for tid in tag_order]
    return _run_plan(world, plan, time_limit, reader_index)


def run_standard_hunt(
    world: World, time_limit: float = 300.0, reader_index: int = 0
) -> HuntReport:
    """Ranging-model tags first via radar, then broadcast tags via buzzer."""
    uwb = [t for t in world.tags if t.model == MODEL_UWB_RAW]
    ble = [t for t in world.tags if t.model != MODEL_UWB_RAW]
    plan = [(Agent(RADAR_GRADIENT), tag) for tag in uwb]
    plan += [(Agent(BUZZ_WALKER), tag) for tag in ble]
    return _run_plan(world, plan, time_limit, reader_index)


def _run_plan(
    world: World,
    plan: list[tuple[Agent, Tag]],
    time_limit: float,
    reader_index: int,
) -> HuntReport:
    start_ms = world.clock_ms
    deadline_ms = start_ms + round(time_limit * 1000)
    path_before = world.path_lengths[reader_index]
    seed = None
    if plan and plan[0][0].seed is not None:
        seed = plan[0][0].seed
    hunter = _Hunter(
        world, reader_index, Random(world.seed * 7919 + 17 if seed is None else seed)
    )
    report = HuntReport()
    for agent, tag in plan:
        hunt = hunter.hunt(tag, agent, deadline_ms)
        if hunt is None:
            report.timed_out = True
            break
        report.entries.append(hunt)
    report.total_time = (world.clock_ms - start_ms) / 1000.0
    report.path_length = world.path_lengths[reader_index] - path_before
    return report
