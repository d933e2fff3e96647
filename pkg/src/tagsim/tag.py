"""Tag firmware model: beacon schedule, activation, buzzer, battery.

Both tag models broadcast an identity frame every half second and react
to activation echoes addressed to them.  The buzzer plays three distinct
tones of three seconds each; the LED follows the model rule (BLE-AC lit
only while buzzing, UWB-RAW lit whenever powered).  Battery drain is a
simple accumulator of current times elapsed time; a drained tag falls
silent but its NFC side stays readable because that coil is passive.

All times are integer simulation milliseconds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from tagsim.beacon import (
    FLAG_ACTIVATE,
    MODEL_BLE_AC,
    MODEL_UWB_RAW,
    PROTOCOL_VERSION,
    decode_beacon,
    encode_beacon,
)

BEACON_INTERVAL_MS = 500

TONE_SEQUENCE = ((2000.0, 3.0), (3000.0, 3.0), (4000.0, 3.0))
TONE_MS = 3000
BUZZ_TOTAL_MS = TONE_MS * len(TONE_SEQUENCE)

ACCEPTED = "accepted"
IGNORED = "ignored"
PASSWORD_REQUIRED = "password_required"

DEFAULT_CAPACITY_MAH = 6000.0


def buzzer_sequence() -> tuple[tuple[float, float], ...]:
    """The fixed three-tone pattern as (frequency Hz, duration s) pairs."""
    return TONE_SEQUENCE


@dataclass
class CurrentProfile:
    """Draw in mA per activity; scenario files may override any of these."""

    idle_ma: float = 1.0
    buzz_ma: float = 30.0
    uwb_ma: float = 75.0


@dataclass
class BatteryState:
    capacity_mah: float = DEFAULT_CAPACITY_MAH
    drawn_mah: float = 0.0

    @property
    def depleted(self) -> bool:
        return self.drawn_mah >= self.capacity_mah


@dataclass
class Emission:
    """Something the tag did at an instant, for the world's event log."""

    t_ms: int
    kind: str
    data: dict = field(default_factory=dict)


class Tag:
    def __init__(
        self,
        tag_id: bytes,
        model: int,
        position: tuple[float, float],
        ndef_image: bytes = b"",
        password: str | None = None,
        profile: CurrentProfile | None = None,
        capacity_mah: float = DEFAULT_CAPACITY_MAH,
    ) -> None:
        self.tag_id = tag_id
        self.model = model
        self.position = position
        self.ndef_image = ndef_image
        self.password = password
        self.profile = profile or CurrentProfile()
        self.battery = BatteryState(capacity_mah=capacity_mah)
        self.clock_ms = 0
        self._next_beacon_ms = BEACON_INTERVAL_MS
        self._buzz_started_ms: int | None = None
        self._pending: list[Emission] = []
        self._depletion_reported = False

    # -- state queries ----------------------------------------------------

    @property
    def buzzing(self) -> bool:
        if self.battery.depleted or self._buzz_started_ms is None:
            return False
        return self.clock_ms < self._buzz_started_ms + BUZZ_TOTAL_MS

    @property
    def led_on(self) -> bool:
        if self.battery.depleted:
            return False
        if self.model == MODEL_UWB_RAW:
            return True
        return self.buzzing

    def current_draw_ma(self) -> float:
        """Instantaneous draw given the present activity."""
        if self.battery.depleted:
            return 0.0
        base = self.profile.uwb_ma if self.model == MODEL_UWB_RAW else self.profile.idle_ma
        if self.buzzing:
            base += self.profile.buzz_ma
        return base

    def beacon_frame(self) -> bytes:
        return encode_beacon(PROTOCOL_VERSION, self.model, self.tag_id)

    # -- behaviour ---------------------------------------------------------

    def on_frame(self, frame: bytes, password: str | None = None) -> str:
        """React to a received frame.

        Accepts iff the frame decodes, carries the activation flag, and
        names this tag; anything else is silently ignored.  There is no
        notion of a paired reader: any client that can transmit the echo
        may ring the buzzer, unless an NFC-held password was configured.
        A re-trigger while already playing is accepted but does not
        restart the sequence.
        """
        if self.battery.depleted:
            return IGNORED
        try:
            beacon = decode_beacon(frame)
        except ValueError:
            return IGNORED
        if not beacon.flags & FLAG_ACTIVATE or beacon.tag_id != self.tag_id:
            return IGNORED
        if self.password is not None and password != self.password:
            return PASSWORD_REQUIRED
        if self.buzzing:
            return ACCEPTED
        self._start_buzz()
        return ACCEPTED

    def _start_buzz(self) -> None:
        start = self.clock_ms
        self._buzz_started_ms = start
        if self.model == MODEL_BLE_AC:
            self._pending.append(Emission(start, "led", {"on": True}))
        for i, (freq, _duration) in enumerate(TONE_SEQUENCE):
            t0 = start + i * TONE_MS
            self._pending.append(Emission(t0, "tone_start", {"freq_hz": freq}))
            self._pending.append(Emission(t0 + TONE_MS, "tone_stop", {"freq_hz": freq}))
        if self.model == MODEL_BLE_AC:
            self._pending.append(Emission(start + BUZZ_TOTAL_MS, "led", {"on": False}))

    def tick(self, now_ms: int) -> list[Emission]:
        """Advance to ``now_ms``: beacons, tone boundaries, battery draw.

        Emits exactly one beacon per elapsed half-second boundary.  Draw
        is integrated piecewise between emission instants so a buzz that
        ends mid-tick is billed at the right rate.
        """
        if now_ms < self.clock_ms:
            raise ValueError("tick may not move time backwards")
        if now_ms == self.clock_ms:
            return []

        emissions: list[Emission] = []
        cursor = self.clock_ms
        while cursor < now_ms:
            boundary = now_ms
            pending_next = min(
                (e.t_ms for e in self._pending if e.t_ms > cursor), default=boundary
            )
            boundary = min(boundary, pending_next)
            if not self.battery.depleted and self._next_beacon_ms <= boundary:
                boundary = min(boundary, self._next_beacon_ms)
            self._accrue(boundary - cursor)
            cursor = boundary
            self.clock_ms = cursor

            if self.battery.depleted:
                emissions.extend(self._handle_depletion())
                continue
            if cursor == self._next_beacon_ms:
                emissions.append(
                    Emission(cursor, "beacon", {"frame": self.beacon_frame()})
                )
                self._next_beacon_ms += BEACON_INTERVAL_MS
            emissions.extend(self._drain_pending(cursor))
        self.clock_ms = now_ms
        return emissions

    def _drain_pending(self, now_ms: int) -> list[Emission]:
        due = [e for e in self._pending if e.t_ms <= now_ms]
        self._pending = [e for e in self._pending if e.t_ms > now_ms]
        if (
            self._buzz_started_ms is not None
            and now_ms >= self._buzz_started_ms + BUZZ_TOTAL_MS
            and not self._pending
        ):
            self._buzz_started_ms = None
        return due

    def _handle_depletion(self) -> list[Emission]:
        if self._depletion_reported:
            return []
        self._depletion_reported = True
        out = []
        if self._buzz_started_ms is not None:
            elapsed = self.clock_ms - self._buzz_started_ms
            if 0 <= elapsed < BUZZ_TOTAL_MS:
                freq = TONE_SEQUENCE[elapsed // TONE_MS][0]
                out.append(Emission(self.clock_ms, "tone_stop", {"freq_hz": freq}))
            self._buzz_started_ms = None
        self._pending.clear()
        out.append(Emission(self.clock_ms, "battery_depleted", {}))
        out.append(Emission(self.clock_ms, "led", {"on": False}))
        return out

    def _accrue(self, elapsed_ms: int) -> None:
        if elapsed_ms <= 0:
            return
        self.battery.drawn_mah += self.current_draw_ma() * elapsed_ms / 3_600_000.0
