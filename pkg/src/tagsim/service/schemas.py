"""Pydantic models for the REST API and the session wire protocol.

Every socket frame is a JSON object with a ``type`` tag.  Client types:
hello, load_scenario, move, step, auto_tick, list_tags, buzz, radar,
nfc_read, save_inventory.  Server types: world_state, tag_list, distance,
buzzing, ndef_result, error, event.  Each client message gets exactly one
response; world changes additionally stream as event pushes.
"""

from __future__ import annotations

from typing import Annotated, Literal, Union

from pydantic import BaseModel, Field

SCHEMA_VERSION = 1


# -- session protocol: client to server --------------------------------------


class Hello(BaseModel):
    type: Literal["hello"] = "hello"
    session_id: str | None = None


class LoadScenario(BaseModel):
    type: Literal["load_scenario"] = "load_scenario"
    name: str | None = None
    document: dict | None = None
    seed: int | None = None


class Move(BaseModel):
    type: Literal["move"] = "move"
    dx: float
    dy: float


class Step(BaseModel):
    type: Literal["step"] = "step"
    dt: float = 0.1


class AutoTick(BaseModel):
    type: Literal["auto_tick"] = "auto_tick"
    enabled: bool
    hz: float = Field(default=10.0, gt=0, le=50)


class ListTags(BaseModel):
    type: Literal["list_tags"] = "list_tags"


class Buzz(BaseModel):
    type: Literal["buzz"] = "buzz"
    tag_id: str
    password: str | None = None


class Radar(BaseModel):
    type: Literal["radar"] = "radar"
    tag_id: str


class NfcRead(BaseModel):
    type: Literal["nfc_read"] = "nfc_read"


class SaveInventory(BaseModel):
    type: Literal["save_inventory"] = "save_inventory"
    path: str | None = None


ClientMessage = Annotated[
    Union[
        Hello,
        LoadScenario,
        Move,
        Step,
        AutoTick,
        ListTags,
        Buzz,
        Radar,
        NfcRead,
        SaveInventory,
    ],
    Field(discriminator="type"),
]


# -- session protocol: server to client --------------------------------------


class ReaderState(BaseModel):
    x: float
    y: float


class LocatedTag(BaseModel):
    tag_id: str
    model: str
    x: float
    y: float


class BuzzingTag(BaseModel):
    tag_id: str
    level: float


class InventoryItem(BaseModel):
    tag_id: str
    device_info: dict
    read_at: float
    read_position: list[float]


class WorldState(BaseModel):
    type: Literal["world_state"] = "world_state"
    schema_version: int = SCHEMA_VERSION
    session_id: str
    scenario: str | None = None
    clock: float = 0.0
    bounds: list[float] | None = None
    walls: list[list[float]] = []
    regions: list[dict] = []
    reader: ReaderState | None = None
    auto_tick: bool = False
    located: list[LocatedTag] = []
    buzzing: list[BuzzingTag] = []
    nfc_available: bool = False
    inventory: list[InventoryItem] = []


class TagRow(BaseModel):
    tag_id: str
    model: str
    last_rssi: float
    last_seen: float
    coarse_distance: float


class TagList(BaseModel):
    type: Literal["tag_list"] = "tag_list"
    tags: list[TagRow]


class Distance(BaseModel):
    type: Literal["distance"] = "distance"
    tag_id: str
    status: Literal["ok", "out_of_range", "not_uwb"]
    meters: float | None = None


class BuzzingPush(BaseModel):
    type: Literal["buzzing"] = "buzzing"
    tag_id: str
    level: float


class NdefResult(BaseModel):
    type: Literal["ndef_result"] = "ndef_result"
    tag_id: str
    device_info: dict


class ErrorMessage(BaseModel):
    type: Literal["error"] = "error"
    code: str
    detail: str = ""


class EventPush(BaseModel):
    type: Literal["event"] = "event"
    event: dict


ServerMessage = Annotated[
    Union[
        WorldState,
        TagList,
        Distance,
        BuzzingPush,
        NdefResult,
        ErrorMessage,
        EventPush,
    ],
    Field(discriminator="type"),
]


# -- REST models ---------------------------------------------------------------


class BatteryRow(BaseModel):
    model: str
    price_usd: float
    min_days: float
    max_days: float


class BatteryTable(BaseModel):
    rows: list[BatteryRow]


class BomItemModel(BaseModel):
    name: str
    unit_price_usd: float
    quantity: int = 1


class CostRow(BaseModel):
    model: str
    items: list[BomItemModel]
    total_usd: float


class CostTable(BaseModel):
    rows: list[CostRow]


class SusRequest(BaseModel):
    answers: list[float] | list[list[float]]


class SusResponse(BaseModel):
    score: float


class BeaconEncodeRequest(BaseModel):
    version: int = 1
    model: str
    tag_id: str
    activate: bool = False


class BeaconHex(BaseModel):
    frame: str


class BeaconFields(BaseModel):
    version: int
    model: str
    tag_id: str
    flags: int
    activation: bool


class NdefEncodeRequest(BaseModel):
    device_info: dict


class NdefHex(BaseModel):
    message: str


class NdefDecodeResponse(BaseModel):
    device_info: dict


class ScenarioList(BaseModel):
    names: list[str]
