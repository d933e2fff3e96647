from __future__ import annotations

import pytest

from tagsim.ndef import DeviceInfo, encode_device_info


@pytest.fixture
def device_info() -> DeviceInfo:
    return DeviceInfo(
        url="https://www.example.com/widget",
        name="Widget",
        vendor="Acme",
        functionalities="senses things",
        data_collection="uploads hourly",
        firmware_version="1.2.3",
        vulnerability_notes="none known",
    )


def make_scenario(
    tags: list[dict],
    bounds: tuple[float, float] = (20.0, 20.0),
    reader_start: tuple[float, float] = (1.0, 1.0),
    seed: int = 1,
    walls: list | None = None,
    regions: list | None = None,
    radio: dict | None = None,
) -> dict:
    """Minimal scenario document; tags get a stock NDEF image if omitted."""
    stock = encode_device_info(DeviceInfo(url="https://www.example.com/x")).hex()
    for tag in tags:
        tag.setdefault("ndef", stock)
    doc = {
        "bounds": list(bounds),
        "tags": tags,
        "reader_start": list(reader_start),
        "seed": seed,
    }
    if walls is not None:
        doc["walls"] = walls
    if regions is not None:
        doc["regions"] = regions
    if radio is not None:
        doc["radio"] = radio
    return doc


def tag_spec(id_suffix: int, model: str = "BLE-AC", position=(2.0, 2.0), **extra) -> dict:
    return {
        "id": f"{id_suffix:012x}",
        "model": model,
        "position": list(position),
        **extra,
    }
