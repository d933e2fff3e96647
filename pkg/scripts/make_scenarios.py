#!/usr/bin/env python3
"""Regenerate the bundled scenario files under src/tagsim/data/.

Run from the repository root after changing the NDEF codec or the
apartment layout: python scripts/make_scenarios.py
"""

import json
from pathlib import Path

from tagsim.ndef import DeviceInfo, encode_device_info

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "tagsim" / "data"


def apartment_scenario() -> dict:
    fridge_info = DeviceInfo(
        url="https://www.example.com/products/chillmate-900",
        name="ChillMate 900 smart refrigerator",
        vendor="Kelvin Appliances",
        functionalities="inventory camera, temperature telemetry",
        data_collection="interior photos uploaded hourly to vendor cloud",
        firmware_version="4.2.1",
        vulnerability_notes="CVE-2023-8812 patched in 4.2.0",
    )
    desk_info = DeviceInfo(
        url="https://www.example.com/products/deskview-cam",
        name="DeskView camera",
        vendor="Optiko",
        functionalities="motion-triggered video",
        data_collection="video clips retained 30 days",
        firmware_version="1.9.3",
    )
    bed_info = DeviceInfo(
        url="https://www.example.com/products/echopoint-mini",
        name="EchoPoint Mini speaker",
        vendor="Auralis",
        functionalities="voice assistant, always-on microphone",
        data_collection="voice queries processed off-device",
        firmware_version="7.0.4",
    )
    return {
        "name": "fig6_apartment",
        "bounds": [10.0, 8.0],
        "walls": [
            [3.0, 5.2, 3.0, 8.0],
            [0.0, 3.0, 1.5, 3.0],
        ],
        "regions": [
            {"name": "refrigerator", "rect": [0.6, 6.4, 1.8, 7.8], "nlos": True}
        ],
        "radio": {},
        "tags": [
            {
                "id": "1a2b3c4d5e01",
                "model": "UWB-RAW",
                "position": [1.2, 7.1],
                "ndef": encode_device_info(fridge_info).hex(),
            },
            {
                "id": "1a2b3c4d5e02",
                "model": "BLE-AC",
                "position": [8.6, 1.4],
                "ndef": encode_device_info(desk_info).hex(),
            },
            {
                "id": "1a2b3c4d5e03",
                "model": "BLE-AC",
                "position": [8.8, 7.2],
                "ndef": encode_device_info(bed_info).hex(),
            },
        ],
        "reader_start": [5.0, 0.5],
        "seed": 7,
    }


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    doc = apartment_scenario()
    out = DATA_DIR / f"{doc['name']}.json"
    out.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
