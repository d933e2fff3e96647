"""Deterministic simulator and protocol library for wireless locator tags.

Tags attached to household devices announce themselves with short
broadcast frames, reveal their position through a buzzer or ultra-wideband
ranging, and hand out device details only at NFC touch range.  This
package models the whole loop: frame codecs, radio propagation, tag and
reader state machines, a seeded discrete-event world with scripted hunt
agents, and a session service for interactive clients.
"""

from tagsim.beacon import (
    Beacon,
    decode_beacon,
    encode_beacon,
    is_tag_frame,
    make_activation_frame,
)
from tagsim.ndef import DeviceInfo, NdefRecord, decode_message, encode_message
from tagsim.radio import PropagationParams
from tagsim.world import World, load_scenario

__all__ = [
    "Beacon",
    "DeviceInfo",
    "NdefRecord",
    "PropagationParams",
    "World",
    "decode_beacon",
    "decode_message",
    "encode_beacon",
    "encode_message",
    "is_tag_frame",
    "load_scenario",
    "make_activation_frame",
]
