"""Propagation and reachability: RSSI path loss, UWB ranging, NFC gate.

Three very different channels share one parameter block:

* broadcast frames decay with log-distance path loss plus a fixed penalty
  per wall crossed; a reader hears a frame iff the RSSI clears its
  sensitivity floor,
* two-way ranging returns a noisy distance up to a hard maximum range,
  with a positive bias when the path is obstructed,
* the touch channel is a pure step function at 10 cm.

All randomness comes from a caller-owned ``random.Random`` so identical
seeds replay identically on any platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from random import Random

from tagsim.geometry import Point, Segment, count_crossings, distance

MIN_PATH_DISTANCE_M = 0.1

NFC_RANGE_M = 0.10


@dataclass(frozen=True)
class PropagationParams:
    tx_power_1m_dbm: float = -59.0
    path_loss_exponent: float = 2.0
    rssi_noise_sigma_db: float = 0.0
    reader_sensitivity_dbm: float = -85.0
    wall_penalty_db: float = 3.0
    uwb_max_range_m: float = 5.0
    uwb_sigma_m: float = 0.10
    uwb_nlos_bias_m: float = 0.20
    nfc_range_m: float = NFC_RANGE_M

    def __post_init__(self) -> None:
        if self.path_loss_exponent <= 0:
            raise ValueError("path loss exponent must be positive")
        if self.rssi_noise_sigma_db < 0 or self.uwb_sigma_m < 0:
            raise ValueError("noise sigmas must be nonnegative")
        if self.uwb_max_range_m <= 0:
            raise ValueError("uwb max range must be positive")
        if self.nfc_range_m != NFC_RANGE_M:
            raise ValueError(f"nfc range is fixed at {NFC_RANGE_M} m")

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: dict) -> "PropagationParams":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown radio parameters: {sorted(unknown)}")
        return cls(**data)


def rssi_at(
    params: PropagationParams,
    distance_m: float,
    walls_crossed: int = 0,
    rng: Random | None = None,
) -> float:
    """Received power in dBm at the given distance.

    Distances below 0.1 m are clamped to dodge the log singularity.
    """
    d = max(distance_m, MIN_PATH_DISTANCE_M)
    rssi = (
        params.tx_power_1m_dbm
        - 10.0 * params.path_loss_exponent * math.log10(d)
        - walls_crossed * params.wall_penalty_db
    )
    if params.rssi_noise_sigma_db > 0:
        if rng is None:
            raise ValueError("rng required when rssi noise sigma > 0")
        rssi += rng.gauss(0.0, params.rssi_noise_sigma_db)
    return rssi


def ble_deliver(
    params: PropagationParams,
    src_pos: Point,
    dst_pos: Point,
    walls: list[Segment],
    rng: Random | None = None,
    extra_wall_crossings: int = 0,
) -> float | None:
    """RSSI at the destination, or None when below reader sensitivity.

    ``extra_wall_crossings`` lets callers account for obstructions that
    are regions rather than wall segments (an appliance enclosure, say).
    """
    walls_crossed = count_crossings(src_pos, dst_pos, walls) + extra_wall_crossings
    rssi = rssi_at(params, distance(src_pos, dst_pos), walls_crossed, rng)
    if rssi >= params.reader_sensitivity_dbm:
        return rssi
    return None


def uwb_range_estimate(
    params: PropagationParams,
    true_distance_m: float,
    nlos: bool = False,
    rng: Random | None = None,
) -> float | None:
    """Two-way ranging distance, or None beyond the maximum range."""
    if true_distance_m > params.uwb_max_range_m:
        return None
    estimate = true_distance_m
    if nlos:
        estimate += params.uwb_nlos_bias_m
    if params.uwb_sigma_m > 0:
        if rng is None:
            raise ValueError("rng required when uwb sigma > 0")
        estimate += rng.gauss(0.0, params.uwb_sigma_m)
    return max(estimate, 0.0)


def nfc_readable(params: PropagationParams, distance_m: float) -> bool:
    """Touch-range gate: readable at 10 cm or closer, boundary inclusive."""
    return distance_m <= params.nfc_range_m


def invert_rssi(params: PropagationParams, rssi_dbm: float) -> float:
    """Coarse distance from an RSSI sample via the path-loss model."""
    return 10.0 ** (
        (params.tx_power_1m_dbm - rssi_dbm) / (10.0 * params.path_loss_exponent)
    )


def discovery_radius(params: PropagationParams) -> float:
    """Zero-noise, zero-wall distance where RSSI meets reader sensitivity."""
    return invert_rssi(params, params.reader_sensitivity_dbm)
