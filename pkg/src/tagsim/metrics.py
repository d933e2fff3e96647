"""Battery-life arithmetic, bill-of-materials cost, and SUS scoring."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal


class ZeroCurrent(ValueError):
    pass


class OutOfRangeAnswer(ValueError):
    pass


class WrongQuestionCount(ValueError):
    pass


@dataclass(frozen=True)
class BatterySpec:
    """A pack of AA cells; capacity per cell spans the usual alkaline range."""

    cells: int = 3
    per_cell_min_mah: float = 2000.0
    per_cell_max_mah: float = 3000.0

    def __post_init__(self) -> None:
        if self.cells <= 0 or self.per_cell_min_mah <= 0:
            raise ValueError("cells and capacities must be positive")
        if self.per_cell_min_mah > self.per_cell_max_mah:
            raise ValueError("min capacity above max")


@dataclass(frozen=True)
class BomItem:
    name: str
    unit_price_usd: float
    quantity: int = 1

    def __post_init__(self) -> None:
        if self.unit_price_usd < 0:
            raise ValueError("price must be nonnegative")
        if self.quantity < 1:
            raise ValueError("quantity must be at least 1")


def battery_life_days(capacity_mah: float, current_ma: float) -> float:
    """Capacity divided by draw gives hours; report days."""
    if current_ma <= 0:
        raise ZeroCurrent("current draw must be positive")
    if capacity_mah <= 0:
        raise ValueError("capacity must be positive")
    return capacity_mah / current_ma / 24.0


def battery_bounds(spec: BatterySpec, current_ma: float) -> tuple[float, float]:
    """(min days, max days) for the pack at a constant draw."""
    return (
        battery_life_days(spec.cells * spec.per_cell_min_mah, current_ma),
        battery_life_days(spec.cells * spec.per_cell_max_mah, current_ma),
    )


def bom_cost(items: list[BomItem]) -> Decimal:
    """Total in USD, rounded half-up to cents."""
    total = sum(
        (Decimal(str(item.unit_price_usd)) * item.quantity for item in items),
        Decimal("0"),
    )
    return total.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)


def sus_score(answers: list[float]) -> float:
    """System Usability Scale over ten 1-5 answers (or per-question means).

    Odd-numbered questions ask about a positive aspect and contribute
    (answer - 1); even-numbered ones ask about a negative aspect and
    contribute (5 - answer).  The contribution sum is scaled by 2.5 onto
    a 0-100 scale.
    """
    if len(answers) != 10:
        raise WrongQuestionCount(f"need 10 answers, got {len(answers)}")
    total = 0.0
    for i, value in enumerate(answers, start=1):
        if not 1.0 <= value <= 5.0:
            raise OutOfRangeAnswer(f"answer {i} out of [1, 5]: {value}")
        total += (value - 1.0) if i % 2 == 1 else (5.0 - value)
    return 2.5 * total


# Default bills of materials for the two shipped tag models.
BLE_AC_BOM = [
    BomItem("nRF52840 breakout board", 19.95),
    BomItem("magnetic buzzer", 0.95),
    BomItem("NFC coin tag", 0.76),
]
UWB_RAW_BOM = [
    BomItem("DWM1001 ranging board", 19.50),
    BomItem("NFC coin tag", 0.76),
]

# Idle draw per model, mA: the broadcast-only board is metered at its
# instrument floor of 1 mA; the ranging board runs its radio continuously.
MODEL_CURRENT_MA = {"BLE-AC": 1.0, "UWB-RAW": 75.0}
MODEL_BOMS = {"BLE-AC": BLE_AC_BOM, "UWB-RAW": UWB_RAW_BOM}


def model_summary(spec: BatterySpec | None = None) -> list[dict]:
    """Price and battery-life rows for every shipped model."""
    spec = spec or BatterySpec()
    rows = []
    for model, current in MODEL_CURRENT_MA.items():
        lo, hi = battery_bounds(spec, current)
        rows.append(
            {
                "model": model,
                "price_usd": float(bom_cost(MODEL_BOMS[model])),
                "min_days": lo,
                "max_days": hi,
            }
        )
    return rows
