"""Small 2D helpers shared by the radio model and the world.

Points are (x, y) tuples in meters; wall segments are (x1, y1, x2, y2).
"""

from __future__ import annotations

import math

Point = tuple[float, float]
Segment = tuple[float, float, float, float]


def distance(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def _orient(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> float:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def segments_intersect(a: Point, b: Point, seg: Segment) -> bool:
    """True iff segment a-b touches the wall segment (endpoints inclusive)."""
    x1, y1, x2, y2 = seg
    d1 = _orient(x1, y1, x2, y2, a[0], a[1])
    d2 = _orient(x1, y1, x2, y2, b[0], b[1])
    d3 = _orient(a[0], a[1], b[0], b[1], x1, y1)
    d4 = _orient(a[0], a[1], b[0], b[1], x2, y2)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
        return True

    def on_seg(px, py, qx, qy, rx, ry):
        return (
            min(px, qx) <= rx <= max(px, qx) and min(py, qy) <= ry <= max(py, qy)
        )

    if d1 == 0 and on_seg(x1, y1, x2, y2, a[0], a[1]):
        return True
    if d2 == 0 and on_seg(x1, y1, x2, y2, b[0], b[1]):
        return True
    if d3 == 0 and on_seg(a[0], a[1], b[0], b[1], x1, y1):
        return True
    if d4 == 0 and on_seg(a[0], a[1], b[0], b[1], x2, y2):
        return True
    return False


def count_crossings(a: Point, b: Point, walls: list[Segment]) -> int:
    """Number of wall segments the line of sight a-b passes through."""
    return sum(1 for seg in walls if segments_intersect(a, b, seg))


def first_hit_fraction(start: Point, delta: Point, walls: list[Segment]) -> float | None:
    """Earliest t in [0, 1] where start + t*delta meets a wall, or None.

    Movement parallel to a wall never counts as a hit, so sliding along
    a wall face is allowed.
    """
    best: float | None = None
    dx, dy = delta
    for x1, y1, x2, y2 in walls:
        wx, wy = x2 - x1, y2 - y1
        denom = dx * wy - dy * wx
        if denom == 0:
            continue
        sx, sy = x1 - start[0], y1 - start[1]
        t = (sx * wy - sy * wx) / denom
        u = (sx * dy - sy * dx) / denom
        if 0.0 <= t <= 1.0 and 0.0 <= u <= 1.0:
            if best is None or t < best:
                best = t
    return best


def point_in_rect(p: Point, rect: tuple[float, float, float, float]) -> bool:
    x1, y1, x2, y2 = rect
    return min(x1, x2) <= p[0] <= max(x1, x2) and min(y1, y2) <= p[1] <= max(y1, y2)


def clamp(value: float, lo: float, hi: float) -> float:
    return lo if value < lo else hi if value > hi else value
