"""Pitch coordinates, penalty-to-post geometry, and the touch translation rule.

The canonical frame puts ``x`` at the distance in meters to the *opposition*
try line and ``y`` at the lateral offset from the pitch centerline (positive
toward the right touchline, pitch width fixed at 70 m). The posts are modeled
as a single point at the center of the try line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

PITCH_WIDTH = 70.0
HALF_WIDTH = PITCH_WIDTH / 2.0
PITCH_LENGTH = 100.0
LINEOUT_FLOOR = 5.0

# Table-3-style kicking grid: 5 m bands, 0-65 m from the try line by
# 0-70 m from the left touchline.
GRID_BAND = 5.0
N_X_BANDS = 13
N_TOUCH_BANDS = 14


@dataclass(frozen=True)
class PitchPoint:
    """A field location: meters to the opposition try line and lateral offset."""

    x: float
    y: float

    def __post_init__(self):
        if not (0.0 <= self.x <= PITCH_LENGTH):
            raise DomainError(f"x={self.x} outside [0, {PITCH_LENGTH}]")
        if not (abs(self.y) <= HALF_WIDTH):
            raise DomainError(f"y={self.y} outside [-{HALF_WIDTH}, {HALF_WIDTH}]")

    def mirrored(self) -> "PitchPoint":
        return PitchPoint(self.x, -self.y)


@dataclass(frozen=True)
class KickGeometry:
    """Distance to the center of the posts and absolute lateral angle."""

    d: float
    theta: float


def to_kick_geometry(p: PitchPoint) -> KickGeometry:
    """Map a pitch location to (distance, angle) relative to the posts.

    The angle is measured from the perpendicular through the posts, so
    ``theta == 0`` exactly when the kick is straight in front.
    """
    if p.x <= 0.0:
        raise DomainError("kick geometry undefined on the try line (x = 0)")
    return KickGeometry(d=math.hypot(p.x, p.y), theta=math.atan2(abs(p.y), p.x))


def touch_translation(x: float, d_touch: float) -> float:
    """Resulting lineout x after kicking to touch, floored at the 5 m line."""
    if not (0.0 <= x <= PITCH_LENGTH):
        raise DomainError(f"x={x} outside [0, {PITCH_LENGTH}]")
    if d_touch < 0.0:
        raise DomainError(f"d_touch={d_touch} must be >= 0")
    return max(LINEOUT_FLOOR, x - d_touch)


def from_left_touchline(dist: float) -> float:
    """Convert distance from the left touchline to a lateral offset."""
    if not (0.0 <= dist <= PITCH_WIDTH):
        raise DomainError(f"touchline distance {dist} outside [0, {PITCH_WIDTH}]")
    return dist - HALF_WIDTH


def grid_cell_center(row_band: int, col_band: int) -> PitchPoint:
    """Center of a 5 m x 5 m kicking-grid cell.

    ``row_band`` indexes 5 m bands from the try line (0 covers [0, 5)),
    ``col_band`` indexes 5 m bands from the left touchline.
    """
    if not (0 <= row_band < N_X_BANDS):
        raise DomainError(f"row_band {row_band} outside 0..{N_X_BANDS - 1}")
    if not (0 <= col_band < N_TOUCH_BANDS):
        raise DomainError(f"col_band {col_band} outside 0..{N_TOUCH_BANDS - 1}")
    x = GRID_BAND * row_band + GRID_BAND / 2.0
    y = from_left_touchline(GRID_BAND * col_band + GRID_BAND / 2.0)
    return PitchPoint(x, y)
