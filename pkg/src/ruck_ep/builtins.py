"""Built-in model components.

The published lineout coefficients and restart values ship as named
constants so the decision engine, CLI, and UI run without any proprietary
phase data. The bundled kicking grid is synthetic: it is generated from a
smooth reference formula and calibrated so the demonstration bundle
reproduces the published case-study numbers. It is NOT the original
international kicking dataset and carries no evidentiary weight.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .kick import (
    KickGridCell,
    KickSuccessSurface,
    RestartValueTable,
    fit_kick_surface,
)
from .lineout import LineoutCoefficients
from .pitch import (
    GRID_BAND,
    N_TOUCH_BANDS,
    N_X_BANDS,
    PitchPoint,
    grid_cell_center,
    to_kick_geometry,
)

# 2018/19 Premiership lineout EP regression, as published.
PREMIERSHIP_2018_19 = LineoutCoefficients(
    beta0=3.2545,
    beta1=-0.0586,
    beta2=0.8802,
    beta3=0.6503,
    std_errors=(0.2093, 0.0044, 0.3052, 0.3430),
    t_values=(15.553, -13.283, 2.884, 1.896),
    p_values=(2e-16, 2e-16, 0.00397, 0.05809),
    model_id="premiership-2018-19",
)

# Published restart values by original-kick zone (distance to the opposition
# try line), with the attempt-weighted overall average as fallback.
RESTART_ZONES_2018_19 = RestartValueTable(
    zones=[
        (10.0, 22.0, 2.75, 4),
        (22.0, 50.0, 1.24, 17),
        (50.0, 60.0, -0.63, 27),
        (60.0, 78.0, 1.24, 45),
    ],
    fallback=0.76,
    table_id="restart-zones-2018-19",
)

# Fallback-only variant: every location values a miss at the overall
# average. The demonstration bundle uses this table, matching how the
# published case-study kick EP decomposes.
RESTART_OVERALL_AVERAGE = RestartValueTable(
    zones=[],
    fallback=0.76,
    table_id="restart-overall-average",
)

# Case-study anchor: penalty 30 m out, 15 m in from the left touchline.
CASE_STUDY_POINT = PitchPoint(30.0, -20.0)
# Make probability implied by the published kick EP under the fallback miss
# value: (2.42 - 0.76) / (3 - 0.76).
CASE_STUDY_P_MAKE = (2.42 - 0.76) / (3.0 - 0.76)

# Reference formula behind the synthetic grid (logit scale).
_DEMO_INTERCEPT = 4.82
_DEMO_PER_METER = 0.08
_DEMO_PER_RADIAN = 1.5


def demo_kick_grid_cells() -> list[KickGridCell]:
    """Synthetic Table-3-shaped kicking grid (non-authoritative).

    One cell per 5 m x 5 m band over the full sampling frame; proportions
    follow a smooth distance/angle formula, rounded to three decimals the
    way published success rates are.
    """
    cells = []
    for row in range(N_X_BANDS):
        for col in range(N_TOUCH_BANDS):
            center = grid_cell_center(row, col)
            if center.x <= 0:
                continue
            geom = to_kick_geometry(center)
            logit = _DEMO_INTERCEPT - _DEMO_PER_METER * geom.d - _DEMO_PER_RADIAN * geom.theta
            p = 1.0 / (1.0 + math.exp(-logit))
            cells.append(
                KickGridCell(
                    x_band_lo=GRID_BAND * row,
                    x_band_hi=GRID_BAND * (row + 1),
                    touch_band_lo=GRID_BAND * col,
                    touch_band_hi=GRID_BAND * (col + 1),
                    proportion=round(p, 3),
                )
            )
    return cells


@lru_cache(maxsize=1)
def demo_kick_surface() -> KickSuccessSurface:
    """Surface fit to the synthetic grid, calibrated at the case-study point.

    After fitting, the linear predictor is shifted by a constant so the
    case-study location evaluates to exactly the published make
    probability; the shift preserves the surface shape, its symmetry, and
    its smoothness penalty.
    """
    surface = fit_kick_surface(demo_kick_grid_cells(), surface_id="demo-synthetic")
    geom = to_kick_geometry(CASE_STUDY_POINT)
    eta = float(surface.gam.decision_function([[geom.d, geom.theta]])[0])
    target = math.log(CASE_STUDY_P_MAKE / (1.0 - CASE_STUDY_P_MAKE))
    surface.gam.shift_intercept(target - eta)
    return surface
