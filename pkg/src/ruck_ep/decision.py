"""Decision engine: combine lineout and kick EP into a recommendation.

Everything here is a pure function of the query and the three model
artifacts (lineout coefficients, kick surface, restart table), so grids and
reports regenerate bit-identically from identical inputs. Ties at exactly
zero difference recommend the kick (take the secure points).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RowError, SchemaError
from .kick import KickSuccessSurface, RestartValueTable, ep_kick
from .lineout import GameContext, LineoutCoefficients, ep_lineout
from .pitch import PitchPoint, touch_translation

SCHEMA_VERSION = 1
LINEOUT = "lineout"
KICK = "kick"

DEFAULT_X_BOUNDS = (5.0, 65.0)
DEFAULT_Y_BOUNDS = (-35.0, 35.0)
DEFAULT_STEP = 1.0
DTOUCH_GRID = (0.0, 5.0, 10.0, 15.0, 20.0, 25.0)


@dataclass(frozen=True)
class DecisionQuery:
    point: PitchPoint
    d_touch: float
    ctx: GameContext

    def __post_init__(self):
        if self.d_touch < 0:
            raise DomainError(f"d_touch {self.d_touch} must be >= 0")


@dataclass(frozen=True)
class DecisionResult:
    ep_lineout: float
    ep_kick: float
    delta: float
    recommendation: str
    x_lo: float
    p_make: float
    ep_miss: float

    def to_dict(self) -> dict:
        return {
            "ep_lineout": self.ep_lineout,
            "ep_kick": self.ep_kick,
            "delta": self.delta,
            "recommendation": self.recommendation,
            "x_lo": self.x_lo,
            "p_make": self.p_make,
            "ep_miss": self.ep_miss,
        }


def evaluate(
    query: DecisionQuery,
    lineout: LineoutCoefficients,
    surface: KickSuccessSurface,
    restarts: RestartValueTable,
) -> DecisionResult:
    """Expected points of both options at one penalty location.

    The lineout is valued at the translated position; the kick (and its
    miss continuation) at the penalty spot itself.
    """
    if query.point.x < 5.0:
        raise DomainError(f"kick model domain starts 5 m out, got x={query.point.x}")
    x_lo = touch_translation(query.point.x, query.d_touch)
    ep_lo = ep_lineout(lineout, x_lo, query.ctx)
    p = surface.p_make(query.point)
    miss = restarts.ep_miss(query.point.x)
    ep_k = ep_kick(p, miss)
    delta = ep_lo - ep_k
    return DecisionResult(
        ep_lineout=ep_lo,
        ep_kick=ep_k,
        delta=delta,
        recommendation=LINEOUT if delta > 0 else KICK,
        x_lo=x_lo,
        p_make=p,
        ep_miss=miss,
    )


@dataclass(frozen=True)
class DecisionGrid:
    """Node-wise decision results over a rectangular field grid.

    Arrays are indexed ``[ix][iy]`` with ``x_axis`` ascending from the try
    line outward and ``y_axis`` ascending from the left touchline side.
    """

    x_axis: np.ndarray
    y_axis: np.ndarray
    ep_lineout: np.ndarray
    ep_kick: np.ndarray
    delta: np.ndarray
    recommendation: np.ndarray
    p_make: np.ndarray
    ep_miss: np.ndarray
    params: dict


def decision_grid(
    lineout: LineoutCoefficients,
    surface: KickSuccessSurface,
    restarts: RestartValueTable,
    d_touch: float,
    ctx: GameContext | None = None,
    x_bounds=DEFAULT_X_BOUNDS,
    y_bounds=DEFAULT_Y_BOUNDS,
    step: float = DEFAULT_STEP,
    model_ids: dict | None = None,
) -> DecisionGrid:
    """Evaluate the decision at every node of a regular field grid."""
    ctx = ctx or GameContext()
    if step <= 0:
        raise ValueError(f"step must be > 0, got {step}")
    x_lo, x_hi = x_bounds
    y_lo, y_hi = y_bounds
    if not (5.0 <= x_lo < x_hi <= 65.0) or not (-35.0 <= y_lo < y_hi <= 35.0):
        raise ValueError(f"bounds x={x_bounds}, y={y_bounds} are degenerate or out of range")

    nx_steps = int(np.floor((x_hi - x_lo) / step + 1e-9))
    ny_steps = int(np.floor((y_hi - y_lo) / step + 1e-9))
    x_axis = x_lo + step * np.arange(nx_steps + 1)
    y_axis = y_lo + step * np.arange(ny_steps + 1)
    nx, ny = len(x_axis), len(y_axis)
    shape = (nx, ny)

    # One vectorized surface evaluation covers every node; the remaining
    # per-node arithmetic is identical to evaluate().
    nodes = [
        PitchPoint(float(x), float(y)) for x in x_axis for y in y_axis
    ]
    p_make_flat = surface.p_make_batch(nodes)

    arr = {
        name: np.empty(shape)
        for name in ("ep_lineout", "ep_kick", "delta", "p_make", "ep_miss")
    }
    rec = np.empty(shape, dtype=object)
    for k, point in enumerate(nodes):
        ix, iy = divmod(k, ny)
        x_node_lo = touch_translation(point.x, d_touch)
        ep_lo = ep_lineout(lineout, x_node_lo, ctx)
        p = float(p_make_flat[k])
        miss = restarts.ep_miss(point.x)
        ep_k = ep_kick(p, miss)
        delta = ep_lo - ep_k
        arr["ep_lineout"][ix, iy] = ep_lo
        arr["ep_kick"][ix, iy] = ep_k
        arr["delta"][ix, iy] = delta
        arr["p_make"][ix, iy] = p
        arr["ep_miss"][ix, iy] = miss
        rec[ix, iy] = LINEOUT if delta > 0 else KICK

    params = {
        "d_touch": d_touch,
        "card_diff": ctx.card_diff,
        "winpct_diff": ctx.winpct_diff,
        "x_bounds": [float(x_lo), float(x_hi)],
        "y_bounds": [float(y_lo), float(y_hi)],
        "step": float(step),
        "model_ids": model_ids or {},
    }
    return DecisionGrid(
        x_axis=x_axis,
        y_axis=y_axis,
        recommendation=rec,
        params=params,
        **arr,
    )


# -- indifference frontier -----------------------------------------------------

Segment = tuple[tuple[float, float], tuple[float, float]]


def _edge_cross(xa, ya, va, xb, yb, vb) -> tuple[float, float]:
    t = va / (va - vb)
    return (xa + t * (xb - xa), ya + t * (yb - ya))


def frontier(grid: DecisionGrid) -> list[Segment]:
    """Zero-level segments of the delta field by marching squares.

    Corners with delta > 0 count as the lineout side (matching the
    recommendation tie-break); saddle cells are split by the sign of the
    cell-center average. Segment endpoints are linearly interpolated along
    cell edges and returned in pitch coordinates.
    """
    x, y, v = grid.x_axis, grid.y_axis, grid.delta
    # Edges of a cell, as pairs of corner indices (corners counterclockwise
    # from the low-x, low-y corner).
    e0, e1, e2, e3 = (0, 1), (1, 2), (2, 3), (3, 0)
    table: dict[int, list[tuple[tuple[int, int], tuple[int, int]]]] = {
        1: [(e3, e0)],
        2: [(e0, e1)],
        3: [(e3, e1)],
        4: [(e1, e2)],
        6: [(e0, e2)],
        7: [(e3, e2)],
        8: [(e2, e3)],
        9: [(e0, e2)],
        11: [(e1, e2)],
        12: [(e3, e1)],
        13: [(e0, e1)],
        14: [(e3, e0)],
    }
    segments: list[Segment] = []
    for i in range(len(x) - 1):
        for j in range(len(y) - 1):
            cx = (x[i], x[i + 1], x[i + 1], x[i])
            cy = (y[j], y[j], y[j + 1], y[j + 1])
            cv = (v[i, j], v[i + 1, j], v[i + 1, j + 1], v[i, j + 1])
            code = sum(1 << k for k in range(4) if cv[k] > 0)
            if code in (0, 15):
                continue
            if code in (5, 10):
                center_positive = float(np.mean(cv)) > 0
                if code == 5:
                    pairs = [(e0, e1), (e2, e3)] if center_positive else [(e3, e0), (e1, e2)]
                else:
                    pairs = [(e3, e0), (e1, e2)] if center_positive else [(e0, e1), (e2, e3)]
            else:
                pairs = table[code]

            def cross(edge: tuple[int, int]) -> tuple[float, float]:
                a, b = edge
                return _edge_cross(cx[a], cy[a], cv[a], cx[b], cy[b], cv[b])

            for edge_a, edge_b in pairs:
                segments.append((cross(edge_a), cross(edge_b)))
    return segments


# -- d_touch sweep --------------------------------------------------------------


@dataclass(frozen=True)
class SweepResult:
    points: tuple[tuple[float, float], ...]
    crossing: float | None

    def to_dict(self) -> dict:
        return {
            "points": [[d, delta] for d, delta in self.points],
            "crossing": self.crossing,
        }


def sweep_dtouch(
    point: PitchPoint,
    ctx: GameContext,
    d_range,
    lineout: LineoutCoefficients,
    surface: KickSuccessSurface,
    restarts: RestartValueTable,
) -> SweepResult:
    """Delta as a function of assumed meters gained, with the first zero crossing.

    ``d_range`` must be ascending. The crossing interpolates linearly
    between adjacent samples (exact here, since the lineout EP is piecewise
    linear in the translation) and is None when the sign never changes.
    """
    ds = [float(d) for d in d_range]
    if not ds or any(b <= a for a, b in zip(ds, ds[1:])):
        raise ValueError("d_range must be non-empty and ascending")
    deltas = [
        evaluate(DecisionQuery(point, d, ctx), lineout, surface, restarts).delta
        for d in ds
    ]
    crossing = None
    for i in range(len(ds)):
        if deltas[i] == 0.0:
            crossing = ds[i]
            break
        if i + 1 < len(ds) and deltas[i] * deltas[i + 1] < 0:
            t = deltas[i] / (deltas[i] - deltas[i + 1])
            crossing = ds[i] + t * (ds[i + 1] - ds[i])
            break
    return SweepResult(points=tuple(zip(ds, deltas)), crossing=crossing)


# -- regret audit ----------------------------------------------------------------


@dataclass(frozen=True)
class RegretRow:
    team: str
    ep_lineout: float
    ep_kick: float
    chosen: str
    optimal: str
    regret: float


@dataclass(frozen=True)
class RegretReport:
    rows: tuple[RegretRow, ...]
    total_regret: float
    proportion_optimal: float | None

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "rows": [
                {
                    "team": r.team,
                    "ep_lineout": r.ep_lineout,
                    "ep_kick": r.ep_kick,
                    "chosen": r.chosen,
                    "optimal": r.optimal,
                    "regret": r.regret,
                }
                for r in self.rows
            ],
            "total_regret": self.total_regret,
            "proportion_optimal": (
                None if self.proportion_optimal is None else round(self.proportion_optimal, 2)
            ),
        }


def regret_report(rows) -> RegretReport:
    """Audit realized decisions: regret and the model-optimal call per row.

    Each input row is (team, ep_lineout, ep_kick, chosen). The optimal
    option follows the delta > 0 -> lineout rule; regret is the EP of the
    best option minus the EP of the chosen one.
    """
    out = []
    optimal_count = 0
    total = 0.0
    for team, ep_lo, ep_k, chosen in rows:
        if chosen not in (LINEOUT, KICK):
            raise ValueError(f"chosen must be '{LINEOUT}' or '{KICK}', got {chosen!r}")
        if not (np.isfinite(ep_lo) and np.isfinite(ep_k)):
            raise ValueError("expected points must be finite")
        optimal = LINEOUT if ep_lo - ep_k > 0 else KICK
        chosen_ep = ep_lo if chosen == LINEOUT else ep_k
        regret = max(ep_lo, ep_k) - chosen_ep
        optimal_count += optimal == chosen
        total += regret
        out.append(
            RegretRow(
                team=str(team),
                ep_lineout=float(ep_lo),
                ep_kick=float(ep_k),
                chosen=chosen,
                optimal=optimal,
                regret=float(regret),
            )
        )
    proportion = optimal_count / len(out) if out else None
    return RegretReport(rows=tuple(out), total_regret=total, proportion_optimal=proportion)


# -- exports ---------------------------------------------------------------------


def grid_to_json_dict(grid: DecisionGrid, segments: list[Segment] | None = None) -> dict:
    """Versioned JSON document for a decision grid, frontier included."""
    if segments is None:
        segments = frontier(grid)
    return {
        "schema_version": SCHEMA_VERSION,
        "params": grid.params,
        "x_axis": [float(v) for v in grid.x_axis],
        "y_axis": [float(v) for v in grid.y_axis],
        "delta": [[float(v) for v in row] for row in grid.delta],
        "recommendation": [[str(v) for v in row] for row in grid.recommendation],
        "frontier": [
            [[float(p[0]), float(p[1])], [float(q[0]), float(q[1])]] for p, q in segments
        ],
    }


def grid_to_csv(grid: DecisionGrid, stream) -> None:
    """Flat CSV variant: one row per node, row-major from the try line out."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["x", "y", "ep_lineout", "ep_kick", "delta", "recommendation"])
    for ix, x in enumerate(grid.x_axis):
        for iy, y in enumerate(grid.y_axis):
            writer.writerow(
                [
                    repr(float(x)),
                    repr(float(y)),
                    repr(float(grid.ep_lineout[ix, iy])),
                    repr(float(grid.ep_kick[ix, iy])),
                    repr(float(grid.delta[ix, iy])),
                    grid.recommendation[ix, iy],
                ]
            )


def regret_to_csv(report: RegretReport, stream) -> None:
    """Per-decision audit rows plus a summary footer."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["team", "ep_lineout", "ep_kick", "chosen", "optimal", "regret"])
    for r in report.rows:
        writer.writerow(
            [r.team, f"{r.ep_lineout:.2f}", f"{r.ep_kick:.2f}", r.chosen, r.optimal, f"{r.regret:.2f}"]
        )
    writer.writerow(["TOTAL_REGRET", "", "", "", "", f"{report.total_regret:.2f}"])
    prop = "" if report.proportion_optimal is None else f"{report.proportion_optimal:.2f}"
    writer.writerow(["PROPORTION_OPTIMAL", "", "", "", "", prop])


def read_decisions_csv(stream) -> list[tuple[str, float, float, str]]:
    """Parse a decisions CSV with columns team, ep_lineout, ep_kick, chosen."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    try:
        header = [h.strip().lower() for h in next(reader)]
    except StopIteration:
        raise SchemaError("empty file: no header row") from None
    required = ("team", "ep_lineout", "ep_kick", "chosen")
    missing = [c for c in required if c not in header]
    if missing:
        raise SchemaError(f"missing required column(s): {', '.join(missing)}")
    idx = {c: header.index(c) for c in required}
    rows = []
    for line_no, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if row[0].strip().upper() in ("TOTAL_REGRET", "PROPORTION_OPTIMAL"):
            continue  # tolerate re-ingesting an exported report
        try:
            rows.append(
                (
                    row[idx["team"]].strip(),
                    float(row[idx["ep_lineout"]]),
                    float(row[idx["ep_kick"]]),
                    row[idx["chosen"]].strip().lower(),
                )
            )
        except (ValueError, IndexError) as exc:
            raise RowError(line_no, str(exc)) from None
    return rows
