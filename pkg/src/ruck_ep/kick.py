"""Kick-at-goal modeling: success surface, miss continuation value, and EP.

The success surface is a penalized logistic smooth of (distance, angle) fit
to gridded make proportions. Missed kicks are valued by a restart table
keyed to the original kick's distance from the opposition try line, with an
overall-average fallback outside the tabulated zones.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, FitDomainError, RowError, SchemaError
from .glm import PenalizedLogisticGAM
from .pitch import PitchPoint, from_left_touchline, to_kick_geometry

SCHEMA_VERSION = 1
MIN_KICK_X = 5.0
MIN_CELLS = 30
MIN_DISTINCT_BANDS = 3
GOAL_POINTS = 3.0

GRID_CSV_COLUMNS = (
    "x_band_lo",
    "x_band_hi",
    "touch_band_lo",
    "touch_band_hi",
    "proportion",
    "attempts",
)


@dataclass(frozen=True)
class KickGridCell:
    """One cell of the gridded kicking data: band edges plus make proportion."""

    x_band_lo: float
    x_band_hi: float
    touch_band_lo: float
    touch_band_hi: float
    proportion: float
    attempts: float | None = None

    def __post_init__(self):
        if not (0.0 <= self.x_band_lo < self.x_band_hi <= 65.0):
            raise DomainError(
                f"x band [{self.x_band_lo}, {self.x_band_hi}) outside 0..65"
            )
        if not (0.0 <= self.touch_band_lo < self.touch_band_hi <= 70.0):
            raise DomainError(
                f"touch band [{self.touch_band_lo}, {self.touch_band_hi}) outside 0..70"
            )
        if not np.isfinite(self.proportion) or not (0.0 <= self.proportion <= 1.0):
            raise DomainError(f"proportion {self.proportion} outside [0, 1]")
        if self.attempts is not None and self.attempts < 0:
            raise DomainError(f"attempts {self.attempts} must be >= 0")

    def center(self) -> PitchPoint:
        x = (self.x_band_lo + self.x_band_hi) / 2.0
        dist = (self.touch_band_lo + self.touch_band_hi) / 2.0
        return PitchPoint(x, from_left_touchline(dist))


def read_kick_grid_csv(stream) -> list[KickGridCell]:
    """Parse a kicking-grid CSV (attempts column optional)."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    try:
        header = [h.strip().lower() for h in next(reader)]
    except StopIteration:
        raise SchemaError("empty file: no header row") from None
    idx = {name: header.index(name) for name in GRID_CSV_COLUMNS[:5] if name in header}
    missing = [name for name in GRID_CSV_COLUMNS[:5] if name not in idx]
    if missing:
        raise SchemaError(f"missing required column(s): {', '.join(missing)}")
    attempts_col = header.index("attempts") if "attempts" in header else None

    cells = []
    for line_no, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        try:
            attempts = None
            if attempts_col is not None and row[attempts_col].strip():
                attempts = float(row[attempts_col])
            cells.append(
                KickGridCell(
                    x_band_lo=float(row[idx["x_band_lo"]]),
                    x_band_hi=float(row[idx["x_band_hi"]]),
                    touch_band_lo=float(row[idx["touch_band_lo"]]),
                    touch_band_hi=float(row[idx["touch_band_hi"]]),
                    proportion=float(row[idx["proportion"]]),
                    attempts=attempts,
                )
            )
        except (ValueError, IndexError) as exc:
            raise RowError(line_no, str(exc)) from None
        except DomainError as exc:
            raise RowError(line_no, str(exc)) from None
    return cells


def write_kick_grid_csv(cells, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(GRID_CSV_COLUMNS)
    for c in cells:
        writer.writerow(
            [
                repr(float(c.x_band_lo)),
                repr(float(c.x_band_hi)),
                repr(float(c.touch_band_lo)),
                repr(float(c.touch_band_hi)),
                repr(float(c.proportion)),
                "" if c.attempts is None else repr(float(c.attempts)),
            ]
        )


class KickSuccessSurface:
    """Fitted make-probability surface over (distance, angle)."""

    def __init__(self, gam: PenalizedLogisticGAM, surface_id: str = "kick-surface"):
        self.gam = gam
        self.surface_id = surface_id

    def p_make(self, point: PitchPoint) -> float:
        """Make probability for a kick from ``point``; requires x >= 5 m."""
        if point.x < MIN_KICK_X:
            raise DomainError(
                f"kick model domain starts {MIN_KICK_X} m out, got x={point.x}"
            )
        geom = to_kick_geometry(point)
        return float(self.gam.predict_proba([[geom.d, geom.theta]])[0])

    def p_make_detail(self, point: PitchPoint) -> tuple[float, bool]:
        """Make probability plus a flag set when (d, theta) was clamped."""
        if point.x < MIN_KICK_X:
            raise DomainError(
                f"kick model domain starts {MIN_KICK_X} m out, got x={point.x}"
            )
        geom = to_kick_geometry(point)
        _, clamped = self.gam.clamp([[geom.d, geom.theta]])
        return float(self.gam.predict_proba([[geom.d, geom.theta]])[0]), bool(clamped[0])

    def p_make_batch(self, points) -> np.ndarray:
        """Vectorized make probabilities for an iterable of ``PitchPoint``.

        One basis evaluation covers all points, so large grids cost
        milliseconds instead of one model call per node. A single-point
        batch takes exactly the ``p_make`` code path shape, so 1x1 grids
        reproduce scalar evaluation bit-for-bit.
        """
        pts = list(points)
        for p in pts:
            if p.x < MIN_KICK_X:
                raise DomainError(
                    f"kick model domain starts {MIN_KICK_X} m out, got x={p.x}"
                )
        geoms = [to_kick_geometry(p) for p in pts]
        return self.gam.predict_proba([[g.d, g.theta] for g in geoms])

    def to_dict(self) -> dict:
        doc = self.gam.to_dict()
        doc["kind"] = "kick-success-surface"
        doc["surface_id"] = self.surface_id
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "KickSuccessSurface":
        if doc.get("kind") != "kick-success-surface":
            raise ValueError(f"not a kick surface document: kind={doc.get('kind')!r}")
        inner = dict(doc)
        inner["kind"] = "penalized-logistic-gam"
        return cls(PenalizedLogisticGAM.from_dict(inner), doc.get("surface_id", "kick-surface"))


def fit_kick_surface(
    cells,
    n_basis=(8, 6),
    degree: int = 3,
    lambda_grid=None,
    lambdas=None,
    surface_id: str = "kick-surface",
) -> KickSuccessSurface:
    """Fit the make-probability surface to gridded cells.

    Cell centers closer than 5 m to the try line are dropped. Remaining
    cells are converted to (d, theta); attempts weight the fit when present
    (uniform weights otherwise, with overdispersion absorbed by the
    quasi-binomial dispersion).
    """
    kept = [c for c in cells if c.center().x >= MIN_KICK_X]
    if len(kept) < MIN_CELLS:
        raise FitDomainError(
            f"need at least {MIN_CELLS} cells at x >= {MIN_KICK_X}, got {len(kept)}"
        )
    centers = [c.center() for c in kept]
    if len({c.x for c in centers}) < MIN_DISTINCT_BANDS:
        raise FitDomainError("cells must span at least 3 distinct distance bands")
    geoms = [to_kick_geometry(c) for c in centers]
    if len({round(g.theta, 9) for g in geoms}) < MIN_DISTINCT_BANDS:
        raise FitDomainError("cells must span at least 3 distinct angles")

    X = np.array([[g.d, g.theta] for g in geoms])
    y = np.array([c.proportion for c in kept])
    if all(c.attempts is None for c in kept):
        weights = np.ones(len(kept))
    else:
        weights = np.array([1.0 if c.attempts is None else c.attempts for c in kept])

    gam = PenalizedLogisticGAM(
        n_basis=n_basis, degree=degree, lambda_grid=lambda_grid, lambdas=lambdas
    )
    gam.fit(X, y, sample_weight=weights)
    return KickSuccessSurface(gam, surface_id=surface_id)


# -- continuation value of a miss -------------------------------------------


@dataclass(frozen=True)
class RestartZone:
    x_lo: float
    x_hi: float
    value: float
    count: int = 0


class RestartValueTable:
    """Expected points after a kick restart, keyed by original-kick distance."""

    def __init__(self, zones, fallback: float, table_id: str = "restart-table"):
        zones = sorted(
            (RestartZone(float(z[0]), float(z[1]), float(z[2]), int(z[3]) if len(z) > 3 else 0)
             if not isinstance(z, RestartZone) else z
             for z in zones),
            key=lambda z: z.x_lo,
        )
        for a, b in zip(zones, zones[1:]):
            if b.x_lo < a.x_hi:
                raise ValueError(f"overlapping zones [{a.x_lo},{a.x_hi}) and [{b.x_lo},{b.x_hi})")
        if not np.isfinite(fallback):
            raise ValueError("fallback value must be finite")
        self.zones = tuple(zones)
        self.fallback = float(fallback)
        self.table_id = table_id

    def ep_miss(self, x: float) -> float:
        """Zone lookup on the original kick location; fallback outside all zones."""
        if not (0.0 <= x <= 100.0):
            raise DomainError(f"x={x} outside [0, 100]")
        for z in self.zones:
            if z.x_lo <= x < z.x_hi:
                return z.value
        return self.fallback

    def monotone_pooled(self) -> "RestartValueTable":
        """Pool adjacent zone values (count-weighted) until non-increasing in x.

        Optional smoothing for sparse, non-monotone tables; the raw values
        are the default everywhere else.
        """
        vals = [z.value for z in self.zones]
        wts = [max(z.count, 1) for z in self.zones]
        blocks = [[i] for i in range(len(vals))]
        i = 0
        while i < len(blocks) - 1:
            v_i = sum(vals[j] * wts[j] for j in blocks[i]) / sum(wts[j] for j in blocks[i])
            v_n = sum(vals[j] * wts[j] for j in blocks[i + 1]) / sum(wts[j] for j in blocks[i + 1])
            if v_n > v_i:
                blocks[i] = blocks[i] + blocks.pop(i + 1)
                i = max(i - 1, 0)
            else:
                i += 1
        pooled = []
        for block in blocks:
            v = sum(vals[j] * wts[j] for j in block) / sum(wts[j] for j in block)
            for j in block:
                z = self.zones[j]
                pooled.append(RestartZone(z.x_lo, z.x_hi, v, z.count))
        return RestartValueTable(pooled, self.fallback, table_id=self.table_id + "-pooled")

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "restart-value-table",
            "table_id": self.table_id,
            "zones": [
                {"x_lo": z.x_lo, "x_hi": z.x_hi, "value": z.value, "count": z.count}
                for z in self.zones
            ],
            "fallback": self.fallback,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "RestartValueTable":
        if doc.get("kind") != "restart-value-table":
            raise ValueError(f"not a restart table document: kind={doc.get('kind')!r}")
        zones = [
            RestartZone(z["x_lo"], z["x_hi"], z["value"], z.get("count", 0))
            for z in doc["zones"]
        ]
        return cls(zones, doc["fallback"], table_id=doc.get("table_id", "restart-table"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RestartValueTable":
        return cls.from_dict(json.loads(text))


def ep_kick(p_make: float, ep_miss: float) -> float:
    """Expected points of a kick at goal: make value plus miss continuation."""
    if not (0.0 <= p_make <= 1.0):
        raise DomainError(f"p_make {p_make} outside [0, 1]")
    return GOAL_POINTS * p_make + (1.0 - p_make) * ep_miss


def restart_values_from_phases(
    records,
    zone_map,
    orientation: str = "opp",
    zone_bounds=((10.0, 22.0), (22.0, 50.0), (50.0, 60.0), (60.0, 78.0)),
) -> RestartValueTable:
    """Build a restart table from qualifying drop-out restarts in a phase log.

    Qualifying restarts (a) open a possession (phase 1) with a restart
    event, (b) do not follow a change in score, and (c) did not occur at
    the start of a half. Each is valued by its next-score outcome and keyed
    to the zone of the immediately preceding record's field position (the
    original kick location). Zones with no observations are omitted so the
    fallback applies there; the fallback is the count-weighted overall mean.
    """
    from .ingest import sec_remain_half

    def home_diff(rec) -> int:
        return rec.points_difference if rec.team_in_poss == "Home" else -rec.points_difference

    values: dict[tuple[float, float], list[float]] = {tuple(b): [] for b in zone_bounds}
    all_points: list[float] = []

    prev_by_match: dict[str, object] = {}
    for rec in records:
        prev = prev_by_match.get(rec.match_id)
        prev_by_match[rec.match_id] = rec
        if rec.phase != 1 or rec.event_type not in ("drop-out", "kickoff"):
            continue
        if prev is None:
            continue  # first record of a match is a half-start restart
        if home_diff(rec) != home_diff(prev):
            continue  # follows a score change
        if sec_remain_half(rec.sec_remain_match) >= 2400:
            continue  # start of a half
        if prev.zone not in zone_map:
            continue
        meter = zone_map[prev.zone]
        if orientation == "own":
            meter = 100.0 - meter
        all_points.append(float(rec.points_next))
        for bounds in values:
            if bounds[0] <= meter < bounds[1]:
                values[bounds].append(float(rec.points_next))
                break

    if not all_points:
        return RestartValueTable([], 0.0, table_id="restart-empty")
    zones = [
        RestartZone(lo, hi, float(np.mean(pts)), len(pts))
        for (lo, hi), pts in values.items()
        if pts
    ]
    fallback = float(np.mean(all_points))
    return RestartValueTable(zones, fallback, table_id="restart-from-phases")


# -- diagnostics --------------------------------------------------------------


def calibration_table(surface: KickSuccessSurface, cells, n_bins: int = 10) -> list[dict]:
    """Decile calibration rows: predicted vs observed make rate per bin."""
    kept = [c for c in cells if c.center().x >= MIN_KICK_X]
    geoms = [to_kick_geometry(c.center()) for c in kept]
    pred = surface.gam.predict_proba([[g.d, g.theta] for g in geoms])
    obs = np.array([c.proportion for c in kept])
    wts = np.array([1.0 if c.attempts is None else c.attempts for c in kept])
    order = np.argsort(pred, kind="stable")
    rows = []
    for chunk in np.array_split(order, n_bins):
        if len(chunk) == 0:
            continue
        w = wts[chunk]
        rows.append(
            {
                "n_cells": int(len(chunk)),
                "mean_predicted": float(np.average(pred[chunk], weights=w)),
                "mean_observed": float(np.average(obs[chunk], weights=w)),
            }
        )
    return rows


def kfold_deviance(cells, k: int = 5, seed: int = 0, **fit_kwargs) -> float:
    """Mean held-out binomial deviance per fold for the surface fit."""
    from .glm.irls import binomial_deviance

    kept = [c for c in cells if c.center().x >= MIN_KICK_X]
    rng = np.random.Generator(np.random.PCG64(seed))
    order = rng.permutation(len(kept))
    folds = np.array_split(order, k)
    total = 0.0
    for fold in folds:
        hold = set(int(i) for i in fold)
        train = [c for i, c in enumerate(kept) if i not in hold]
        test = [kept[i] for i in sorted(hold)]
        surface = fit_kick_surface(train, **fit_kwargs)
        geoms = [to_kick_geometry(c.center()) for c in test]
        mu = surface.gam.predict_proba([[g.d, g.theta] for g in geoms])
        y = np.array([c.proportion for c in test])
        m = np.array([1.0 if c.attempts is None else c.attempts for c in test])
        total += binomial_deviance(y, mu, m)
    return total / k
