"""Phase-level event-log ingestion.

Parses phase CSVs, restricts to lineout-opening possessions, derives the
model covariates, groups consecutive equivalent possessions under a shared
``run_id``, and subsamples one observation per group with a seeded PCG64
generator so results are bit-reproducible across platforms.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import RowError, SchemaError, ZoneMappingError

HALF_SECONDS = 2400
VALID_NEXT_POINTS = {-7, -5, -3, 0, 3, 5, 7}

# Columns the parser insists on, plus one of the Sec_Remain* variants.
REQUIRED_COLUMNS = (
    "Round",
    "Home",
    "Away",
    "Phase",
    "Team_In_Poss",
    "Points_Difference",
    "Card_Diff",
    "WinPct_Diff",
    "Zone",
    "Event_Type",
    "Points",
)
TIME_COLUMNS = ("Sec_Remain_Half", "Sec_Remain", "Sec_Remain_Match")

CANONICAL_COLUMNS = (
    "match_id",
    "round",
    "home",
    "away",
    "phase",
    "team_in_poss",
    "points_difference",
    "sec_remain_match",
    "card_diff",
    "winpct_diff",
    "zone",
    "event_type",
    "points_next",
    "meter_line",
    "sec_remain_half",
    "run_id",
    "n_same",
)


@dataclass(frozen=True)
class PhaseRecord:
    """One phase of play as read from the raw event log."""

    match_id: str
    round: int
    home: str
    away: str
    phase: int
    team_in_poss: str
    points_difference: int
    sec_remain_match: int
    card_diff: int
    winpct_diff: float
    zone: str
    event_type: str
    points_next: int
    extras: tuple[tuple[str, str], ...] = field(default=())


@dataclass(frozen=True)
class PossessionEntry:
    """A lineout-opening possession with derived covariates."""

    match_id: str
    round: int
    home: str
    away: str
    phase: int
    team_in_poss: str
    points_difference: int
    sec_remain_match: int
    card_diff: int
    winpct_diff: float
    zone: str
    event_type: str
    points_next: int
    meter_line: float
    sec_remain_half: int
    run_id: int = 0
    n_same: int = 0


class ZoneMap:
    """Ordered mapping of zone labels to continuous meter-line midpoints."""

    def __init__(self, pairs):
        self._pairs = [(str(label), float(mid)) for label, mid in pairs]
        seen = set()
        for label, mid in self._pairs:
            if label in seen:
                raise ValueError(f"duplicate zone label {label!r}")
            seen.add(label)
            if not (0.0 < mid < 100.0):
                raise ValueError(f"zone {label!r} midpoint {mid} outside (0, 100)")
        self._lookup = dict(self._pairs)

    def __contains__(self, label: str) -> bool:
        return label in self._lookup

    def __getitem__(self, label: str) -> float:
        try:
            return self._lookup[label]
        except KeyError:
            raise ZoneMappingError(f"zone label {label!r} not in zone map") from None

    def items(self):
        return list(self._pairs)

    def to_json(self) -> str:
        return json.dumps(dict(self._pairs), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ZoneMap":
        doc = json.loads(text)
        if not isinstance(doc, dict) or not doc:
            raise SchemaError("zone map must be a non-empty label -> midpoint object")
        return cls(doc.items())


# Six symmetric field zones; midpoints follow the published phase tables.
DEFAULT_ZONE_MAP = ZoneMap(
    [
        ("zone-1", 13.5),
        ("zone-2", 31.0),
        ("zone-3", 45.0),
        ("zone-4", 55.0),
        ("zone-5", 69.0),
        ("zone-6", 86.5),
    ]
)


def _normalize_event(raw: str) -> str:
    label = raw.strip().lower().replace("_", "-").replace(" ", "-")
    if label in ("kick-off", "kickoff"):
        return "kickoff"
    if label in ("dropout", "drop-out", "22m-drop-out", "22-drop-out"):
        return "drop-out"
    return label


def _parse_int(raw: str, column: str, line: int) -> int:
    try:
        return int(float(raw)) if "." in raw else int(raw)
    except ValueError:
        raise RowError(line, f"cannot parse {column}={raw!r} as an integer") from None


def _parse_float(raw: str, column: str, line: int) -> float:
    try:
        return float(raw)
    except ValueError:
        raise RowError(line, f"cannot parse {column}={raw!r} as a number") from None


def parse_phase_csv(stream) -> list[PhaseRecord]:
    """Parse a raw phase log into typed records, preserving file order.

    ``stream`` is a text file object or a string. Missing required columns
    raise ``SchemaError``; malformed cells raise ``RowError`` with the
    1-based line number. Unknown columns are carried along as opaque
    metadata.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty file: no header row") from None
    names = [h.strip() for h in header]
    canonical = {n.lower(): i for i, n in enumerate(names)}

    def col(name: str) -> int | None:
        return canonical.get(name.lower())

    missing = [c for c in REQUIRED_COLUMNS if col(c) is None]
    if missing:
        raise SchemaError(f"missing required column(s): {', '.join(missing)}")
    time_col = next((c for c in TIME_COLUMNS if col(c) is not None), None)
    if time_col is None:
        raise SchemaError(
            f"missing time column: expected one of {', '.join(TIME_COLUMNS)}"
        )

    known = {col(c) for c in REQUIRED_COLUMNS} | {col(time_col)}
    for opt in ("Match_ID", "ID"):
        if col(opt) is not None:
            known.add(col(opt))
    extra_cols = [(names[i], i) for i in range(len(names)) if i not in known]

    records: list[PhaseRecord] = []
    for line_no, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < len(names):
            raise RowError(line_no, f"expected {len(names)} cells, got {len(row)}")

        def cell(name: str) -> str:
            return row[col(name)].strip()

        round_no = _parse_int(cell("Round"), "Round", line_no)
        home, away = cell("Home"), cell("Away")
        match_col = col("Match_ID")
        match_id = (
            row[match_col].strip()
            if match_col is not None and row[match_col].strip()
            else f"{round_no}:{home}:{away}"
        )
        team = cell("Team_In_Poss").strip().title()
        if team not in ("Home", "Away"):
            raise RowError(line_no, f"Team_In_Poss must be Home or Away, got {team!r}")
        phase = _parse_int(cell("Phase"), "Phase", line_no)
        if phase < 1:
            raise RowError(line_no, f"Phase must be >= 1, got {phase}")
        sec = _parse_int(cell(time_col), time_col, line_no)
        if sec < 0:
            raise RowError(line_no, f"{time_col} must be >= 0, got {sec}")
        winpct_raw = cell("WinPct_Diff")
        winpct = _parse_float(winpct_raw, "WinPct_Diff", line_no) if winpct_raw else 0.0
        if not (-1.0 <= winpct <= 1.0):
            raise RowError(line_no, f"WinPct_Diff {winpct} outside [-1, 1]")
        points = _parse_int(cell("Points"), "Points", line_no)
        if points not in VALID_NEXT_POINTS:
            raise RowError(
                line_no, f"Points must be one of {sorted(VALID_NEXT_POINTS)}, got {points}"
            )

        records.append(
            PhaseRecord(
                match_id=match_id,
                round=round_no,
                home=home,
                away=away,
                phase=phase,
                team_in_poss=team,
                points_difference=_parse_int(
                    cell("Points_Difference"), "Points_Difference", line_no
                ),
                sec_remain_match=sec,
                card_diff=_parse_int(cell("Card_Diff"), "Card_Diff", line_no),
                winpct_diff=winpct,
                zone=cell("Zone"),
                event_type=_normalize_event(cell("Event_Type")),
                points_next=points,
                extras=tuple((name, row[i].strip()) for name, i in extra_cols),
            )
        )
    return records


def sec_remain_half(sec_remain_match: int) -> int:
    """Seconds remaining in the current half, clamped to one 2400 s half.

    Values at or below 2400 are taken as already half-referenced; larger
    values are match clocks in the first half. Stoppage time beyond a full
    half clamps to 2400.
    """
    s = sec_remain_match if sec_remain_match <= HALF_SECONDS else sec_remain_match - HALF_SECONDS
    return min(s, HALF_SECONDS)


def derive_entries(records, zone_map: ZoneMap, orientation: str = "opp") -> list[PossessionEntry]:
    """Keep phase-1 lineout records and attach derived covariates.

    ``orientation`` states the convention of the zone map midpoints:
    ``"opp"`` for distance to the opposition try line (used as-is) and
    ``"own"`` for distance from the team's own goal line (converted to
    100 - m). Records are expected sorted by match then time.
    """
    if orientation not in ("own", "opp"):
        raise ValueError(f"orientation must be 'own' or 'opp', got {orientation!r}")
    entries = []
    for rec in records:
        if rec.phase != 1 or rec.event_type != "lineout":
            continue
        meter = zone_map[rec.zone]
        if orientation == "own":
            meter = 100.0 - meter
        entries.append(
            PossessionEntry(
                match_id=rec.match_id,
                round=rec.round,
                home=rec.home,
                away=rec.away,
                phase=rec.phase,
                team_in_poss=rec.team_in_poss,
                points_difference=rec.points_difference,
                sec_remain_match=rec.sec_remain_match,
                card_diff=rec.card_diff,
                winpct_diff=rec.winpct_diff,
                zone=rec.zone,
                event_type=rec.event_type,
                points_next=rec.points_next,
                meter_line=meter,
                sec_remain_half=sec_remain_half(rec.sec_remain_match),
            )
        )
    return entries


def assign_run_ids(entries) -> list[PossessionEntry]:
    """Group consecutive equivalent possessions under dense positive run ids.

    Within a match, consecutive entries sharing (team in possession, points
    difference, eventual scoring outcome) form one group. Ids restart never:
    they increase densely across the whole dataset, so re-running on the
    output reproduces identical groups.
    """
    out: list[PossessionEntry] = []
    run_id = 0
    group: list[PossessionEntry] = []

    def flush():
        nonlocal group
        for e in group:
            out.append(replace(e, run_id=run_id, n_same=len(group)))
        group = []

    prev_key = None
    for e in entries:
        key = (e.match_id, e.team_in_poss, e.points_difference, e.points_next)
        if key != prev_key:
            flush()
            run_id += 1
            prev_key = key
        group.append(e)
    flush()
    return out


def sample_one_per_run(entries, seed: int) -> list[PossessionEntry]:
    """Uniformly retain one entry per run id, ordered by run id.

    Selection uses numpy's PCG64 generator seeded with ``seed``; draws are
    consumed in ascending run-id order, so the output is identical across
    runs and platforms for the same input and seed.
    """
    groups: dict[int, list[PossessionEntry]] = {}
    for e in entries:
        if e.run_id <= 0:
            raise ValueError("entries must have run ids assigned before sampling")
        groups.setdefault(e.run_id, []).append(e)
    rng = np.random.Generator(np.random.PCG64(seed))
    sampled = []
    for run_id in sorted(groups):
        members = groups[run_id]
        sampled.append(members[int(rng.integers(len(members)))])
    return sampled


def write_entries_csv(entries, stream) -> None:
    """Write possession entries in the canonical column order."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CANONICAL_COLUMNS)
    for e in entries:
        writer.writerow(
            [
                e.match_id,
                e.round,
                e.home,
                e.away,
                e.phase,
                e.team_in_poss,
                e.points_difference,
                e.sec_remain_match,
                e.card_diff,
                repr(e.winpct_diff),
                e.zone,
                e.event_type,
                e.points_next,
                repr(e.meter_line),
                e.sec_remain_half,
                e.run_id,
                e.n_same,
            ]
        )


def read_entries_csv(stream) -> list[PossessionEntry]:
    """Read back a canonical possession CSV produced by ``write_entries_csv``.

    The outcome column is read numerically (not forced to an integer) so
    synthetic fixtures with continuous responses round-trip through the
    fitting pipeline.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty file: no header row") from None
    if tuple(h.strip() for h in header) != CANONICAL_COLUMNS:
        raise SchemaError(
            f"canonical CSV header mismatch: expected {','.join(CANONICAL_COLUMNS)}"
        )
    entries = []
    for line_no, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        try:
            points = float(row[12])
            entries.append(
                PossessionEntry(
                    match_id=row[0],
                    round=int(row[1]),
                    home=row[2],
                    away=row[3],
                    phase=int(row[4]),
                    team_in_poss=row[5],
                    points_difference=int(row[6]),
                    sec_remain_match=int(row[7]),
                    card_diff=int(row[8]),
                    winpct_diff=float(row[9]),
                    zone=row[10],
                    event_type=row[11],
                    points_next=int(points) if points.is_integer() else points,
                    meter_line=float(row[13]),
                    sec_remain_half=int(row[14]),
                    run_id=int(row[15]),
                    n_same=int(row[16]),
                )
            )
        except (ValueError, IndexError) as exc:
            raise RowError(line_no, str(exc)) from None
    return entries


@dataclass(frozen=True)
class IngestReport:
    """Row counts at each pipeline stage."""

    raw_rows: int
    phase1_lineouts: int
    groups: int
    sampled: int

    def to_dict(self) -> dict:
        return {
            "raw_rows": self.raw_rows,
            "phase1_lineouts": self.phase1_lineouts,
            "groups": self.groups,
            "sampled": self.sampled,
        }


def ingest(stream, zone_map: ZoneMap, orientation: str, seed: int):
    """Full pipeline: parse, derive, group, sample. Returns (entries, report)."""
    records = parse_phase_csv(stream)
    derived = derive_entries(records, zone_map, orientation)
    grouped = assign_run_ids(derived)
    sampled = sample_one_per_run(grouped, seed) if grouped else []
    report = IngestReport(
        raw_rows=len(records),
        phase1_lineouts=len(derived),
        groups=len({e.run_id for e in grouped}),
        sampled=len(sampled),
    )
    return sampled, report
