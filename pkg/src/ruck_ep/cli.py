"""Command-line interface for the full pipeline.

Exit codes are a stable contract: 0 success, 1 usage error, 2 data/schema
error, 3 numerical failure. Commands with identical inputs and seeds write
byte-identical outputs (no timestamps or machine state leak into files).
"""

from __future__ import annotations

import io
import json
import sys
from pathlib import Path

import click

from . import builtins as builtin_models
from .bundle import load_bundle, make_bundle, save_bundle
from .decision import (
    DecisionQuery,
    decision_grid,
    frontier,
    grid_to_csv,
    grid_to_json_dict,
    evaluate,
    read_decisions_csv,
    regret_report,
    regret_to_csv,
    sweep_dtouch,
)
from .errors import DataError, NumericError
from .ingest import DEFAULT_ZONE_MAP, ZoneMap, ingest, read_entries_csv, write_entries_csv
from .kick import fit_kick_surface, read_kick_grid_csv, restart_values_from_phases
from .lineout import GameContext, fit_lineout_model
from .pitch import PitchPoint


@click.group()
def cli():
    """Expected-points decision tooling for rugby union penalties."""


@cli.command("ingest")
@click.option("--input", "input_path", required=True, type=click.Path(path_type=Path))
@click.option("--zone-map", "zone_map_path", type=click.Path(path_type=Path), default=None,
              help="JSON file mapping zone labels to meter-line midpoints.")
@click.option("--orientation", type=click.Choice(["own", "opp"]), default="opp",
              show_default=True,
              help="Convention of the zone midpoints: distance from own goal line or to the opposition try line.")
@click.option("--seed", required=True, type=int, help="Sampler seed (one entry per run id).")
@click.option("--out-dir", required=True, type=click.Path(path_type=Path))
def cmd_ingest(input_path: Path, zone_map_path: Path | None, orientation: str, seed: int, out_dir: Path):
    """Parse a phase log, derive covariates, group runs, and sample."""
    if not input_path.exists():
        raise click.UsageError(f"input file not found: {input_path}")
    zone_map = (
        ZoneMap.from_json(zone_map_path.read_text(encoding="utf-8"))
        if zone_map_path
        else DEFAULT_ZONE_MAP
    )
    with open(input_path, newline="", encoding="utf-8") as fh:
        entries, report = ingest(fh, zone_map, orientation, seed)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "possessions.csv", "w", newline="", encoding="utf-8") as fh:
        write_entries_csv(entries, fh)
    (out_dir / "ingest_report.json").write_text(
        json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8"
    )
    click.echo(json.dumps(report.to_dict(), indent=2))


def _fit_lineout_part(ref: str):
    if ref.startswith("builtin:"):
        name = ref[len("builtin:"):]
        if name != "premiership-2018-19":
            raise click.UsageError(
                f"unknown builtin lineout model {name!r} (available: premiership-2018-19)"
            )
        return builtin_models.PREMIERSHIP_2018_19, None
    path = Path(ref)
    if not path.exists():
        raise click.UsageError(f"--lineout file not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        entries = read_entries_csv(fh)
    return fit_lineout_model(entries)


def _fit_kick_part(ref: str, lambda_grid):
    if ref.startswith("builtin:"):
        name = ref[len("builtin:"):]
        if name != "demo":
            raise click.UsageError(f"unknown builtin kick surface {name!r} (available: demo)")
        return builtin_models.demo_kick_surface()
    path = Path(ref)
    if not path.exists():
        raise click.UsageError(f"--kick file not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        cells = read_kick_grid_csv(fh)
    return fit_kick_surface(cells, lambda_grid=lambda_grid, surface_id=f"fit:{path.name}")


def _fit_restart_part(ref: str, zone_map: ZoneMap, orientation: str):
    if ref.startswith("builtin:"):
        name = ref[len("builtin:"):]
        if name == "zones":
            return builtin_models.RESTART_ZONES_2018_19
        if name == "overall":
            return builtin_models.RESTART_OVERALL_AVERAGE
        raise click.UsageError(
            f"unknown builtin restart table {name!r} (available: zones, overall)"
        )
    path = Path(ref)
    if not path.exists():
        raise click.UsageError(f"--restart file not found: {path}")
    from .ingest import parse_phase_csv

    with open(path, newline="", encoding="utf-8") as fh:
        records = parse_phase_csv(fh)
    return restart_values_from_phases(records, zone_map, orientation)


@cli.command("fit")
@click.option("--lineout", "lineout_ref", required=True,
              help="Possessions CSV from `ingest`, or builtin:premiership-2018-19.")
@click.option("--kick", "kick_ref", default=None,
              help="Kicking-grid CSV, or builtin:demo.")
@click.option("--restart", "restart_ref", default="builtin:overall", show_default=True,
              help="Phase CSV to derive restart values from, or builtin:zones / builtin:overall.")
@click.option("--zone-map", "zone_map_path", type=click.Path(path_type=Path), default=None)
@click.option("--orientation", type=click.Choice(["own", "opp"]), default="opp", show_default=True)
@click.option("--lambda-grid", default=None,
              help="Comma-separated smoothing grid, e.g. 0.001,0.1,10.")
@click.option("--out", "out_path", required=True, type=click.Path(path_type=Path))
def cmd_fit(lineout_ref, kick_ref, restart_ref, zone_map_path, orientation, lambda_grid, out_path: Path):
    """Fit all three model components and write a bundle."""
    if kick_ref is None:
        raise click.UsageError("missing kicking grid: pass --kick <grid.csv> or --kick builtin:demo")
    grid = [float(v) for v in lambda_grid.split(",")] if lambda_grid else None
    zone_map = (
        ZoneMap.from_json(zone_map_path.read_text(encoding="utf-8"))
        if zone_map_path
        else DEFAULT_ZONE_MAP
    )

    lineout_coeffs, lineout_fit = _fit_lineout_part(lineout_ref)
    surface = _fit_kick_part(kick_ref, grid)
    restarts = _fit_restart_part(restart_ref, zone_map, orientation)

    bundle = make_bundle(
        lineout_coeffs,
        surface,
        restarts,
        prefix="fit",
        meta={"lineout": lineout_ref, "kick": kick_ref, "restart": restart_ref},
    )
    out_path.parent.mkdir(parents=True, exist_ok=True)
    save_bundle(bundle, out_path)

    report = {
        "bundle_id": bundle.bundle_id,
        "lineout": _lineout_report(lineout_coeffs, lineout_fit),
        "kick_surface": {
            "surface_id": surface.surface_id,
            "lambdas": list(surface.gam.lambdas_),
            "dispersion": surface.gam.dispersion_,
            "edf": surface.gam.edf_,
            "convergence": surface.gam.record_.to_dict(),
        },
        "restart_table": bundle.restarts.to_dict(),
    }
    report_path = out_path.with_suffix(".report.json")
    report_path.write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    click.echo(_format_fit_report(report))


def _lineout_report(coeffs, fit) -> dict:
    rows = []
    names = ("Intercept", "meter_line", "Card_Diff", "WinPct_Diff")
    betas = (coeffs.beta0, coeffs.beta1, coeffs.beta2, coeffs.beta3)
    for i, name in enumerate(names):
        row = {"coefficient": name, "estimate": betas[i]}
        if coeffs.std_errors is not None:
            row["std_error"] = coeffs.std_errors[i]
            row["t_value"] = coeffs.t_values[i]
            row["p_value"] = coeffs.p_values[i]
        rows.append(row)
    out = {"model_id": coeffs.model_id, "coefficients": rows}
    if fit is not None:
        out["n"] = fit.n
        out["residual_variance"] = fit.residual_variance
    return out


def _format_fit_report(report: dict) -> str:
    lines = [f"bundle {report['bundle_id']}"]
    lines.append(f"lineout model {report['lineout']['model_id']}:")
    lines.append(f"  {'coefficient':<12} {'Estimate':>10} {'Std. Error':>11} {'t value':>9}")
    for row in report["lineout"]["coefficients"]:
        se = row.get("std_error")
        t = row.get("t_value")
        lines.append(
            f"  {row['coefficient']:<12} {row['estimate']:>10.4f} "
            f"{se if se is None else format(se, '>11.4f')} "
            f"{t if t is None else format(t, '>9.3f')}"
        )
    ks = report["kick_surface"]
    lines.append(
        f"kick surface {ks['surface_id']}: lambdas={tuple(ks['lambdas'])} "
        f"edf={ks['edf']:.2f} dispersion={ks['dispersion']:.4g} "
        f"converged={ks['convergence']['converged']} in {ks['convergence']['iterations']} iterations"
    )
    rt = report["restart_table"]
    lines.append(f"restart table {rt['table_id']}: fallback={rt['fallback']}")
    for z in rt["zones"]:
        lines.append(f"  [{z['x_lo']:.0f}, {z['x_hi']:.0f}) -> {z['value']:.2f} (n={z['count']})")
    return "\n".join(lines)


@cli.command("decide")
@click.option("--bundle", "bundle_ref", default=None, help="Bundle path or builtin:demo.")
@click.option("--x", required=True, type=float)
@click.option("--y", required=True, type=float)
@click.option("--d-touch", required=True, type=float)
@click.option("--cards", type=int, default=0, show_default=True)
@click.option("--winpct", type=float, default=0.0, show_default=True)
def cmd_decide(bundle_ref, x, y, d_touch, cards, winpct):
    """Evaluate one penalty decision and print the verdict."""
    bundle = load_bundle(bundle_ref)
    query = DecisionQuery(PitchPoint(x, y), d_touch, GameContext(cards, winpct))
    result = evaluate(query, bundle.lineout, bundle.surface, bundle.restarts)
    click.echo(json.dumps({"bundle_id": bundle.bundle_id, **result.to_dict()}, indent=2))
    click.echo(
        f"verdict: {result.recommendation} "
        f"(EP lineout {result.ep_lineout:.2f} vs EP kick {result.ep_kick:.2f}, "
        f"delta {result.delta:+.2f})"
    )


@cli.command("surface")
@click.option("--bundle", "bundle_ref", default=None)
@click.option("--d-touch", "d_touch_values", required=True, type=float, multiple=True,
              help="Repeat for several translation distances.")
@click.option("--cards", type=int, default=0, show_default=True)
@click.option("--winpct", type=float, default=0.0, show_default=True)
@click.option("--step", type=float, default=1.0, show_default=True)
@click.option("--out-dir", required=True, type=click.Path(path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "both"]), default="both",
              show_default=True)
def cmd_surface(bundle_ref, d_touch_values, cards, winpct, step, out_dir: Path, fmt):
    """Export decision grids (delta, recommendation, frontier) to files."""
    bundle = load_bundle(bundle_ref)
    out_dir.mkdir(parents=True, exist_ok=True)
    ctx = GameContext(cards, winpct)
    for d_touch in d_touch_values:
        g = decision_grid(
            bundle.lineout,
            bundle.surface,
            bundle.restarts,
            d_touch=d_touch,
            ctx=ctx,
            step=step,
            model_ids=bundle.model_ids(),
        )
        stem = f"grid_dtouch_{d_touch:g}"
        if fmt in ("json", "both"):
            doc = {"bundle_id": bundle.bundle_id, **grid_to_json_dict(g, frontier(g))}
            (out_dir / f"{stem}.json").write_text(
                json.dumps(doc, indent=2) + "\n", encoding="utf-8"
            )
        if fmt in ("csv", "both"):
            buf = io.StringIO()
            grid_to_csv(g, buf)
            (out_dir / f"{stem}.csv").write_text(buf.getvalue(), encoding="utf-8")
        click.echo(f"wrote {stem} ({len(g.x_axis)}x{len(g.y_axis)} nodes)")


@cli.command("regret")
@click.option("--bundle", "bundle_ref", default=None,
              help="Accepted for symmetry; the audit uses the EP columns as given.")
@click.option("--decisions", "decisions_path", required=True, type=click.Path(path_type=Path))
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None)
def cmd_regret(bundle_ref, decisions_path: Path, out_path: Path | None):
    """Audit realized decisions against the model-optimal choice."""
    if not decisions_path.exists():
        raise click.UsageError(f"decisions file not found: {decisions_path}")
    with open(decisions_path, newline="", encoding="utf-8") as fh:
        rows = read_decisions_csv(fh)
    report = regret_report(rows)
    buf = io.StringIO()
    regret_to_csv(report, buf)
    if out_path is not None:
        out_path.write_text(buf.getvalue(), encoding="utf-8")
    click.echo(buf.getvalue(), nl=False)
    prop = report.proportion_optimal
    click.echo(
        f"total regret {report.total_regret:.2f} over {len(report.rows)} decisions; "
        f"proportion optimal {'-' if prop is None else format(round(prop, 2), '.2f')}"
    )


@cli.command("sweep")
@click.option("--bundle", "bundle_ref", default=None)
@click.option("--x", required=True, type=float)
@click.option("--y", required=True, type=float)
@click.option("--cards", type=int, default=0, show_default=True)
@click.option("--winpct", type=float, default=0.0, show_default=True)
@click.option("--dmax", type=float, default=30.0, show_default=True)
def cmd_sweep(bundle_ref, x, y, cards, winpct, dmax):
    """Delta as a function of assumed meters gained to touch."""
    bundle = load_bundle(bundle_ref)
    result = sweep_dtouch(
        PitchPoint(x, y),
        GameContext(cards, winpct),
        [float(d) for d in range(0, int(dmax) + 1)],
        bundle.lineout,
        bundle.surface,
        bundle.restarts,
    )
    click.echo(json.dumps({"bundle_id": bundle.bundle_id, **result.to_dict()}, indent=2))


@cli.command("serve")
@click.option("--bundle", "bundle_ref", default=None)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def cmd_serve(bundle_ref, host, port):
    """Serve the evaluation API over HTTP."""
    from .service import serve

    bundle = load_bundle(bundle_ref)
    click.echo(f"serving bundle {bundle.bundle_id} on {host}:{port}")
    serve(bundle, host=host, port=port)


def main(argv=None) -> int:
    """Entry point with the documented exit-code contract."""
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except DataError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except NumericError as exc:
        click.echo(f"error: {exc}", err=True)
        return 3


if __name__ == "__main__":
    sys.exit(main())
