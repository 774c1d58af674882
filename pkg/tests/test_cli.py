from __future__ import annotations

import io
import json

import pytest

from ruck_ep.cli import main
from ruck_ep.decision import read_decisions_csv, regret_report
from ruck_ep.kick import write_kick_grid_csv

from conftest import PHASES_CSV, TABLE8_ROWS

HEADER = PHASES_CSV.splitlines()[0]


@pytest.fixture()
def phases_file(tmp_path):
    path = tmp_path / "phases.csv"
    path.write_text(PHASES_CSV, encoding="utf-8")
    return path


@pytest.fixture()
def decisions_file(tmp_path):
    path = tmp_path / "decisions.csv"
    lines = ["team,ep_lineout,ep_kick,chosen"]
    lines += [f"{t},{lo},{k},{c}" for t, lo, k, c in TABLE8_ROWS]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


class TestIngestCommand:
    def test_writes_outputs_and_report(self, phases_file, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(
            ["ingest", "--input", str(phases_file), "--seed", "42", "--out-dir", str(out)]
        )
        assert code == 0
        report = json.loads((out / "ingest_report.json").read_text())
        assert report == {"raw_rows": 12, "phase1_lineouts": 10, "groups": 7, "sampled": 7}
        body = (out / "possessions.csv").read_text()
        assert body.startswith("match_id,")
        assert body.count("\n") == 8  # header + 7 sampled rows

    def test_empty_input_succeeds_with_zero_counts(self, tmp_path):
        src = tmp_path / "empty.csv"
        src.write_text(HEADER + "\n", encoding="utf-8")
        out = tmp_path / "out"
        code = main(["ingest", "--input", str(src), "--seed", "1", "--out-dir", str(out)])
        assert code == 0
        report = json.loads((out / "ingest_report.json").read_text())
        assert report == {"raw_rows": 0, "phase1_lineouts": 0, "groups": 0, "sampled": 0}

    def test_same_seed_byte_identical(self, phases_file, tmp_path):
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        for out in (out_a, out_b):
            assert main(
                ["ingest", "--input", str(phases_file), "--seed", "9", "--out-dir", str(out)]
            ) == 0
        assert (out_a / "possessions.csv").read_bytes() == (out_b / "possessions.csv").read_bytes()
        assert (out_a / "ingest_report.json").read_bytes() == (out_b / "ingest_report.json").read_bytes()

    def test_schema_error_exit_code(self, tmp_path):
        src = tmp_path / "bad.csv"
        src.write_text("col_a,col_b\n1,2\n", encoding="utf-8")
        code = main(["ingest", "--input", str(src), "--seed", "1", "--out-dir", str(tmp_path / "o")])
        assert code == 2

    def test_missing_input_usage_error(self, tmp_path):
        code = main(["ingest", "--input", str(tmp_path / "nope.csv"), "--seed", "1",
                     "--out-dir", str(tmp_path / "o")])
        assert code == 1


class TestFitCommand:
    def test_builtin_lineout_embeds_published_constants(self, tmp_path):
        out = tmp_path / "bundle.json"
        code = main([
            "fit",
            "--lineout", "builtin:premiership-2018-19",
            "--kick", "builtin:demo",
            "--restart", "builtin:zones",
            "--out", str(out),
        ])
        assert code == 0
        doc = json.loads(out.read_text())
        coeffs = doc["lineout"]["coefficients"]
        assert coeffs["intercept"] == 3.2545
        assert coeffs["meter_line"] == -0.0586
        assert coeffs["card_diff"] == 0.8802
        assert coeffs["winpct_diff"] == 0.6503
        assert doc["restart_table"]["fallback"] == 0.76
        assert out.with_suffix(".report.json").exists()

    def test_noiseless_fixture_recovery_reported(self, tmp_path):
        # Build a possessions CSV whose outcomes follow exact coefficients.
        from ruck_ep.ingest import write_entries_csv
        from test_lineout import synthetic_entries

        entries = synthetic_entries(n=80, seed=7)
        src = tmp_path / "possessions.csv"
        with open(src, "w", newline="", encoding="utf-8") as fh:
            write_entries_csv(entries, fh)
        out = tmp_path / "bundle.json"
        code = main(["fit", "--lineout", str(src), "--kick", "builtin:demo", "--out", str(out)])
        assert code == 0
        report = json.loads(out.with_suffix(".report.json").read_text())
        estimates = {
            row["coefficient"]: row["estimate"] for row in report["lineout"]["coefficients"]
        }
        assert estimates["Intercept"] == pytest.approx(3.2545, abs=1e-8)
        assert estimates["meter_line"] == pytest.approx(-0.0586, abs=1e-8)

    def test_missing_kick_flag_is_usage_error(self, tmp_path, capsys):
        code = main([
            "fit", "--lineout", "builtin:premiership-2018-19", "--out", str(tmp_path / "b.json"),
        ])
        assert code == 1
        assert "--kick" in capsys.readouterr().err

    def test_fit_from_grid_csv(self, tmp_path):
        from test_kick import synthetic_cells

        grid_path = tmp_path / "grid.csv"
        with open(grid_path, "w", newline="", encoding="utf-8") as fh:
            write_kick_grid_csv(synthetic_cells(), fh)
        out = tmp_path / "bundle.json"
        code = main([
            "fit", "--lineout", "builtin:premiership-2018-19",
            "--kick", str(grid_path), "--out", str(out),
        ])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["kick_surface"]["kind"] == "kick-success-surface"


class TestDecideCommand:
    def test_case_study_json_and_verdict(self, capsys):
        code = main(["decide", "--x", "30", "--y", "-20", "--d-touch", "20"])
        assert code == 0
        out = capsys.readouterr().out
        json_part = out[: out.rindex("}") + 1]
        doc = json.loads(json_part)
        assert doc["delta"] == pytest.approx(0.2485, abs=1e-9)
        assert "verdict: lineout" in out

    def test_out_of_domain_exit_code(self):
        assert main(["decide", "--x", "4", "--y", "0", "--d-touch", "20"]) == 2

    def test_json_matches_in_process_evaluate(self, bundle, capsys):
        code = main(["decide", "--x", "47", "--y", "12", "--d-touch", "15",
                     "--cards", "1", "--winpct", "0.25"])
        assert code == 0
        out = capsys.readouterr().out
        doc = json.loads(out[: out.rindex("}") + 1])

        from ruck_ep.decision import DecisionQuery, evaluate
        from ruck_ep.lineout import GameContext
        from ruck_ep.pitch import PitchPoint

        res = evaluate(
            DecisionQuery(PitchPoint(47, 12), 15.0, GameContext(1, 0.25)),
            bundle.lineout,
            bundle.surface,
            bundle.restarts,
        )
        for key, value in res.to_dict().items():
            if isinstance(value, float):
                assert doc[key] == value
            else:
                assert doc[key] == value


class TestSurfaceCommand:
    def test_six_dtouch_values_write_six_grids(self, tmp_path):
        out = tmp_path / "grids"
        args = ["surface", "--out-dir", str(out), "--step", "10", "--format", "json"]
        for d in (0, 5, 10, 15, 20, 25):
            args += ["--d-touch", str(d)]
        assert main(args) == 0
        files = sorted(p.name for p in out.glob("*.json"))
        assert len(files) == 6
        docs = [json.loads((out / f).read_text()) for f in files]
        frontiers = {json.dumps(d["frontier"]) for d in docs}
        assert len(frontiers) > 1  # translation shifts the boundary

    def test_wide_step_single_column(self, tmp_path):
        out = tmp_path / "grids"
        assert main(["surface", "--out-dir", str(out), "--step", "70", "--format", "csv",
                     "--d-touch", "10"]) == 0
        body = (out / "grid_dtouch_10.csv").read_text().splitlines()
        # A 70 m step fits only x=5 into the 60 m span: one column of nodes.
        rows = [line.split(",") for line in body[1:]]
        assert {r[0] for r in rows} == {"5.0"}

    def test_rerun_byte_identical(self, tmp_path):
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        for out in (out_a, out_b):
            assert main(["surface", "--out-dir", str(out), "--step", "15",
                         "--d-touch", "20"]) == 0
        for name in ("grid_dtouch_20.json", "grid_dtouch_20.csv"):
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


class TestRegretCommand:
    def test_published_audit(self, decisions_file, tmp_path, capsys):
        out = tmp_path / "report.csv"
        code = main(["regret", "--decisions", str(decisions_file), "--out", str(out)])
        assert code == 0
        text = out.read_text()
        assert "TOTAL_REGRET,,,,,1.39" in text
        assert "PROPORTION_OPTIMAL,,,,,0.46" in text
        stdout = capsys.readouterr().out
        assert "total regret 1.39" in stdout
        assert "proportion optimal 0.46" in stdout

    def test_report_reingests(self, decisions_file, tmp_path):
        out = tmp_path / "report.csv"
        main(["regret", "--decisions", str(decisions_file), "--out", str(out)])
        rows = read_decisions_csv(out.read_text())
        report = regret_report(rows)
        assert report.total_regret == pytest.approx(1.39, abs=1e-9)

    def test_missing_file_usage_error(self, tmp_path):
        assert main(["regret", "--decisions", str(tmp_path / "nope.csv")]) == 1

    def test_explorer_export_round_trips(self, tmp_path, capsys):
        # Byte-for-byte what the explorer's ledger export produces
        # (JavaScript number formatting: no trailing zeros).
        exported = (
            "team,ep_lineout,ep_kick,chosen\n"
            "NZ,1.79,1.85,kick\n"
            "NZ,2.26,1.93,lineout\n"
            "SA,1.56,1.87,lineout\n"
            "SA,2.67,2.42,kick\n"
            "SA,1.91,1.66,kick\n"
            "SA,1.5,1.6,lineout\n"
            "NZ,2.73,2.64,kick\n"
            "SA,2.08,2.07,lineout\n"
            "NZ,2.96,2.39,lineout\n"
            "NZ,2.96,2.53,lineout\n"
            "SA,2.39,2.61,lineout\n"
            "SA,1.14,1.31,lineout\n"
            "SA,2.9,2.84,lineout\n"
        )
        src = tmp_path / "ledger.csv"
        src.write_text(exported, encoding="utf-8")
        assert main(["regret", "--decisions", str(src)]) == 0
        out = capsys.readouterr().out
        assert "TOTAL_REGRET,,,,,1.39" in out
        assert "PROPORTION_OPTIMAL,,,,,0.46" in out


class TestBundleResolution:
    def test_env_var_default(self, tmp_path, monkeypatch, capsys):
        from ruck_ep.bundle import demo_bundle, save_bundle

        path = tmp_path / "env_bundle.json"
        save_bundle(demo_bundle(), path)
        monkeypatch.setenv("RUCK_EP_BUNDLE", str(path))
        assert main(["decide", "--x", "30", "--y", "-20", "--d-touch", "20"]) == 0
        out = capsys.readouterr().out
        assert demo_bundle().bundle_id in out

    def test_missing_bundle_file(self, tmp_path):
        assert main(["decide", "--bundle", str(tmp_path / "gone.json"),
                     "--x", "30", "--y", "0", "--d-touch", "5"]) == 2

    def test_fit_byte_identical_rebuild(self, tmp_path):
        outs = [tmp_path / "a.json", tmp_path / "b.json"]
        for out in outs:
            assert main(["fit", "--lineout", "builtin:premiership-2018-19",
                         "--kick", "builtin:demo", "--out", str(out)]) == 0
        assert outs[0].read_bytes() == outs[1].read_bytes()

    def test_saved_bundle_reloads_with_identical_predictions(self, tmp_path, bundle):
        from ruck_ep.bundle import load_bundle, save_bundle
        from ruck_ep.pitch import PitchPoint

        path = tmp_path / "bundle.json"
        save_bundle(bundle, path)
        back = load_bundle(path)
        assert back.bundle_id == bundle.bundle_id
        for pt in (PitchPoint(12, -8), PitchPoint(48, 22), PitchPoint(30, -20)):
            assert back.surface.p_make(pt) == bundle.surface.p_make(pt)


class TestExitCodes:
    def test_usage(self):
        assert main(["no-such-command"]) == 1

    def test_help_success(self):
        assert main(["--help"]) == 0

    def test_numeric_failure(self, tmp_path):
        # A constant-covariate possessions file makes the design singular.
        from ruck_ep.ingest import write_entries_csv
        from test_lineout import make_entry

        entries = [make_entry(i, 40.0, 0, 0.0, 3) for i in range(1, 61)]
        src = tmp_path / "possessions.csv"
        with open(src, "w", newline="", encoding="utf-8") as fh:
            write_entries_csv(entries, fh)
        code = main(["fit", "--lineout", str(src), "--kick", "builtin:demo",
                     "--out", str(tmp_path / "b.json")])
        assert code == 3
