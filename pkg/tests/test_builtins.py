from __future__ import annotations

from importlib import resources

import pytest

from ruck_ep.builtins import (
    CASE_STUDY_P_MAKE,
    CASE_STUDY_POINT,
    PREMIERSHIP_2018_19,
    RESTART_OVERALL_AVERAGE,
    RESTART_ZONES_2018_19,
    demo_kick_grid_cells,
    demo_kick_surface,
)
from ruck_ep.bundle import demo_bundle, load_bundle
from ruck_ep.errors import BundleError
from ruck_ep.kick import read_kick_grid_csv


class TestPublishedConstants:
    def test_lineout_coefficients(self):
        b = PREMIERSHIP_2018_19
        assert (b.beta0, b.beta1, b.beta2, b.beta3) == (3.2545, -0.0586, 0.8802, 0.6503)
        assert b.std_errors == (0.2093, 0.0044, 0.3052, 0.3430)

    def test_restart_tables(self):
        assert len(RESTART_ZONES_2018_19.zones) == 4
        assert RESTART_OVERALL_AVERAGE.zones == ()
        assert RESTART_OVERALL_AVERAGE.fallback == 0.76


class TestDemoGrid:
    def test_shipped_csv_matches_generator(self):
        shipped = (
            resources.files("ruck_ep").joinpath("data/demo_kick_grid.csv").read_text()
        )
        assert read_kick_grid_csv(shipped) == demo_kick_grid_cells()

    def test_full_sampling_frame(self):
        cells = demo_kick_grid_cells()
        assert len(cells) == 182
        assert all(0 <= c.proportion <= 1 for c in cells)


class TestDemoSurface:
    def test_calibrated_exactly_at_case_point(self):
        surface = demo_kick_surface()
        assert surface.p_make(CASE_STUDY_POINT) == pytest.approx(CASE_STUDY_P_MAKE, abs=1e-12)

    def test_cached(self):
        assert demo_kick_surface() is demo_kick_surface()


class TestDemoBundle:
    def test_components(self):
        b = demo_bundle()
        assert b.lineout is PREMIERSHIP_2018_19
        assert b.restarts is RESTART_OVERALL_AVERAGE
        assert b.bundle_id.startswith("demo-")

    def test_builtin_resolution(self):
        assert load_bundle("builtin:demo") is demo_bundle()
        with pytest.raises(BundleError):
            load_bundle("builtin:nope")

    def test_malformed_bundle_files_rejected(self, tmp_path):
        bad_json = tmp_path / "bad.json"
        bad_json.write_text("{not json", encoding="utf-8")
        with pytest.raises(BundleError):
            load_bundle(bad_json)
        incomplete = tmp_path / "incomplete.json"
        incomplete.write_text('{"schema_version": 1, "lineout": {}}', encoding="utf-8")
        with pytest.raises(BundleError) as err:
            load_bundle(incomplete)
        assert "kick_surface" in str(err.value)
        wrong_version = tmp_path / "version.json"
        wrong_version.write_text('{"schema_version": 99}', encoding="utf-8")
        with pytest.raises(BundleError):
            load_bundle(wrong_version)
