from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ruck_ep.errors import DomainError
from ruck_ep.pitch import (
    PitchPoint,
    from_left_touchline,
    grid_cell_center,
    to_kick_geometry,
    touch_translation,
)


class TestPitchPoint:
    def test_bounds_enforced(self):
        PitchPoint(0, -35)
        PitchPoint(100, 35)
        with pytest.raises(DomainError):
            PitchPoint(-0.1, 0)
        with pytest.raises(DomainError):
            PitchPoint(100.1, 0)
        with pytest.raises(DomainError):
            PitchPoint(50, 35.1)


class TestKickGeometry:
    def test_straight_in_front(self):
        g = to_kick_geometry(PitchPoint(5, 0))
        assert g.d == 5
        assert g.theta == 0

    def test_diagonal_symmetry(self):
        g = to_kick_geometry(PitchPoint(10, 10))
        assert g.d == pytest.approx(14.1421, abs=1e-4)
        assert g.theta == pytest.approx(math.pi / 4)

    def test_case_study_location(self):
        # Independent calculator: hypot(30, 20), atan(20/30).
        g = to_kick_geometry(PitchPoint(30, -20))
        assert g.d == pytest.approx(36.05551275463989, abs=1e-10)
        assert g.theta == pytest.approx(0.5880026035475675, abs=1e-10)

    def test_try_line_degenerate(self):
        with pytest.raises(DomainError):
            to_kick_geometry(PitchPoint(0, 10))

    @given(
        x=st.floats(0.1, 100),
        y=st.floats(-35, 35),
    )
    def test_mirror_symmetry_and_d_bound(self, x, y):
        a = to_kick_geometry(PitchPoint(x, y))
        b = to_kick_geometry(PitchPoint(x, -y))
        assert a.d == b.d
        assert a.theta == b.theta
        assert a.d >= x
        if y == 0:
            assert a.d == x
        elif abs(y) > 1e-6:
            assert a.d > x
        assert 0 <= a.theta < math.pi / 2


class TestTouchTranslation:
    def test_case_study(self):
        assert touch_translation(30, 20) == 10

    def test_truncation_floor(self):
        assert touch_translation(10, 25) == 5

    def test_identity(self):
        assert touch_translation(60, 0) == 60

    @given(x=st.floats(0, 100), d=st.floats(0, 120))
    def test_formula_and_floor(self, x, d):
        out = touch_translation(x, d)
        assert out == max(5.0, x - d)
        assert out >= 5.0

    @given(x=st.floats(0, 100), d1=st.floats(0, 60), d2=st.floats(0, 60))
    def test_monotone_in_d_touch(self, x, d1, d2):
        lo, hi = sorted([d1, d2])
        assert touch_translation(x, hi) <= touch_translation(x, lo)

    def test_rejects_bad_inputs(self):
        with pytest.raises(DomainError):
            touch_translation(101, 0)
        with pytest.raises(DomainError):
            touch_translation(50, -1)


class TestTouchlineConversion:
    @pytest.mark.parametrize("dist,expected", [(15, -20), (35, 0), (70, 35)])
    def test_examples(self, dist, expected):
        assert from_left_touchline(dist) == expected

    @given(y=st.floats(-35, 35))
    def test_round_trip(self, y):
        assert from_left_touchline(y + 35) == pytest.approx(y, abs=1e-12)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            from_left_touchline(-0.5)
        with pytest.raises(DomainError):
            from_left_touchline(70.5)


class TestGridCellCenter:
    def test_first_cell(self):
        assert grid_cell_center(0, 0) == PitchPoint(2.5, -32.5)

    def test_mid_cell(self):
        # Band [25, 30) is row 5; band [30, 35) from the touchline is col 6.
        assert grid_cell_center(5, 6) == PitchPoint(27.5, -2.5)

    def test_last_cell(self):
        assert grid_cell_center(12, 13) == PitchPoint(62.5, 32.5)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            grid_cell_center(13, 0)
        with pytest.raises(DomainError):
            grid_cell_center(0, 14)
        with pytest.raises(DomainError):
            grid_cell_center(-1, 0)
