"""Expected-points decision engine for rugby union penalties.

Quantifies the value of kicking at goal versus kicking to touch for a
lineout at any field position and game context, and recommends the option
with the higher expected return.
"""

from .builtins import (
    CASE_STUDY_POINT,
    PREMIERSHIP_2018_19,
    RESTART_OVERALL_AVERAGE,
    RESTART_ZONES_2018_19,
    demo_kick_surface,
)
from .bundle import ModelBundle, demo_bundle, load_bundle, make_bundle, save_bundle
from .decision import (
    DecisionGrid,
    DecisionQuery,
    DecisionResult,
    RegretReport,
    RegretRow,
    SweepResult,
    decision_grid,
    evaluate,
    frontier,
    regret_report,
    sweep_dtouch,
)
from .ingest import (
    DEFAULT_ZONE_MAP,
    PhaseRecord,
    PossessionEntry,
    ZoneMap,
    assign_run_ids,
    derive_entries,
    parse_phase_csv,
    sample_one_per_run,
)
from .kick import (
    KickGridCell,
    KickSuccessSurface,
    RestartValueTable,
    ep_kick,
    fit_kick_surface,
    restart_values_from_phases,
)
from .lineout import GameContext, LineoutCoefficients, ep_lineout, fit_lineout_model
from .pitch import (
    KickGeometry,
    PitchPoint,
    from_left_touchline,
    grid_cell_center,
    to_kick_geometry,
    touch_translation,
)

__version__ = "0.1.0"

__all__ = [
    "CASE_STUDY_POINT",
    "PREMIERSHIP_2018_19",
    "RESTART_OVERALL_AVERAGE",
    "RESTART_ZONES_2018_19",
    "demo_kick_surface",
    "ModelBundle",
    "demo_bundle",
    "load_bundle",
    "make_bundle",
    "save_bundle",
    "DecisionGrid",
    "DecisionQuery",
    "DecisionResult",
    "RegretReport",
    "RegretRow",
    "SweepResult",
    "decision_grid",
    "evaluate",
    "frontier",
    "regret_report",
    "sweep_dtouch",
    "DEFAULT_ZONE_MAP",
    "PhaseRecord",
    "PossessionEntry",
    "ZoneMap",
    "assign_run_ids",
    "derive_entries",
    "parse_phase_csv",
    "sample_one_per_run",
    "KickGridCell",
    "KickSuccessSurface",
    "RestartValueTable",
    "ep_kick",
    "fit_kick_surface",
    "restart_values_from_phases",
    "GameContext",
    "LineoutCoefficients",
    "ep_lineout",
    "fit_lineout_model",
    "KickGeometry",
    "PitchPoint",
    "from_left_touchline",
    "grid_cell_center",
    "to_kick_geometry",
    "touch_translation",
    "__version__",
]
