from __future__ import annotations

import textwrap

import pytest

from ruck_ep.bundle import demo_bundle

# Raw phase-log fixture shaped like the published processed-data excerpt:
# seven lineout-opening possessions from one match (expected run ids
# 1,2,3,3,4,5,6), a later three-in-a-row block under the same score and
# outcome (one run id, n_same 3), plus non-lineout and later-phase rows
# that ingestion must drop.
PHASES_CSV = textwrap.dedent(
    """\
    ID,Round,Home,Away,Phase,Team_In_Poss,Points_Difference,Sec_Remain_Half,Card_Diff,WinPct_Diff,Zone,Event_Type,Points
    7,1,Harlequins,Sale,1,Home,0,2320,0,0,zone-3,scrum,3
    8,1,Harlequins,Sale,1,Home,0,2302,0,0,zone-2,lineout,3
    9,1,Harlequins,Sale,2,Home,0,2290,0,0,zone-2,ruck,3
    10,1,Harlequins,Sale,1,Home,3,2166,0,0,zone-3,lineout,-3
    14,1,Harlequins,Sale,1,Away,-3,2103,0,0,zone-1,lineout,3
    17,1,Harlequins,Sale,1,Away,-3,2043,0,0,zone-2,lineout,3
    53,1,Harlequins,Sale,1,Home,0,1313,0,0,zone-4,lineout,7
    56,1,Harlequins,Sale,1,Away,0,1188,0,0,zone-6,lineout,-7
    67,1,Harlequins,Sale,1,Away,-7,926,0,0,zone-2,lineout,7
    19,1,Harlequins,Sale,1,Home,21,454,0,0,zone-5,lineout,7
    20,1,Harlequins,Sale,1,Home,21,378,0,0,zone-1,lineout,7
    21,1,Harlequins,Sale,1,Home,21,146,0,0,zone-1,lineout,7
    """
)

# The published case-study audit: 13 penalty decisions. The row with EPs
# (2.39, 2.61) appears transposed in the source table; the regret and
# optimal-call columns printed there pin the orientation used here.
TABLE8_ROWS = [
    ("NZ", 1.79, 1.85, "kick"),
    ("NZ", 2.26, 1.93, "lineout"),
    ("SA", 1.56, 1.87, "lineout"),
    ("SA", 2.67, 2.42, "kick"),
    ("SA", 1.91, 1.66, "kick"),
    ("SA", 1.50, 1.60, "lineout"),
    ("NZ", 2.73, 2.64, "kick"),
    ("SA", 2.08, 2.07, "lineout"),
    ("NZ", 2.96, 2.39, "lineout"),
    ("NZ", 2.96, 2.53, "lineout"),
    ("SA", 2.39, 2.61, "lineout"),
    ("SA", 1.14, 1.31, "lineout"),
    ("SA", 2.90, 2.84, "lineout"),
]
TABLE8_EXPECTED_REGRETS = [
    0.00, 0.00, 0.31, 0.25, 0.25, 0.10, 0.09, 0.00, 0.00, 0.00, 0.22, 0.17, 0.00,
]


@pytest.fixture(scope="session")
def bundle():
    return demo_bundle()


@pytest.fixture()
def phases_csv() -> str:
    return PHASES_CSV


@pytest.fixture()
def table8_rows():
    return list(TABLE8_ROWS)
