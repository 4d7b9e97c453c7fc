import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from twistspin.codec import parse_pd, two_bridge  # noqa: E402

TREFOIL_PD = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"
FIGURE8_PD = "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]"
FIVE2_PD = "PD[X(1,4,2,5),X(3,8,4,9),X(5,10,6,1),X(9,6,10,7),X(7,2,8,3)]"
SIX1_PD = "PD[X(1,4,2,5),X(7,10,8,11),X(3,9,4,8),X(9,3,10,2),X(5,12,6,1),X(11,6,12,7)]"

PD_CORPUS = {"0_1": "PD[]", "3_1": TREFOIL_PD, "4_1": FIGURE8_PD, "5_2": FIVE2_PD, "6_1": SIX1_PD}
FRACTIONS = {"0_1": (1, 1), "3_1": (3, 1), "4_1": (5, 3), "5_2": (7, 3), "6_1": (9, 7)}
DETERMINANTS = {"0_1": 1, "3_1": 3, "4_1": 5, "5_2": 7, "6_1": 9}

TABLE_CSV = Path(__file__).parents[1] / "src" / "twistspin" / "data" / "knot_table.csv"


def corpus():
    """Every corpus knot, as (name, knot object), diagrams first."""
    out = [(name, parse_pd(text)) for name, text in PD_CORPUS.items()]
    out += [(name + "_tb", two_bridge(*pq)) for name, pq in FRACTIONS.items()]
    return out


@pytest.fixture(scope="session")
def trefoil():
    return parse_pd(TREFOIL_PD)


@pytest.fixture(scope="session")
def figure8():
    return parse_pd(FIGURE8_PD)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[key])
