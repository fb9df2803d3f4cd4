from fractions import Fraction
from pathlib import Path

import pytest

from heptax.bands import CyclicHeptaBands

DATA = Path(__file__).parent / "data"

# 10x10 cyclic example with solution 1..10.  Rows 7 and 9 are the ones whose
# printed form carries a stray entry; the values below are the ones consistent
# with the right-hand side and with the bordered blocks M1, M2, U^T, V.
WORKED_MATRIX = [
    [1, -1, 1, -2, 0, 0, 0, 0, 2, -1],
    [1, 1, 1, 1, -1, 0, 0, 0, 0, 1],
    [2, 1, -1, 1, 2, 3, 0, 0, 0, 0],
    [2, -2, 3, 1, 5, -6, 0, 0, 0, 0],
    [0, 1, 1, 1, 1, 1, 1, 2, 0, 0],
    [0, 0, -1, -1, -1, -1, -1, -1, 1, 0],
    [0, 0, 0, 2, 2, 2, 2, 3, 1, -3],
    [0, 0, 0, 0, -2, -2, 1, 1, 3, 5],
    [3, 0, 0, 0, 0, 3, 1, 3, 4, -1],
    [2, 4, 0, 0, 0, 0, 2, 3, 4, 1],
]
WORKED_RHS = [2, 15, 33, 0, 43, -24, 47, 70, 78, 94]


def frac_vec(values):
    return [Fraction(v) for v in values]


def frac_mat(rows):
    return [frac_vec(r) for r in rows]


@pytest.fixture
def worked_dense():
    return frac_mat(WORKED_MATRIX)


@pytest.fixture
def worked_system():
    return CyclicHeptaBands.from_dense(frac_mat(WORKED_MATRIX)), frac_vec(WORKED_RHS)


@pytest.fixture
def worked_file():
    return DATA / "cyclic10.json"


# order 8, M1 singular while H is not: the substituted t must cancel in the
# bordered solve.  Solution 1..8, det -128.
SINGULAR_M1_BANDS = {
    "d": [-1, -1, -1, 1, 2, -2, 2, -2],
    "a": [0, 2, 2, 2, 1, -2, 2, -2],
    "A": [-1, -1, 0, -2, -2, 2, 1, 2],
    "C": [-2, -2, 1, 0, 2, 0, 0, 0],
    "b": [-1, 0, 1, 2, 2, 1, 2, -1],
    "B": [2, 0, 2, -1, 1, -1, 1, -2],
    "D": [0, 0, 0, -2, -1, 1, -2, -1],
}
SINGULAR_M1_RHS = [-6, -10, 15, 4, 27, -6, 40, -38]


def rank_deficient_cyclic(n=10, seed=0):
    """Dominant cyclic system with row 6 overwritten by row 5 (shared support)."""
    from heptax.oracle import GenSpec, generate
    from heptax.bands import to_dense

    h, r = generate(GenSpec(n=n, seed=seed))
    dense = to_dense(h)
    src, dst = 4, 5
    dense[dst] = [dense[src][j] if 2 <= j <= 7 else Fraction(0) for j in range(n)]
    dense[src] = list(dense[dst])
    return CyclicHeptaBands.from_dense(dense), r


@pytest.fixture
def singular_m1_system():
    bands = {k: frac_vec(v) for k, v in SINGULAR_M1_BANDS.items()}
    return CyclicHeptaBands(**bands), frac_vec(SINGULAR_M1_RHS)


# -- acceptance summary --------------------------------------------------------

_acceptance_key = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_acceptance_key] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = dict(item.user_properties).get("detail", "")
        item.config.stash[_acceptance_key].append(
            (marker.args[0], marker.args[1], report.outcome, detail)
        )


def pytest_terminal_summary(terminalreporter, config):
    rows = config.stash.get(_acceptance_key, [])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome, detail in sorted(rows):
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"[{status}] {number}. {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
