from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from cdlat.constructions import build_double_diamond, extend_diamond, extend_qac
from cdlat.presentation import abelian, direct_product, heisenberg, trivial

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--heavy", action="store_true", default=False, help="run the d=10 full scan")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--heavy"):
        return
    skip = pytest.mark.skip(reason="needs --heavy")
    for item in items:
        if "heavy" in item.keywords:
            item.add_marker(skip)


def small_grid():
    """Presentations cheap enough for exhaustive scans in pure Python too."""
    h2 = heisenberg(2)
    return {
        "trivial2": trivial(2),
        "heis2": h2,
        "heis3": heisenberg(3),
        "heis5": heisenberg(5),
        "abelian2_2": abelian(2, 2),
        "heis2^2": direct_product(h2, h2),
        "heis3^2": direct_product(heisenberg(3), heisenberg(3)),
        "le_triv_1_2_p2": extend_diamond(trivial(2), 1, 2)[0],
        "le_triv_1_2_p3": extend_diamond(trivial(3), 1, 2)[0],
        "le_heis_1_2_p2": extend_diamond(h2, 1, 2)[0],
    }


def d8_grid():
    return {
        "dd_2_2": build_double_diamond(2, 2),
        "le_triv_2_2": extend_diamond(trivial(2), 2, 2),
        "qe_triv_2": extend_qac(trivial(2), 2),
    }


SMALL = small_grid()


@pytest.fixture(params=sorted(SMALL))
def grid_pres(request):
    return SMALL[request.param]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
