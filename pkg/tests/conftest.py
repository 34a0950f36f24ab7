from __future__ import annotations

from importlib import resources

import pytest

from tiltree.formats import parse_algebra_file, parse_module_file
from tiltree.hrs import TStructureTower
from tiltree.quiveralg import certify_finite_gldim


def _bundled(name: str) -> str:
    return resources.files("tiltree").joinpath("data", name).read_text()


@pytest.fixture(scope="session")
def r6():
    alg = parse_algebra_file(_bundled("r6.alg"))
    certify_finite_gldim(alg)
    return alg


@pytest.fixture(scope="session")
def t6(r6):
    return parse_module_file(_bundled("t6.mod"), r6)


@pytest.fixture(scope="session")
def tower(t6):
    return TStructureTower(t6)


@pytest.fixture(scope="session")
def a2():
    alg = parse_algebra_file(_bundled("a2.alg"))
    certify_finite_gldim(alg)
    return alg


@pytest.fixture(scope="session")
def t_a2(a2):
    return parse_module_file(_bundled("a2_apr.mod"), a2)


@pytest.fixture(scope="session")
def tower_a2(t_a2):
    return TStructureTower(t_a2)


@pytest.fixture(scope="session")
def trees(tower, r6):
    """t-trees of the three non-static simples, built once per session."""
    from tiltree.modcat import simple
    from tiltree.ttree import build_ttree
    return {v: build_ttree(tower, simple(r6, r6.vertex(v))) for v in ("3", "4", "5")}


# acceptance criteria: one summary line per criterion, PASS only if every test carrying it passed
_CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, text): acceptance criterion k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and rep.passed):
        return
    k, text = mark.args
    entry = _CRITERIA.setdefault(k, [text, True])
    if not rep.passed:
        entry[1] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        text, ok = _CRITERIA[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {text}")
