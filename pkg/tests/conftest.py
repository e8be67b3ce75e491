from pathlib import Path

import pytest

from toric_poisson import polytope as P

DATA = Path(__file__).parent / "data"


def bundled_polytopes():
    return [
        P.centered_simplex(1),
        P.simplex(2),
        P.centered_simplex(3),
        P.square(),
        P.hirzebruch(1),
        P.hirzebruch(2),
    ]


@pytest.fixture
def data_dir():
    return DATA


# Acceptance criteria: one line per criterion in the terminal summary.

_ACCEPTANCE: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.fixture
def detail(request):
    """Mutable dict a criterion test fills with the numbers it measured."""
    marker = request.node.get_closest_marker("criterion")
    entry = _ACCEPTANCE.setdefault(marker.args[0], {"title": marker.args[1], "detail": {}})
    return entry["detail"]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    entry = _ACCEPTANCE.setdefault(marker.args[0], {"title": marker.args[1], "detail": {}})
    entry["passed"] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        entry = _ACCEPTANCE[number]
        verdict = "PASS" if entry.get("passed") else "FAIL"
        facts = ", ".join(f"{k}={v}" for k, v in entry["detail"].items())
        terminalreporter.write_line(f"[{verdict}] criterion {number:2d}: {entry['title']}" + (f" ({facts})" if facts else ""))
