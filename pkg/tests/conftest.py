import pytest

from qdsym.harness import RunManifest, run

_CRITERIA: list[tuple[str, str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and rep.when == "call":
        number, text = marker.args
        _CRITERIA.append((number, text, "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, verdict in sorted(_CRITERIA, key=lambda c: c[0]):
        terminalreporter.write_line(f"{verdict} criterion {number}: {text}")


@pytest.fixture(scope="session")
def default_reports():
    return run(RunManifest())
