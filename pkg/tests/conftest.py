import pytest

from coxsep.presentation import CoxeterPresentation

_criteria = {}


@pytest.fixture(scope="session")
def g4():
    return CoxeterPresentation.uniform(3, 4)


@pytest.fixture(scope="session")
def g6():
    return CoxeterPresentation.uniform(3, 6)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        ok = report.passed and not report.skipped
        prev = _criteria.get(n)
        _criteria[n] = (title, ok if prev is None else prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, ok = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
