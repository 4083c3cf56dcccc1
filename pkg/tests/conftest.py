import pytest

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number and summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, text = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _criteria[n] = (text, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    from jetcalc.invariants import SANDWICH_LOG

    if _criteria:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_criteria):
            text, verdict = _criteria[n]
            terminalreporter.write_line(f"criterion {n:2d}: {verdict}  {text}")
    terminalreporter.write_line(
        f"dimension sandwich: {SANDWICH_LOG['checks']} checks, {SANDWICH_LOG['violations']} violations")
