import pytest

_acceptance = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.path.name != "test_acceptance.py":
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        doc = (item.obj.__doc__ or item.name).strip().splitlines()[0]
        _acceptance.append((doc, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for doc, outcome in _acceptance:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {doc}")
