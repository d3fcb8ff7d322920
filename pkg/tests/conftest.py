import pytest

_ACCEPTANCE = {}


@pytest.fixture
def acceptance(request):
    """Record one acceptance criterion; the verdict follows the test outcome."""
    def record(number, title, detail=""):
        _ACCEPTANCE[number] = {"title": title, "detail": detail, "nodeid": request.node.nodeid}
    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        for entry in _ACCEPTANCE.values():
            if entry["nodeid"] == item.nodeid:
                entry["passed"] = rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        e = _ACCEPTANCE[number]
        verdict = "PASS" if e.get("passed") else "FAIL"
        terminalreporter.write_line(f"[{verdict}] {number:2d} {e['title']}  {e['detail']}")
