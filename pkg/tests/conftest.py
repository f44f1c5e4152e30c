import pytest

_RESULTS: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = dict(report.user_properties).get("criterion")
    if marker is None:
        return
    number, title = marker
    entry = _RESULTS.setdefault(number, {"title": title, "ok": True, "elapsed": 0.0})
    entry["ok"] &= report.passed
    entry["elapsed"] += report.duration


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", tuple(m.args)))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        r = _RESULTS[number]
        status = "PASS" if r["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {r['title']}  ({r['elapsed']:.2f} s)")
