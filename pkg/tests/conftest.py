import os
import time

import pytest

from cellres.algebra import Ring

DATA = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")
REF = os.path.join(os.path.dirname(os.path.abspath(__file__)), "reference")

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    out = yield
    rep = out.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, text = mark.args
    state = _criteria.setdefault(num, {"text": text, "ok": True, "secs": 0.0, "failed": []})
    if rep.when == "call":
        state["secs"] += rep.duration
    if rep.failed:
        state["ok"] = False
        state["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        s = _criteria[num]
        line = "AC%-2d %s  %-62s %.2fs" % (num, "PASS" if s["ok"] else "FAIL", s["text"], s["secs"])
        if s["failed"]:
            line += "  failing: " + ", ".join(s["failed"])
        terminalreporter.write_line(line)


@pytest.fixture
def R4():
    return Ring("abcd")


@pytest.fixture
def R3():
    return Ring("xyz")


@pytest.fixture
def R2():
    return Ring("xy")


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *a):
        self.secs = time.perf_counter() - self.t
        assert self.secs < self.limit, "took %.1fs, limit %ss" % (self.secs, self.limit)
