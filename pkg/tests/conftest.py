import itertools

import numpy as np
import pytest

from bytepremium.tags import LanguageTag

_results = {}
_titles = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", m.args[0]))
            if len(m.args) > 1:
                _titles[m.args[0]] = m.args[1]


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        prev = _results.get(crit)
        if prev in (None, "PASS") or status == "FAIL":
            _results[crit] = status


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_results):
        title = f" ({_titles[crit]})" if crit in _titles else ""
        terminalreporter.write_line(f"criterion {crit}: {_results[crit]}{title}")


def synthetic_tags(n, script="latn"):
    names = ("".join(p) for p in itertools.product("abcdefghijklmnopqrstuvwxyz", repeat=3))
    return [LanguageTag(name, script) for name in itertools.islice(names, n)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
