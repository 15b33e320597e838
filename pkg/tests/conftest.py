"""Shared fixtures and the acceptance-criteria summary.

Tests marked ``@pytest.mark.acceptance(n, "title")`` are collected into a
per-criterion ledger; at the end of the run one PASS/FAIL line per criterion
is printed, together with the measured quantities each test recorded through
the ``measured`` fixture.
"""

from __future__ import annotations

from collections import defaultdict

import numpy as np
import pytest

_RESULTS: dict[int, dict] = defaultdict(lambda: {"title": "", "outcomes": [], "notes": []})


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion the test belongs to")
    config.addinivalue_line("markers", "slow: runs for more than a few seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        number, title = mark.args
        entry = _RESULTS[number]
        entry["title"] = title
        entry["outcomes"].append((item.name, rep.outcome))
        entry["notes"].extend(v for k, v in item.user_properties if k == "measured")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_RESULTS):
        entry = _RESULTS[number]
        ok = all(o == "passed" for _, o in entry["outcomes"])
        tr.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {entry['title']}")
        for name, o in entry["outcomes"]:
            if o != "passed":
                tr.write_line(f"              {o}: {name}")
        for note in entry["notes"]:
            tr.write_line(f"              {note}")


@pytest.fixture
def measured(request):
    """Attach a measured value to the acceptance summary line of this test."""

    def note(text: str) -> None:
        request.node.user_properties.append(("measured", text))

    return note


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
