"""Shared reference curves and the acceptance-criterion summary."""

import math
import warnings

import numpy as np
import pytest

from assoc_helix.position import (
    AngleRule, Axis, HelixParams, make_grid, spacelike_slant_helix, spacelike_type2_helix,
    timelike_helix,
)

H = 1e-3
SQRT3 = math.sqrt(3.0)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    results = item.config.stash.setdefault(_RESULTS, {})
    entry = results.setdefault(number, {"title": title, "ok": True, "notes": []})
    entry["ok"] &= rep.passed
    for key, value in item.user_properties:
        if key == "measured":
            entry["notes"].append(value)


_RESULTS = pytest.StashKey[dict]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        entry = results[number]
        verdict = "PASS" if entry["ok"] else "FAIL"
        notes = "; ".join(entry["notes"])
        terminalreporter.write_line(f"criterion {number} ({entry['title']}): {verdict}"
                                    + (f"  [{notes}]" if notes else ""))


@pytest.fixture(scope="session")
def fig1_params():
    """Timelike helix with spacelike axis, n = sqrt(3)/3 (m = 1/2)."""
    return HelixParams.from_n(SQRT3 / 3, AngleRule.SINH)


@pytest.fixture(scope="session")
def unit_grid():
    return make_grid((0.0, 1.0), H)


@pytest.fixture(scope="session")
def fig1_helix(fig1_params, unit_grid):
    return timelike_helix(6.0, fig1_params, unit_grid)


@pytest.fixture(scope="session")
def fig2_params():
    """n = 2 sqrt(3)/3, m = 2: the timelike-axis slant-helix representation."""
    return HelixParams.from_n(2 / SQRT3, AngleRule.COSH)


@pytest.fixture(scope="session")
def fig2_grid():
    return make_grid((-0.45, 0.45), H)


@pytest.fixture(scope="session")
def fig2_slant(fig2_params, fig2_grid):
    return spacelike_slant_helix(1.0, fig2_params, fig2_grid, Axis.TIMELIKE)


@pytest.fixture(scope="session")
def type2_helix(unit_grid):
    """Spacelike helix with timelike binormal and non-constant curvature."""
    params = HelixParams.from_n(2.0, AngleRule.COSH)
    return spacelike_type2_helix(lambda s: 2.0 + np.sin(s), params, unit_grid, Axis.SPACELIKE)


@pytest.fixture
def quiet():
    """Silence the construction warnings about rest points of beta."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        yield
