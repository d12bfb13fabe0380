"""Shared fixtures: published golden rows and synthetic series.

Also hosts the acceptance reporter: every test in test_acceptance.py is
echoed as one PASS/FAIL line in the terminal summary.
"""

from __future__ import annotations

from datetime import date

import numpy as np
import pytest

from paci.series import RawSeries

ACCEPTANCE_TITLES = {
    "c01": "Table 3 reproduction (overall & contributions, <1s)",
    "c02": "DCM golden values (alpha, pairwise table, breakpoints)",
    "c03": "weight derivation from the swing ranking",
    "c04": "reference-profile calibration",
    "c05": "quadratic approximation distance band",
    "c06": "LP oracle equivalence (10k instances, <30s)",
    "c07": "envelope sandwich / monotone spread / MC containment",
    "c08": "counterfactual identity & dominance",
    "c09": "value-function structural suite",
    "c10": "simulation determinism (seed 42, 1000 samples)",
}

KNOWN_RED = {
    "c02": "pinned value 140 contradicts the criterion's own +1 recurrence (engine: 144)",
    "c05": "published 6.40389e-4 unreachable under any quadrature convention",
}

_acceptance_results: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    for tag in ACCEPTANCE_TITLES:
        if f"_{tag}_" in report.nodeid:
            _acceptance_results[tag] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for tag in sorted(ACCEPTANCE_TITLES):
        if tag not in _acceptance_results:
            continue
        status = _acceptance_results[tag]
        line = f"[{status}] {tag}: {ACCEPTANCE_TITLES[tag]}"
        if status == "FAIL" and tag in KNOWN_RED:
            line += f"  (expected red: {KNOWN_RED[tag]})"
        terminalreporter.write_line(line)

# Performance rows for five pandemic moments and the values/overall they
# must reproduce (per-criterion values, overall score).
TABLE2_DATES = ("2020-03-20", "2020-07-31", "2020-12-24", "2021-01-24", "2021-07-10")
TABLE2 = np.array([
    [194, 1.301, 4.160, 128, 41],
    [197, 0.978, 1.140, 340, 41],
    [3574, 0.987, 2.180, 2348, 505],
    [12341, 1.039, 3.460, 5375, 742],
    [3658, 1.042, 0.382, 488, 144],
], dtype=np.float64)
TABLE3_VALUES = np.array([
    [3.441, 180.00, 115.571, 1.0240, 4.300],
    [3.503, 60.900, 31.6990, 2.7200, 4.300],
    [180.0, 76.702, 60.5640, 89.056, 180.0],
    [180.0, 180.00, 96.1120, 180.00, 180.0],
    [180.0, 180.00, 10.6240, 3.9040, 52.80],
], dtype=np.float64)
TABLE3_OVERALL = np.array([49.6800, 17.0400, 124.832, 163.810, 88.7700])

# Card judgements behind the incidence scale: levels, anchors, gaps,
# and the full pairwise table they imply.
INCIDENCE_LEVELS = (0.0, 225.0, 450.0, 675.0, 900.0, 1125.0, 1350.0, 1575.0)
INCIDENCE_GAPS = (0, 2, 4, 6, 8, 10, 13)
INCIDENCE_TABLE_ROWS = {
    0: (0, 3, 8, 15, 24, 35, 49),
    1: (2, 7, 14, 23, 34, 48),
    2: (4, 11, 20, 31, 45),
    3: (6, 15, 26, 40),
    4: (8, 19, 33),
    5: (10, 24),
    6: (13,),
}

SWING_TIERS = ((0,), (2, 3, 4), (1,))
SWING_GAPS = (2, 3)
SWING_Z = 2.0
SWING_WEIGHTS = (0.27451, 0.13725, 0.19608, 0.19608, 0.19608)


def _lag(arr: np.ndarray, k: int, fill: int) -> np.ndarray:
    out = np.empty_like(arr)
    out[:k] = fill
    out[k:] = arr[: len(arr) - k]
    return out


def make_synthetic_raw(days: int = 147, start: date = date(2021, 1, 1)) -> RawSeries:
    """Deterministic two-wave series; 147 raw days = 120 evaluable days."""
    t = np.arange(days, dtype=np.float64)
    cases = np.round(
        60.0
        + 1800.0 * np.exp(-(((t - 55.0) / 22.0) ** 2))
        + 900.0 * np.exp(-(((t - 118.0) / 16.0) ** 2))
    ).astype(np.int64)
    deaths = np.round(0.015 * _lag(cases, 14, 60)).astype(np.int64)
    wards = np.round(0.6 * _lag(cases, 7, 60)).astype(np.int64)
    icu = np.round(0.05 * _lag(cases, 10, 60)).astype(np.int64)
    return RawSeries.from_arrays(start, cases, deaths, wards, icu)


def make_constant_raw(days: int = 40, cases: int = 7, deaths: int = 0,
                      wards: int = 10, icu: int = 1,
                      start: date = date(2021, 1, 1)) -> RawSeries:
    n = np.full(days, cases, dtype=np.int64)
    return RawSeries.from_arrays(
        start, n, np.full(days, deaths, dtype=np.int64),
        np.full(days, wards, dtype=np.int64), np.full(days, icu, dtype=np.int64),
    )


@pytest.fixture(scope="session")
def synthetic_raw() -> RawSeries:
    return make_synthetic_raw()


@pytest.fixture(scope="session")
def constant_raw() -> RawSeries:
    return make_constant_raw()


@pytest.fixture()
def table2_matrix():
    from paci.series import CriteriaMatrix

    return CriteriaMatrix(
        dates=tuple(date.fromisoformat(d) for d in TABLE2_DATES),
        x=TABLE2.copy(),
    )
