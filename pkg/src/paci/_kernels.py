"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The active backend is chosen once at import time from the ``PACI_NUMBA``
environment variable ("0"/"false"/"off" selects the numpy path).  Both
implementations keep the same summation order so results agree to within
floating-point noise; ``benchmarks/bench_kernels.py`` compares them.
"""

from __future__ import annotations

import math
import os

import numpy as np

_FLAG = os.environ.get("PACI_NUMBA", "1").strip().lower()
NUMBA_REQUESTED = _FLAG not in ("0", "false", "off", "no")

try:  # pragma: no cover - exercised via env-flag test matrix
    if not NUMBA_REQUESTED:
        raise ImportError("numba disabled by PACI_NUMBA")
    from numba import njit

    NUMBA_ACTIVE = True
except ImportError:  # pragma: no cover
    NUMBA_ACTIVE = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


# ---------------------------------------------------------------------------
# numpy reference implementations
# ---------------------------------------------------------------------------

def rolling_sum_np(a: np.ndarray, window: int) -> np.ndarray:
    """Sliding-window sums; entry i covers a[i-window+1 .. i], NaN during warm-up."""
    out = np.full(a.shape[0], np.nan)
    if a.shape[0] >= window:
        c = np.concatenate(([0.0], np.cumsum(a, dtype=np.float64)))
        out[window - 1:] = c[window:] - c[:-window]
    return out


def growth_ratio_series_np(cases: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Seven-day geometric mean of week-over-week sum ratios.

    Returns (values, zero_activity) where zero_activity marks days whose
    window contained a zero denominator; those days carry the fallback 1.0.
    Valid from index 13 onward; earlier entries are NaN.
    """
    n = cases.shape[0]
    s = rolling_sum_np(cases.astype(np.float64), 7)
    values = np.full(n, np.nan)
    flagged = np.zeros(n, dtype=np.bool_)
    for t in range(13, n):
        log_acc = 0.0
        zero_den = False
        zero_num = False
        for u in range(t - 6, t + 1):
            num = s[u]
            den = s[u - 1]
            if den == 0.0:
                zero_den = True
                break
            if num == 0.0:
                zero_num = True
            else:
                log_acc += math.log(num / den)
        if zero_den:
            values[t] = 1.0
            flagged[t] = True
        elif zero_num:
            values[t] = 0.0
        else:
            values[t] = math.exp(log_acc / 7.0)
    return values, flagged


def lethality_series_np(deaths: np.ndarray, cases: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Fourteen-day mean of 100*deaths(u)/cases(u-14), skipping zero-case lags.

    Days with cases(u-14) == 0 are dropped and the mean renormalised over the
    kept days; a fully skipped window yields 0.0 and a flag.  Valid from
    index 27 onward.
    """
    n = deaths.shape[0]
    values = np.full(n, np.nan)
    flagged = np.zeros(n, dtype=np.bool_)
    for t in range(27, n):
        acc = 0.0
        kept = 0
        for u in range(t - 13, t + 1):
            base = cases[u - 14]
            if base > 0:
                acc += 100.0 * deaths[u] / base
                kept += 1
        if kept == 0:
            values[t] = 0.0
            flagged[t] = True
        else:
            values[t] = acc / kept
    return values, flagged


def box_simplex_optimize_np(
    coeffs: np.ndarray, lower: np.ndarray, upper: np.ndarray, maximize: bool
) -> tuple[np.ndarray, np.ndarray]:
    """Optimize sum(w*c) over box-bounded weights summing to one, per row.

    Greedy closed form: start every weight at its lower bound and pour the
    residual mass into coordinates in order of favourable coefficient.
    ``coeffs`` is (days, k); returns (objectives, argopt weights (days, k)).
    """
    days, k = coeffs.shape
    residual = 1.0 - lower.sum()
    span = upper - lower
    objectives = np.empty(days)
    weights = np.empty((days, k))
    order = np.argsort(-coeffs if maximize else coeffs, axis=1, kind="stable")
    for d in range(days):
        w = lower.copy()
        rem = residual
        for j in order[d]:
            if rem <= 0.0:
                break
            take = span[j] if span[j] < rem else rem
            w[j] += take
            rem -= take
        acc = 0.0
        for j in range(k):
            acc += w[j] * coeffs[d, j]
        objectives[d] = acc
        weights[d] = w
    return objectives, weights


def trajectories_np(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Indicator trajectories: (samples, k) weights against (days, k) values."""
    samples = weights.shape[0]
    days = values.shape[0]
    out = np.empty((samples, days))
    for s in range(samples):
        for d in range(days):
            acc = 0.0
            for j in range(values.shape[1]):
                acc += weights[s, j] * values[d, j]
            out[s, d] = acc
    return out


# ---------------------------------------------------------------------------
# numba versions (same arithmetic, jitted)
# ---------------------------------------------------------------------------

if NUMBA_ACTIVE:

    @njit(cache=True)
    def _rolling_sum_nb(a, window):
        n = a.shape[0]
        out = np.full(n, np.nan)
        if n >= window:
            acc = 0.0
            for i in range(window):
                acc += a[i]
            out[window - 1] = acc
            for i in range(window, n):
                acc += a[i] - a[i - window]
                out[i] = acc
        return out

    @njit(cache=True)
    def _growth_ratio_series_nb(cases):
        n = cases.shape[0]
        s = np.full(n, np.nan)
        if n >= 7:
            acc = 0.0
            for i in range(7):
                acc += cases[i]
            s[6] = acc
            for i in range(7, n):
                acc += cases[i] - cases[i - 7]
                s[i] = acc
        values = np.full(n, np.nan)
        flagged = np.zeros(n, dtype=np.bool_)
        for t in range(13, n):
            log_acc = 0.0
            zero_den = False
            zero_num = False
            for u in range(t - 6, t + 1):
                num = s[u]
                den = s[u - 1]
                if den == 0.0:
                    zero_den = True
                    break
                if num == 0.0:
                    zero_num = True
                else:
                    log_acc += math.log(num / den)
            if zero_den:
                values[t] = 1.0
                flagged[t] = True
            elif zero_num:
                values[t] = 0.0
            else:
                values[t] = math.exp(log_acc / 7.0)
        return values, flagged

    @njit(cache=True)
    def _lethality_series_nb(deaths, cases):
        n = deaths.shape[0]
        values = np.full(n, np.nan)
        flagged = np.zeros(n, dtype=np.bool_)
        for t in range(27, n):
            acc = 0.0
            kept = 0
            for u in range(t - 13, t + 1):
                base = cases[u - 14]
                if base > 0:
                    acc += 100.0 * deaths[u] / base
                    kept += 1
            if kept == 0:
                values[t] = 0.0
                flagged[t] = True
            else:
                values[t] = acc / kept
        return values, flagged

    @njit(cache=True)
    def _box_simplex_optimize_nb(coeffs, lower, upper, maximize):
        days, k = coeffs.shape
        residual = 1.0 - lower.sum()
        span = upper - lower
        objectives = np.empty(days)
        weights = np.empty((days, k))
        sign = -1.0 if maximize else 1.0
        for d in range(days):
            order = np.argsort(sign * coeffs[d], kind="mergesort")
            w = lower.copy()
            rem = residual
            for idx in range(k):
                if rem <= 0.0:
                    break
                j = order[idx]
                take = span[j] if span[j] < rem else rem
                w[j] += take
                rem -= take
            acc = 0.0
            for j in range(k):
                acc += w[j] * coeffs[d, j]
            objectives[d] = acc
            weights[d] = w
        return objectives, weights

    @njit(cache=True)
    def _trajectories_nb(values, weights):
        samples = weights.shape[0]
        days = values.shape[0]
        out = np.empty((samples, days))
        for s in range(samples):
            for d in range(days):
                acc = 0.0
                for j in range(values.shape[1]):
                    acc += weights[s, j] * values[d, j]
                out[s, d] = acc
        return out

    def rolling_sum_nb(a, window):
        return _rolling_sum_nb(np.ascontiguousarray(a, dtype=np.float64), window)

    def growth_ratio_series_nb(cases):
        return _growth_ratio_series_nb(np.ascontiguousarray(cases, dtype=np.float64))

    def lethality_series_nb(deaths, cases):
        return _lethality_series_nb(
            np.ascontiguousarray(deaths, dtype=np.float64),
            np.ascontiguousarray(cases, dtype=np.float64),
        )

    def box_simplex_optimize_nb(coeffs, lower, upper, maximize):
        return _box_simplex_optimize_nb(
            np.ascontiguousarray(coeffs, dtype=np.float64),
            np.ascontiguousarray(lower, dtype=np.float64),
            np.ascontiguousarray(upper, dtype=np.float64),
            maximize,
        )

    def trajectories_nb(values, weights):
        return _trajectories_nb(
            np.ascontiguousarray(values, dtype=np.float64),
            np.ascontiguousarray(weights, dtype=np.float64),
        )

    rolling_sum = rolling_sum_nb
    growth_ratio_series = growth_ratio_series_nb
    lethality_series = lethality_series_nb
    box_simplex_optimize = box_simplex_optimize_nb
    trajectories = trajectories_nb
else:
    rolling_sum = rolling_sum_np
    growth_ratio_series = growth_ratio_series_np
    lethality_series = lethality_series_np
    box_simplex_optimize = box_simplex_optimize_np
    trajectories = trajectories_np


def backend() -> str:
    """Name of the active kernel backend ("numba" or "numpy")."""
    return "numba" if NUMBA_ACTIVE else "numpy"
