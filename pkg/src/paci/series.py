"""Raw epidemic series and the five criteria transforms.

Input is one row per calendar day with new cases, new deaths, ward
occupancy, and ICU occupancy.  The transforms produce the criteria
performances: seven-day mean incidence, seven-day geometric-mean growth
ratio of weekly case sums, fourteen-day mean lethality with a fourteen-day
death lag, and the two occupancy pass-throughs.  The slowest transform
needs 28 days of history, so the first evaluable day is index 27.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from datetime import date, timedelta

import numpy as np

from . import _kernels
from .errors import (
    InsufficientHistoryError,
    SchemaError,
    SeriesError,
    SeriesTooShortError,
)

RAW_HEADER = ("date", "new_cases", "new_deaths", "wards", "icu")
MATRIX_HEADER = ("date", "incid", "trans", "letha", "wards", "icu")

#: first evaluable day index: lethality averages 14 days, each looking
#: back 14 more (27 = 13 + 14)
WARMUP = 27

FLAG_ZERO_ACTIVITY = "zero-activity"
FLAG_LETHALITY_SKIPPED = "lethality-window-skipped"


@dataclass(frozen=True, eq=False)
class RawSeries:
    """Validated daily counts over a contiguous date range."""

    dates: tuple[date, ...]
    new_cases: np.ndarray
    new_deaths: np.ndarray
    wards: np.ndarray
    icu: np.ndarray

    def __post_init__(self):
        n = len(self.dates)
        if n == 0:
            raise SeriesError("empty series")
        for name in ("new_cases", "new_deaths", "wards", "icu"):
            arr = getattr(self, name)
            if arr.shape != (n,):
                raise SeriesError(f"{name} length {arr.shape} != {n} dates")
            if np.any(arr < 0):
                day = self.dates[int(np.argmax(arr < 0))]
                raise SeriesError(f"negative {name} on {day}", column=name, date=str(day))
        for a, b in zip(self.dates, self.dates[1:]):
            if b - a != timedelta(days=1):
                raise SeriesError(
                    f"dates must be consecutive: gap between {a} and {b}",
                    after=str(a), before=str(b),
                )

    def __len__(self):
        return len(self.dates)

    @classmethod
    def from_arrays(cls, start: date, new_cases, new_deaths, wards, icu) -> "RawSeries":
        def as_counts(name, values):
            arr = np.asarray(values)
            if arr.dtype.kind == "f":
                if not np.all(np.isfinite(arr)) or np.any(arr != np.round(arr)):
                    raise SeriesError(f"{name} must be whole numbers")
            return arr.astype(np.int64)

        n = len(new_cases)
        dates = tuple(start + timedelta(days=i) for i in range(n))
        return cls(
            dates=dates,
            new_cases=as_counts("new_cases", new_cases),
            new_deaths=as_counts("new_deaths", new_deaths),
            wards=as_counts("wards", wards),
            icu=as_counts("icu", icu),
        )

    @classmethod
    def from_csv(cls, source) -> "RawSeries":
        """Parse the `date,new_cases,new_deaths,wards,icu` CSV format."""
        if hasattr(source, "read"):
            text = source.read()
        else:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        reader = csv.reader(io.StringIO(text))
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise SchemaError("empty input file") from None
        if header != RAW_HEADER:
            raise SchemaError(
                f"expected header {','.join(RAW_HEADER)}, got {','.join(header)}"
            )
        dates, cols = [], ([], [], [], [])
        for ln, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 5:
                raise SchemaError(f"line {ln}: expected 5 fields, got {len(row)}")
            try:
                dates.append(date.fromisoformat(row[0]))
            except ValueError as exc:
                raise SchemaError(f"line {ln}: bad date {row[0]!r}") from exc
            for k, cell in enumerate(row[1:]):
                try:
                    cols[k].append(int(cell))
                except ValueError as exc:
                    raise SchemaError(
                        f"line {ln}: {RAW_HEADER[k + 1]} must be an integer, got {cell!r}"
                    ) from exc
        if not dates:
            raise SchemaError("no data rows")
        return cls(
            dates=tuple(dates),
            new_cases=np.array(cols[0], dtype=np.int64),
            new_deaths=np.array(cols[1], dtype=np.int64),
            wards=np.array(cols[2], dtype=np.int64),
            icu=np.array(cols[3], dtype=np.int64),
        )

    def to_csv(self, sink) -> None:
        def write(fh):
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(RAW_HEADER)
            for i, d in enumerate(self.dates):
                w.writerow([
                    d.isoformat(),
                    int(self.new_cases[i]), int(self.new_deaths[i]),
                    int(self.wards[i]), int(self.icu[i]),
                ])

        if hasattr(sink, "write"):
            write(sink)
        else:
            with open(sink, "w", encoding="utf-8") as fh:
                write(fh)


def _require_history(raw: RawSeries, t: int, needed: int, what: str) -> None:
    if t < needed:
        raise InsufficientHistoryError(
            f"{what} needs day index >= {needed}, got {t}", required=needed, got=t
        )
    if t >= len(raw):
        raise InsufficientHistoryError(
            f"day index {t} beyond series of length {len(raw)}", got=t
        )


def incidence(raw: RawSeries, t: int) -> float:
    """Seven-day mean of new cases ending at day t."""
    _require_history(raw, t, 6, "incidence")
    window = raw.new_cases[t - 6: t + 1]
    return float(window.sum(dtype=np.int64)) / 7.0


def transmission(raw: RawSeries, t: int) -> float:
    """Seven-day geometric mean of week-over-week case-sum ratios.

    A zero denominator week means no measurable growth; the transform
    falls back to 1.0 (the output row is flagged in batch mode).
    """
    _require_history(raw, t, 13, "transmission")
    value, _ = _transmission_flagged(raw, t)
    return value


def _transmission_flagged(raw: RawSeries, t: int) -> tuple[float, bool]:
    cases = raw.new_cases.astype(np.float64)
    log_acc = 0.0
    zero_num = False
    for u in range(t - 6, t + 1):
        num = float(cases[u - 6: u + 1].sum())
        den = float(cases[u - 7: u].sum())
        if den == 0.0:
            return 1.0, True
        if num == 0.0:
            zero_num = True
        else:
            log_acc += math.log(num / den)
    if zero_num:
        return 0.0, False
    return math.exp(log_acc / 7.0), False


def lethality(raw: RawSeries, t: int) -> float:
    """Fourteen-day mean case-fatality percentage with a 14-day death lag.

    Window days whose lagged case count is zero are skipped and the mean is
    renormalised over the kept days; a fully skipped window yields 0.0.
    """
    _require_history(raw, t, WARMUP, "lethality")
    value, _ = _lethality_flagged(raw, t)
    return value


def _lethality_flagged(raw: RawSeries, t: int) -> tuple[float, bool]:
    acc = 0.0
    kept = 0
    for u in range(t - 13, t + 1):
        base = int(raw.new_cases[u - 14])
        if base > 0:
            acc += 100.0 * float(raw.new_deaths[u]) / base
            kept += 1
    if kept == 0:
        return 0.0, True
    return acc / kept, False


def wards(raw: RawSeries, t: int) -> int:
    """Ward occupancy pass-through (ICU excluded upstream)."""
    _require_history(raw, t, 0, "wards")
    return int(raw.wards[t])


def icu(raw: RawSeries, t: int) -> int:
    """ICU occupancy pass-through."""
    _require_history(raw, t, 0, "icu")
    return int(raw.icu[t])


@dataclass(frozen=True, eq=False)
class PerformanceVector:
    """Criteria performances for one day: (incid, trans, letha, wards, icu)."""

    day: date
    x: np.ndarray
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.x.shape != (5,):
            raise SeriesError("performance vector must have five entries")
        if np.any(self.x < 0):
            raise SeriesError("performances must be non-negative")


@dataclass(frozen=True, eq=False)
class CriteriaMatrix:
    """Per-day performance rows over the evaluable date range."""

    dates: tuple[date, ...]
    x: np.ndarray  # (days, 5) float64
    flags: tuple[tuple[str, ...], ...] = field(default=None)

    def __post_init__(self):
        if self.x.ndim != 2 or self.x.shape[1] != 5:
            raise SeriesError("criteria matrix must be (days, 5)")
        if self.x.shape[0] != len(self.dates):
            raise SeriesError("row count must match dates")
        if self.x.shape[0] == 0:
            raise SeriesError("criteria matrix is empty")
        if self.flags is None:
            object.__setattr__(self, "flags", tuple(() for _ in self.dates))

    def __len__(self):
        return len(self.dates)

    def row(self, i: int) -> PerformanceVector:
        return PerformanceVector(day=self.dates[i], x=self.x[i], flags=self.flags[i])

    def to_csv(self, sink) -> None:
        """Write `date,incid,trans,letha,wards,icu` with 6 significant digits."""
        def write(fh):
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(MATRIX_HEADER)
            for i, d in enumerate(self.dates):
                w.writerow([d.isoformat()] + [f"{v:.6g}" for v in self.x[i]])

        if hasattr(sink, "write"):
            write(sink)
        else:
            with open(sink, "w", encoding="utf-8") as fh:
                write(fh)

    @classmethod
    def from_csv(cls, source) -> "CriteriaMatrix":
        if hasattr(source, "read"):
            text = source.read()
        else:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        reader = csv.reader(io.StringIO(text))
        header = tuple(next(reader, ()))
        if header != MATRIX_HEADER:
            raise SchemaError(
                f"expected header {','.join(MATRIX_HEADER)}, got {','.join(header)}"
            )
        dates, rows = [], []
        for row in reader:
            if not row:
                continue
            dates.append(date.fromisoformat(row[0]))
            rows.append([float(v) for v in row[1:]])
        if not rows:
            raise SchemaError("no data rows")
        return cls(dates=tuple(dates), x=np.array(rows, dtype=np.float64))


def compute_performances(raw: RawSeries) -> CriteriaMatrix:
    """Batch all five transforms over every evaluable day.

    Requires at least 28 days of history; emits one row per day from the
    warm-up horizon onward with zero-activity / skipped-window flags
    attached to the affected rows.
    """
    n = len(raw)
    if n < WARMUP + 1:
        raise SeriesTooShortError(
            f"need at least {WARMUP + 1} days, got {n}", required=WARMUP + 1, got=n
        )
    cases = raw.new_cases.astype(np.float64)
    deaths = raw.new_deaths.astype(np.float64)
    incid = _kernels.rolling_sum(cases, 7) / 7.0
    trans, trans_flag = _kernels.growth_ratio_series(cases)
    letha, letha_flag = _kernels.lethality_series(deaths, cases)
    idx = np.arange(WARMUP, n)
    x = np.column_stack([
        incid[idx],
        trans[idx],
        letha[idx],
        raw.wards[idx].astype(np.float64),
        raw.icu[idx].astype(np.float64),
    ])
    flags = []
    for t in idx:
        row_flags = []
        if trans_flag[t]:
            row_flags.append(FLAG_ZERO_ACTIVITY)
        if letha_flag[t]:
            row_flags.append(FLAG_LETHALITY_SKIPPED)
        flags.append(tuple(row_flags))
    return CriteriaMatrix(
        dates=tuple(raw.dates[WARMUP:]), x=x, flags=tuple(flags)
    )


@dataclass(frozen=True, eq=False)
class CorrelationTable:
    """Pearson correlations between criteria columns.

    Pairs involving a constant column are undefined and flagged; the
    diagonal is one by convention.
    """

    matrix: np.ndarray
    undefined: tuple[tuple[int, int], ...]


def correlations(matrix: CriteriaMatrix) -> CorrelationTable:
    if len(matrix) < 3:
        raise SeriesError("need at least three rows for correlations")
    x = matrix.x
    centered = x - x.mean(axis=0)
    norms = np.sqrt((centered ** 2).sum(axis=0))
    out = np.eye(5)
    undefined = []
    for i in range(5):
        for j in range(i + 1, 5):
            if norms[i] == 0.0 or norms[j] == 0.0:
                out[i, j] = out[j, i] = np.nan
                undefined.append((i, j))
                continue
            r = float((centered[:, i] * centered[:, j]).sum() / (norms[i] * norms[j]))
            r = min(1.0, max(-1.0, r))
            out[i, j] = out[j, i] = r
    return CorrelationTable(matrix=out, undefined=tuple(undefined))
