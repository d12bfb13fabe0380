"""No-vaccination counterfactual: severity frozen at pre-pivot ratios.

After a pivot day the severity criteria are replaced by what the observed
activity would have implied at pre-pivot severity: ward and ICU occupancy
follow the incidence at their average pre-pivot occupancy-to-incidence
ratios, and lethality is held at its pre-pivot mean.  Activity criteria
stay as observed, so the result is a lower bound on the unvaccinated
trajectory.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import PivotError
from .model import IndicatorSeries, ModelConfig, run_series
from .series import CriteriaMatrix


@dataclass(frozen=True)
class CounterfactualSpec:
    """pivot_day: row index into the criteria matrix (not the raw series)."""

    pivot_day: int


def counterfactual_matrix(matrix: CriteriaMatrix, spec: CounterfactualSpec) -> CriteriaMatrix:
    """Criteria matrix with post-pivot severity frozen at pre-pivot ratios.

    Ratio averages use only pre-pivot days with positive incidence; the
    lethality average runs over every pre-pivot day.  Rows up to and
    including the pivot are returned unchanged.
    """
    n = len(matrix)
    if not 0 <= spec.pivot_day < n:
        raise PivotError(
            f"pivot day {spec.pivot_day} outside 0..{n - 1}",
            pivot=spec.pivot_day, rows=n,
        )
    p = spec.pivot_day
    x = matrix.x.copy()
    pre = matrix.x[: p + 1]
    active = pre[:, 0] > 0
    if not np.any(active):
        raise PivotError("no pre-pivot day with positive incidence")
    wards_ratio = float((pre[active, 3] / pre[active, 0]).mean())
    icu_ratio = float((pre[active, 4] / pre[active, 0]).mean())
    letha_mean = float(pre[:, 2].mean())
    x[p + 1:, 2] = letha_mean
    x[p + 1:, 3] = wards_ratio * x[p + 1:, 0]
    x[p + 1:, 4] = icu_ratio * x[p + 1:, 0]
    return CriteriaMatrix(dates=matrix.dates, x=x, flags=matrix.flags)


def no_vaccination_series(matrix: CriteriaMatrix, cfg: ModelConfig,
                          spec: CounterfactualSpec) -> IndicatorSeries:
    """Indicator series under the frozen-severity counterfactual."""
    return run_series(counterfactual_matrix(matrix, spec), cfg)


def write_comparison_csv(sink, actual: IndicatorSeries,
                         counterfactual: IndicatorSeries) -> None:
    """`date,actual,counterfactual` comparison of the two trajectories."""
    def write(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("date", "actual", "counterfactual"))
        for i, d in enumerate(actual.dates):
            w.writerow([
                d.isoformat(),
                f"{actual.overall[i]:.10g}",
                f"{counterfactual.overall[i]:.10g}",
            ])

    if hasattr(sink, "write"):
        write(sink)
    else:
        with open(sink, "w", encoding="utf-8") as fh:
            write(fh)
