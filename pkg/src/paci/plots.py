"""SVG figure emission for the indicator, contributions, envelope, and
counterfactual views.  Figures are written as self-contained SVG with
stable metadata so reruns diff cleanly; the CSV behind each figure is
emitted by the CLI alongside.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .model import IndicatorSeries, StateScale
from .robustness import Envelope, SimulationResult
from .valuefunc import CRITERIA

matplotlib.rcParams["svg.hashsalt"] = "paci"

_SAVE_KW = {"format": "svg", "metadata": {"Date": None}}


def _state_bands(ax, scale: StateScale, x0, x1):
    cuts = scale.cutoffs
    for i, c in enumerate(cuts):
        top = cuts[i + 1].value if i + 1 < len(cuts) else max(200.0, c.value + 20)
        ax.axhspan(c.value, top, color=c.color, alpha=0.15, lw=0)
        ax.axhline(c.value, color=c.color, lw=0.8, alpha=0.8)
    ax.set_xlim(x0, x1)


def plot_evolution(series: IndicatorSeries, scale: StateScale, path) -> None:
    fig, ax = plt.subplots(figsize=(11, 6))
    _state_bands(ax, scale, series.dates[0], series.dates[-1])
    ax.plot(series.dates, series.overall, color="#14325c", lw=1.4)
    ax.set_ylim(0, max(185.0, float(series.overall.max()) + 5))
    ax.set_ylabel("impact score")
    ax.set_title("Indicator evolution with chromatic states")
    fig.autofmt_xdate()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def plot_contributions(series: IndicatorSeries, path) -> None:
    fig, ax = plt.subplots(figsize=(11, 6))
    parts = [series.contributions[:, j] for j in range(5)]
    ax.stackplot(series.dates, parts, labels=CRITERIA, alpha=0.85)
    ax.set_ylabel("weighted contribution")
    ax.set_title("Cumulative contribution of each criterion")
    ax.legend(loc="upper left", ncol=5, fontsize=9)
    fig.autofmt_xdate()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def plot_envelope(env: Envelope, path, simulation: SimulationResult | None = None,
                  max_lines: int = 400) -> None:
    fig, ax = plt.subplots(figsize=(11, 6))
    if simulation is not None:
        shown = simulation.trajectories[:max_lines]
        for row in shown:
            ax.plot(env.dates, row, color="#9aa7b5", lw=0.3, alpha=0.35)
    ax.fill_between(env.dates, env.v_minus, env.v_plus, color="#5a8bbf", alpha=0.25,
                    label="exact envelope")
    ax.plot(env.dates, env.v_nominal, color="#14325c", lw=1.4, label="nominal")
    ax.plot(env.dates, env.v_minus, color="#2e6da4", lw=0.9)
    ax.plot(env.dates, env.v_plus, color="#2e6da4", lw=0.9)
    ax.set_ylabel("impact score")
    ax.set_title("Sensitivity envelope")
    ax.legend(loc="upper left")
    fig.autofmt_xdate()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def plot_counterfactual(actual: IndicatorSeries, counterfactual: IndicatorSeries,
                        path) -> None:
    fig, ax = plt.subplots(figsize=(11, 6))
    ax.plot(actual.dates, counterfactual.overall, color="#b23b3b", lw=1.4,
            label="no-vaccination lower bound")
    ax.plot(actual.dates, actual.overall, color="#14325c", lw=1.4, label="observed")
    ax.fill_between(actual.dates, actual.overall, counterfactual.overall,
                    where=counterfactual.overall >= actual.overall,
                    color="#b23b3b", alpha=0.15)
    ax.set_ylabel("impact score")
    ax.set_title("Vaccination counterfactual")
    ax.legend(loc="upper left")
    fig.autofmt_xdate()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
