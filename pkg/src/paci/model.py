"""Additive aggregation, chromatic state classification, and model config.

The daily impact score is the weighted sum of the five value-function
outputs.  Scores fall into chromatic states separated by cut-off lines;
a value sitting exactly on a cut-off belongs to the higher state, and an
optional hysteresis half-width makes transitions sticky.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass
from datetime import date

import numpy as np

from .errors import ConfigError, ConfigMismatchError
from .series import CriteriaMatrix, PerformanceVector
from .valuefunc import CRITERIA, PiecewiseLinearValueFunction, default_functions, evaluate

CONFIG_SCHEMA = "paci-config/1"

SERIES_HEADER = ("date", "overall", "state", "c_incid", "c_trans", "c_letha", "c_wards", "c_icu")

#: nominal weights of the Portuguese model after the final expert adjustment
DEFAULT_WEIGHTS = (0.280, 0.141, 0.193, 0.193, 0.193)

DEFAULT_CUTOFFS = (
    (0.0, "baseline", "#1b8a3a"),
    (10.0, "residual", "#7dc242"),
    (40.0, "alert", "#f2c511"),
    (80.0, "alarm", "#f28c11"),
    (100.0, "critical", "#e02b2b"),
    (120.0, "break", "#8b1a1a"),
    (180.0, "emergency", "#4a0404"),
)

#: reference profiles: per-state performance levels that should land on the
#: state's cut-off value (the published critical list carried a spurious
#: sixth entry, dropped here)
REFERENCE_PROFILES = (
    ("baseline", (0, 0, 0, 0, 0), 0.0),
    ("residual", (338, 0.93, 0.36, 750, 60), 10.0),
    ("alert", (707, 0.963, 1.43, 1571, 126), 40.0),
    ("alarm", (1000, 0.989, 2.89, 2222, 178), 80.0),
    ("critical", (1125, 1.0, 3.6, 2500, 200), 100.0),
    ("break", (1227, 1.009, 4.31, 2727, 218), 120.0),
    ("emergency", (1506, 1.034, 6.47, 3346, 268), 180.0),
)


@dataclass(frozen=True)
class WeightVector:
    w: tuple[float, ...]

    def __post_init__(self):
        if len(self.w) != 5:
            raise ConfigError("exactly five weights required")
        total = math.fsum(self.w)
        if abs(total - 1.0) > 1e-9:
            raise ConfigError(f"weights must sum to 1, got {total!r}")
        if any(not 0.0 < wi < 1.0 for wi in self.w):
            raise ConfigError("each weight must lie strictly between 0 and 1")

    def as_array(self) -> np.ndarray:
        return np.array(self.w, dtype=np.float64)


@dataclass(frozen=True)
class Cutoff:
    value: float
    label: str
    color: str


@dataclass(frozen=True)
class StateScale:
    """Ascending cut-off lines and an optional hysteresis half-width."""

    cutoffs: tuple[Cutoff, ...]
    hysteresis: float = 0.0

    def __post_init__(self):
        if len(self.cutoffs) < 2:
            raise ConfigError("need at least two cut-off lines")
        values = [c.value for c in self.cutoffs]
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ConfigError("cut-off values must be strictly increasing")
        labels = [c.label for c in self.cutoffs]
        if len(set(labels)) != len(labels):
            raise ConfigError("state labels must be unique")
        if self.hysteresis < 0:
            raise ConfigError("hysteresis must be non-negative")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.cutoffs)

    def band(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ConfigError(f"unknown state {label!r}") from None

    def color(self, label: str) -> str:
        return self.cutoffs[self.band(label)].color

    @classmethod
    def default(cls) -> "StateScale":
        return cls(cutoffs=tuple(Cutoff(*c) for c in DEFAULT_CUTOFFS))


def classify(value: float, scale: StateScale, previous_state: str | None = None) -> str:
    """State label for a score: half-open bands, top band unbounded.

    With a previous state and a positive hysteresis width, the state only
    moves when the value clears the next boundary by the width; intermediate
    bands are crossed one by one under the same rule.
    """
    if value < 0:
        raise ConfigError("indicator values are non-negative")
    cuts = [c.value for c in scale.cutoffs]
    if previous_state is None or scale.hysteresis == 0.0:
        band = 0
        for k in range(len(cuts) - 1, -1, -1):
            if value >= cuts[k]:
                band = k
                break
        return scale.labels[band]
    band = scale.band(previous_state)
    delta = scale.hysteresis
    while band + 1 < len(cuts) and value >= cuts[band + 1] + delta:
        band += 1
    while band > 0 and value < cuts[band] - delta:
        band -= 1
    return scale.labels[band]


@dataclass(frozen=True)
class ModelConfig:
    """Value functions, weights, state scale, and descriptive metadata."""

    value_functions: tuple[PiecewiseLinearValueFunction, ...]
    weights: WeightVector
    state_scale: StateScale
    name: str = "portugal-default"
    version: str = "1"
    created: str = "2021-07-14"

    def __post_init__(self):
        if len(self.value_functions) != 5:
            raise ConfigError("exactly five value functions required")

    def digest(self) -> str:
        return hashlib.sha256(
            json.dumps(self.to_dict(), sort_keys=True).encode()
        ).hexdigest()[:16]

    def values_at(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        return np.array([evaluate(f, x[j]) for j, f in enumerate(self.value_functions)])

    def values_matrix(self, x: np.ndarray) -> np.ndarray:
        """Value-function outputs for an (n, 5) performance matrix."""
        return np.column_stack([
            evaluate(f, x[:, j]) for j, f in enumerate(self.value_functions)
        ])

    def to_dict(self) -> dict:
        return {
            "schema": CONFIG_SCHEMA,
            "metadata": {"name": self.name, "version": self.version, "created": self.created},
            "value_functions": [f.to_dict() for f in self.value_functions],
            "weights": list(self.weights.w),
            "state_scale": {
                "cutoffs": [[c.value, c.label, c.color] for c in self.state_scale.cutoffs],
                "hysteresis": self.state_scale.hysteresis,
            },
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, doc: dict) -> "ModelConfig":
        violations = []
        if doc.get("schema") != CONFIG_SCHEMA:
            violations.append(f"schema must be {CONFIG_SCHEMA!r}, got {doc.get('schema')!r}")
        try:
            functions = tuple(
                PiecewiseLinearValueFunction.from_dict(d)
                for d in doc.get("value_functions", [])
            )
            if len(functions) != 5:
                violations.append("exactly five value functions required")
        except ConfigError as exc:
            violations.append(str(exc))
            functions = None
        weights = None
        try:
            weights = WeightVector(tuple(float(v) for v in doc.get("weights", [])))
        except (ConfigError, TypeError, ValueError) as exc:
            violations.append(str(exc) if str(exc) else "malformed weights")
        scale = None
        try:
            ss = doc.get("state_scale", {})
            scale = StateScale(
                cutoffs=tuple(Cutoff(float(v), str(l), str(c)) for v, l, c in ss.get("cutoffs", [])),
                hysteresis=float(ss.get("hysteresis", 0.0)),
            )
        except (ConfigError, TypeError, ValueError) as exc:
            violations.append(str(exc) if str(exc) else "malformed state scale")
        if violations:
            raise ConfigError("invalid model config", violations=violations)
        meta = doc.get("metadata", {})
        return cls(
            value_functions=functions,
            weights=weights,
            state_scale=scale,
            name=meta.get("name", ""),
            version=str(meta.get("version", "")),
            created=meta.get("created", ""),
        )

    @classmethod
    def from_json(cls, text: str) -> "ModelConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}", violations=[f"invalid JSON: {exc}"]) from exc
        return cls.from_dict(doc)

    @classmethod
    def load(cls, path) -> "ModelConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(fh.read())


def default_config() -> ModelConfig:
    """The full Portuguese model: default functions, adjusted weights, states."""
    return ModelConfig(
        value_functions=default_functions(),
        weights=WeightVector(DEFAULT_WEIGHTS),
        state_scale=StateScale.default(),
    )


def linear_baseline_config(cap: float = 180.0) -> ModelConfig:
    """Two-criterion baseline: linear value functions on incidence and
    transmission, equal weights, same cut-offs.

    Mirrors the pre-existing risk-matrix style reading where every marginal
    case counts the same; severity criteria get negligible weight so the
    score is effectively the mean of the two linear activity values.
    """
    eps = 1e-9
    v1 = PiecewiseLinearValueFunction(
        breakpoints=((0.0, 0.0), (1125.0, 100.0), (2025.0, cap)),
        cap=cap, cap_onset=2025.0, name="incid-linear",
    )
    v2 = PiecewiseLinearValueFunction(
        breakpoints=((0.0, 0.0), (1.0, 100.0), (1.8, cap)),
        cap=cap, cap_onset=1.8, name="trans-linear",
    )
    flat = PiecewiseLinearValueFunction(
        breakpoints=((0.0, 0.0), (1.0, 0.0)), cap=cap, name="ignored",
    )
    w = (0.5 - eps, 0.5 - eps, 2 * eps / 3, 2 * eps / 3, 2 * eps / 3)
    return ModelConfig(
        value_functions=(v1, v2, flat, flat, flat),
        weights=WeightVector(w),
        state_scale=StateScale.default(),
        name="risk-matrix-baseline",
    )


@dataclass(frozen=True)
class IndicatorPoint:
    """One day's score: overall value, weighted contributions, state."""

    day: date
    overall: float
    contributions: tuple[float, ...]
    state: str
    config_digest: str = ""

    def __post_init__(self):
        if abs(self.overall - math.fsum(self.contributions)) > 1e-9:
            raise ConfigError("overall must equal the sum of contributions")


def aggregate(x, cfg: ModelConfig, previous_state: str | None = None) -> IndicatorPoint:
    """Score one performance vector: contributions, overall, state."""
    if isinstance(x, PerformanceVector):
        day, vec = x.day, x.x
    else:
        day, vec = date.today(), np.asarray(x, dtype=np.float64)
    values = cfg.values_at(vec)
    w = cfg.weights.as_array()
    contributions = tuple(float(c) for c in w * values)
    overall = math.fsum(contributions)
    return IndicatorPoint(
        day=day,
        overall=overall,
        contributions=contributions,
        state=classify(overall, cfg.state_scale, previous_state),
        config_digest=cfg.digest(),
    )


ORDER_MORE = "impacts-more"
ORDER_EQUAL = "equal"
ORDER_LESS = "impacts-less"


def compare(p1: IndicatorPoint, p2: IndicatorPoint) -> str:
    """Comprehensive ordering of two scored days by overall value."""
    if p1.config_digest != p2.config_digest:
        raise ConfigMismatchError("points were scored under different configs")
    if p1.overall > p2.overall:
        return ORDER_MORE
    if p1.overall < p2.overall:
        return ORDER_LESS
    return ORDER_EQUAL


@dataclass(frozen=True, eq=False)
class IndicatorSeries:
    dates: tuple[date, ...]
    overall: np.ndarray
    contributions: np.ndarray  # (days, 5)
    states: tuple[str, ...]
    config_digest: str = ""

    def __len__(self):
        return len(self.dates)

    def point(self, i: int) -> IndicatorPoint:
        return IndicatorPoint(
            day=self.dates[i],
            overall=float(self.overall[i]),
            contributions=tuple(float(c) for c in self.contributions[i]),
            state=self.states[i],
            config_digest=self.config_digest,
        )

    def to_csv(self, sink) -> None:
        def write(fh):
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(SERIES_HEADER)
            for i, d in enumerate(self.dates):
                w.writerow(
                    [d.isoformat(), f"{self.overall[i]:.10g}", self.states[i]]
                    + [f"{c:.10g}" for c in self.contributions[i]]
                )

        if hasattr(sink, "write"):
            write(sink)
        else:
            with open(sink, "w", encoding="utf-8") as fh:
                write(fh)

    def to_dicts(self) -> list[dict]:
        return [
            {
                "date": d.isoformat(),
                "overall": float(self.overall[i]),
                "state": self.states[i],
                "contributions": {
                    name: float(self.contributions[i][j]) for j, name in enumerate(CRITERIA)
                },
            }
            for i, d in enumerate(self.dates)
        ]


def run_series(matrix: CriteriaMatrix, cfg: ModelConfig) -> IndicatorSeries:
    """Score every row of a criteria matrix in chronological order.

    Hysteresis, when configured, threads the previous day's state through
    the classification of the next.
    """
    values = cfg.values_matrix(matrix.x)
    w = cfg.weights.as_array()
    contributions = values * w
    overall = contributions.sum(axis=1)
    states = []
    previous = None
    for v in overall:
        previous = classify(float(v), cfg.state_scale, previous)
        states.append(previous)
    return IndicatorSeries(
        dates=matrix.dates,
        overall=overall,
        contributions=contributions,
        states=tuple(states),
        config_digest=cfg.digest(),
    )


def reference_profiles_check(cfg: ModelConfig) -> list[dict]:
    """Evaluate the per-state reference profiles against their cut-offs."""
    rows = []
    for label, profile, expected in REFERENCE_PROFILES:
        point = aggregate(np.array(profile, dtype=np.float64), cfg)
        rows.append({
            "profile": label,
            "levels": list(profile),
            "expected": expected,
            "computed": point.overall,
            "deviation": point.overall - expected,
        })
    return rows
