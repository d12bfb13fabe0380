"""Robustness analysis: Monte-Carlo weight simulation and exact envelopes.

The exact analysis perturbs the imprecise inputs (performances of the
first three criteria and all value-function outputs) down or up by a
fraction, then finds the lowest/highest achievable score over a weight
polyhedron (box bounds intersected with the unit simplex) by a greedy
linear program, day by day.  The Monte-Carlo analysis samples weight
vectors instead and replays whole trajectories.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import EmptyPolyhedronError, PaciError
from .model import ModelConfig
from .series import CriteriaMatrix, RawSeries, compute_performances

#: performances of these criteria carry measurement imprecision; occupancy
#: counts (wards, icu) do not and are never perturbed
PERTURBED_CRITERIA = (0, 1, 2)


@dataclass(frozen=True)
class PerturbationSpec:
    """Magnitudes for one robustness run.

    perf_delta: signed fraction applied to the first three performances.
    value_delta: signed fraction applied to all five value outputs.
    weight_delta: box half-width fraction around the nominal weights.
    rng_seed: 64-bit seed; the run is deterministic given the seed.
    sample_count: number of Monte-Carlo trajectories.
    """

    perf_delta: float = 0.10
    value_delta: float = 0.10
    weight_delta: float = 0.10
    rng_seed: int = 0
    sample_count: int = 1

    def __post_init__(self):
        for name in ("perf_delta", "value_delta", "weight_delta"):
            if not abs(getattr(self, name)) < 1.0:
                raise PaciError(f"{name} must satisfy |delta| < 1")
        if self.sample_count < 1:
            raise PaciError("sample_count must be at least 1")


@dataclass(frozen=True, eq=False)
class WeightPolyhedron:
    """Box bounds on weights intersected with the sum-to-one constraint."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo, up = self.lower, self.upper
        if lo.shape != up.shape or lo.ndim != 1:
            raise EmptyPolyhedronError("bounds must be equal-length vectors")
        if np.any(lo < 0) or np.any(up > 1) or np.any(lo > up):
            raise EmptyPolyhedronError("need 0 <= lower <= upper <= 1")
        if lo.sum() > 1.0 + 1e-12 or up.sum() < 1.0 - 1e-12:
            raise EmptyPolyhedronError(
                "box does not intersect the simplex",
                lower_sum=float(lo.sum()), upper_sum=float(up.sum()),
            )

    @classmethod
    def around(cls, weights, delta: float) -> "WeightPolyhedron":
        w = np.asarray(weights, dtype=np.float64)
        return cls(
            lower=np.clip(w * (1.0 - delta), 0.0, 1.0),
            upper=np.clip(w * (1.0 + delta), 0.0, 1.0),
        )

    @classmethod
    def full_simplex(cls, n: int = 5) -> "WeightPolyhedron":
        return cls(lower=np.zeros(n), upper=np.ones(n))


def optimize_over_weights(values, poly: WeightPolyhedron, sense: str = "min"):
    """Exact optimum of sum(w * values) over the polyhedron.

    Greedy closed form: every weight starts at its lower bound and the
    residual mass goes to the most favourable coefficients first, each up
    to its upper bound.  Returns (objective, optimising weights).
    """
    if sense not in ("min", "max"):
        raise PaciError(f"sense must be 'min' or 'max', got {sense!r}")
    coeffs = np.asarray(values, dtype=np.float64).reshape(1, -1)
    if coeffs.shape[1] != poly.lower.shape[0]:
        raise PaciError("values and bounds must have equal length")
    obj, w = _kernels.box_simplex_optimize(
        coeffs, poly.lower, poly.upper, sense == "max"
    )
    return float(obj[0]), w[0]


@dataclass(frozen=True, eq=False)
class Envelope:
    """Per-day lowest/nominal/highest achievable scores."""

    dates: tuple
    v_minus: np.ndarray
    v_nominal: np.ndarray
    v_plus: np.ndarray

    @property
    def spread(self) -> np.ndarray:
        return self.v_plus - self.v_minus

    @property
    def mean_spread(self) -> float:
        return float(self.spread.mean())

    @property
    def sd_spread(self) -> float:
        return float(self.spread.std())

    def to_csv(self, sink) -> None:
        def write(fh):
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("date", "v_minus", "v_nominal", "v_plus"))
            for i, d in enumerate(self.dates):
                w.writerow([
                    d.isoformat(),
                    f"{self.v_minus[i]:.10g}",
                    f"{self.v_nominal[i]:.10g}",
                    f"{self.v_plus[i]:.10g}",
                ])

        if hasattr(sink, "write"):
            write(sink)
        else:
            with open(sink, "w", encoding="utf-8") as fh:
                write(fh)


def _perturbed_values(matrix: CriteriaMatrix, cfg: ModelConfig,
                      perf_delta: float, value_delta: float) -> np.ndarray:
    """Value-function outputs after perturbing performances then outputs.

    Performances of the imprecise criteria are scaled first, the resulting
    value outputs scaled next, and everything clamped to [0, cap].
    """
    x = matrix.x.copy()
    for j in PERTURBED_CRITERIA:
        x[:, j] = np.clip(x[:, j] * (1.0 + perf_delta), 0.0, None)
    values = cfg.values_matrix(x)
    values *= (1.0 + value_delta)
    caps = np.array([f.cap for f in cfg.value_functions])
    return np.clip(values, 0.0, caps)


def envelope_from_matrix(matrix: CriteriaMatrix, cfg: ModelConfig,
                         spec: PerturbationSpec) -> Envelope:
    """Exact per-day envelope on an already-transformed criteria matrix."""
    w = cfg.weights.as_array()
    poly = WeightPolyhedron.around(w, spec.weight_delta)
    low_values = _perturbed_values(matrix, cfg, -spec.perf_delta, -spec.value_delta)
    high_values = _perturbed_values(matrix, cfg, +spec.perf_delta, +spec.value_delta)
    v_minus, _ = _kernels.box_simplex_optimize(low_values, poly.lower, poly.upper, False)
    v_plus, _ = _kernels.box_simplex_optimize(high_values, poly.lower, poly.upper, True)
    nominal = _kernels.trajectories(cfg.values_matrix(matrix.x), w.reshape(1, -1))[0]
    return Envelope(dates=matrix.dates, v_minus=v_minus, v_nominal=nominal, v_plus=v_plus)


def exact_envelope(raw: RawSeries, cfg: ModelConfig, spec: PerturbationSpec) -> Envelope:
    """Exact sensitivity envelope straight from a raw series."""
    return envelope_from_matrix(compute_performances(raw), cfg, spec)


MODE_FULL_SIMPLEX = "full-simplex"
MODE_AROUND_NOMINAL = "around-nominal"


@dataclass(frozen=True, eq=False)
class SimulationResult:
    """Monte-Carlo trajectories (samples x days) and the weights used."""

    dates: tuple
    trajectories: np.ndarray
    weights: np.ndarray
    mode: str
    seed: int

    def to_csv(self, sink) -> None:
        """Long format: sample_id,date,value."""
        def write(fh):
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("sample_id", "date", "value"))
            for s in range(self.trajectories.shape[0]):
                for i, d in enumerate(self.dates):
                    w.writerow([s, d.isoformat(), f"{self.trajectories[s, i]:.10g}"])

        if hasattr(sink, "write"):
            write(sink)
        else:
            with open(sink, "w", encoding="utf-8") as fh:
                write(fh)


def _sample_weights(nominal: np.ndarray, spec: PerturbationSpec, mode: str) -> np.ndarray:
    """Deterministic per-sample weight draws.

    Each sample owns an independent child generator spawned from the seed,
    so the draw order never depends on batching or parallel execution.
    Full-simplex mode uses the exponential-spacings construction for a
    uniform draw on the simplex; around-nominal draws uniformly in the box
    and renormalises onto the simplex.
    """
    k = nominal.shape[0]
    out = np.empty((spec.sample_count, k))
    for s in range(spec.sample_count):
        rng = np.random.default_rng(np.random.SeedSequence(spec.rng_seed, spawn_key=(s,)))
        if mode == MODE_FULL_SIMPLEX:
            e = rng.standard_exponential(k)
            out[s] = e / e.sum()
        elif spec.weight_delta == 0.0:
            out[s] = nominal
        else:
            lo = np.clip(nominal * (1.0 - spec.weight_delta), 0.0, 1.0)
            hi = np.clip(nominal * (1.0 + spec.weight_delta), 0.0, 1.0)
            draw = lo + (hi - lo) * rng.random(k)
            out[s] = draw / draw.sum()
    return out


def monte_carlo_from_matrix(matrix: CriteriaMatrix, cfg: ModelConfig,
                            spec: PerturbationSpec,
                            mode: str = MODE_AROUND_NOMINAL) -> SimulationResult:
    if mode not in (MODE_FULL_SIMPLEX, MODE_AROUND_NOMINAL):
        raise PaciError(f"unknown simulation mode {mode!r}")
    nominal = cfg.weights.as_array()
    weights = _sample_weights(nominal, spec, mode)
    values = cfg.values_matrix(matrix.x)
    trajectories = _kernels.trajectories(values, weights)
    return SimulationResult(
        dates=matrix.dates, trajectories=trajectories, weights=weights,
        mode=mode, seed=spec.rng_seed,
    )


def monte_carlo_weights(raw: RawSeries, cfg: ModelConfig, spec: PerturbationSpec,
                        mode: str = MODE_AROUND_NOMINAL) -> SimulationResult:
    """Monte-Carlo weight simulation straight from a raw series."""
    return monte_carlo_from_matrix(compute_performances(raw), cfg, spec, mode)
