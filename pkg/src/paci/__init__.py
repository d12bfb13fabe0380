"""Pandemic assessment composite indicator toolkit.

Turns raw epidemic counts into five criteria performances, maps them
through elicited piecewise-linear value functions, aggregates them into a
daily 0..180 impact score with chromatic states, and quantifies robustness
with Monte-Carlo simulation and exact sensitivity envelopes.  The
deck-of-cards elicitation that produced the default model is implemented
alongside, with a CLI and a JSON preview API for the elicitation UI.
"""

from .deck import (
    Anchor,
    CardJudgements,
    IntervalScaleResult,
    LevelSequence,
    PairwiseTable,
    SwingRanking,
    build_interval_scale,
    build_weights,
    check_consistency,
    fill_pairwise_table,
)
from .model import (
    IndicatorPoint,
    IndicatorSeries,
    ModelConfig,
    StateScale,
    WeightVector,
    aggregate,
    classify,
    compare,
    default_config,
    reference_profiles_check,
    run_series,
)
from .robustness import (
    Envelope,
    PerturbationSpec,
    SimulationResult,
    WeightPolyhedron,
    exact_envelope,
    monte_carlo_weights,
    optimize_over_weights,
)
from .series import (
    CriteriaMatrix,
    PerformanceVector,
    RawSeries,
    compute_performances,
    correlations,
    incidence,
    lethality,
    transmission,
)
from .vaccination import CounterfactualSpec, no_vaccination_series
from .valuefunc import (
    PiecewiseLinearValueFunction,
    QuadraticApproximation,
    default_functions,
    evaluate,
    from_dcm,
    relative_l2_distance,
)

__version__ = "0.1.0"

__all__ = [
    "Anchor",
    "CardJudgements",
    "CounterfactualSpec",
    "CriteriaMatrix",
    "Envelope",
    "IndicatorPoint",
    "IndicatorSeries",
    "IntervalScaleResult",
    "LevelSequence",
    "ModelConfig",
    "PairwiseTable",
    "PerformanceVector",
    "PerturbationSpec",
    "PiecewiseLinearValueFunction",
    "QuadraticApproximation",
    "RawSeries",
    "SimulationResult",
    "StateScale",
    "SwingRanking",
    "WeightPolyhedron",
    "WeightVector",
    "aggregate",
    "build_interval_scale",
    "build_weights",
    "check_consistency",
    "classify",
    "compare",
    "compute_performances",
    "correlations",
    "default_config",
    "default_functions",
    "evaluate",
    "exact_envelope",
    "fill_pairwise_table",
    "from_dcm",
    "incidence",
    "lethality",
    "monte_carlo_weights",
    "no_vaccination_series",
    "optimize_over_weights",
    "reference_profiles_check",
    "relative_l2_distance",
    "run_series",
    "transmission",
    "__version__",
]
