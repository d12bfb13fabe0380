"""LP optimum, envelopes, Monte-Carlo determinism and containment."""

import itertools

import numpy as np
import pytest

from paci.errors import EmptyPolyhedronError, PaciError
from paci.model import default_config
from paci.robustness import (
    MODE_AROUND_NOMINAL,
    MODE_FULL_SIMPLEX,
    Envelope,
    PerturbationSpec,
    WeightPolyhedron,
    envelope_from_matrix,
    exact_envelope,
    monte_carlo_from_matrix,
    monte_carlo_weights,
    optimize_over_weights,
)
from paci.series import compute_performances

CFG = default_config()
NOMINAL = CFG.weights.as_array()


def brute_force_vertex_optimum(values, poly, sense):
    """Independent oracle: enumerate all bound patterns of the polytope.

    A linear objective over a box cut by one equality attains its optimum at
    a vertex, where at most one coordinate sits strictly between its bounds.
    Trying every (bounds assignment, free coordinate) pair covers all
    vertices; this is exhaustive and does not share code with the greedy.
    """
    values = np.asarray(values, dtype=np.float64)
    k = len(values)
    best = None
    for free in range(k):
        others = [j for j in range(k) if j != free]
        for pattern in itertools.product((0, 1), repeat=k - 1):
            w = np.empty(k)
            for j, bit in zip(others, pattern):
                w[j] = poly.upper[j] if bit else poly.lower[j]
            w[free] = 1.0 - w[others].sum()
            if w[free] < poly.lower[free] - 1e-12 or w[free] > poly.upper[free] + 1e-12:
                continue
            obj = float(w @ values)
            if best is None:
                best = obj
            elif sense == "min":
                best = min(best, obj)
            else:
                best = max(best, obj)
    return best


class TestOptimizeOverWeights:
    def test_degenerate_box_returns_nominal(self):
        poly = WeightPolyhedron(lower=NOMINAL.copy(), upper=NOMINAL.copy())
        values = np.array([180.0, 180.0, 10.624, 3.904, 52.8])
        obj, w = optimize_over_weights(values, poly, "min")
        assert obj == pytest.approx(float(NOMINAL @ values), abs=1e-12)
        np.testing.assert_allclose(w, NOMINAL)

    def test_equal_values_any_box(self):
        poly = WeightPolyhedron.around(NOMINAL, 0.25)
        for sense in ("min", "max"):
            obj, _ = optimize_over_weights(np.full(5, 42.0), poly, sense)
            assert obj == pytest.approx(42.0, abs=1e-9)

    def test_published_minimisation_case(self):
        poly = WeightPolyhedron.around(NOMINAL, 0.10)
        values = np.array([180.0, 180.0, 10.624, 3.904, 52.8])
        obj, w = optimize_over_weights(values, poly, "min")
        oracle = brute_force_vertex_optimum(values, poly, "min")
        assert obj == pytest.approx(oracle, abs=1e-9)
        # mass floods the cheap criteria up to their bounds
        assert w[3] == pytest.approx(poly.upper[3])
        assert w[2] == pytest.approx(poly.upper[2])
        assert w.sum() == pytest.approx(1.0, abs=1e-12)

    def test_matches_oracle_on_random_instances(self):
        rng = np.random.default_rng(99)
        for _ in range(300):
            values = rng.uniform(0, 180, 5)
            center = rng.dirichlet(np.ones(5))
            delta = rng.uniform(0.01, 0.5)
            poly = WeightPolyhedron.around(center, delta)
            for sense in ("min", "max"):
                obj, w = optimize_over_weights(values, poly, sense)
                oracle = brute_force_vertex_optimum(values, poly, sense)
                assert obj == pytest.approx(oracle, abs=1e-9)
                assert np.all(w >= poly.lower - 1e-12)
                assert np.all(w <= poly.upper + 1e-12)
                assert w.sum() == pytest.approx(1.0, abs=1e-9)

    def test_empty_polyhedron_rejected(self):
        with pytest.raises(EmptyPolyhedronError):
            WeightPolyhedron(lower=np.full(5, 0.3), upper=np.full(5, 0.4))
        with pytest.raises(EmptyPolyhedronError):
            WeightPolyhedron(lower=np.zeros(5), upper=np.full(5, 0.1))

    def test_bad_sense_rejected(self):
        poly = WeightPolyhedron.around(NOMINAL, 0.1)
        with pytest.raises(PaciError):
            optimize_over_weights(np.zeros(5), poly, "best")


class TestEnvelope:
    def test_zero_deltas_collapse(self, synthetic_raw):
        spec = PerturbationSpec(perf_delta=0.0, value_delta=0.0, weight_delta=0.0)
        env = exact_envelope(synthetic_raw, CFG, spec)
        np.testing.assert_allclose(env.v_minus, env.v_nominal, atol=1e-9)
        np.testing.assert_allclose(env.v_plus, env.v_nominal, atol=1e-9)

    def test_sandwich_everywhere(self, synthetic_raw):
        env = exact_envelope(synthetic_raw, CFG, PerturbationSpec())
        assert np.all(env.v_minus <= env.v_nominal + 1e-9)
        assert np.all(env.v_nominal <= env.v_plus + 1e-9)

    def test_wider_deltas_wider_spread(self, synthetic_raw):
        env5 = exact_envelope(synthetic_raw, CFG, PerturbationSpec(0.05, 0.05, 0.05))
        env10 = exact_envelope(synthetic_raw, CFG, PerturbationSpec(0.10, 0.10, 0.10))
        assert np.all(env10.spread >= env5.spread - 1e-9)
        assert env10.mean_spread > env5.mean_spread

    def test_single_day_closed_form(self):
        # constant series: every day must equal the hand-solved single day
        from conftest import make_constant_raw

        raw = make_constant_raw(days=40, cases=700, deaths=7, wards=1200, icu=120)
        spec = PerturbationSpec(0.10, 0.10, 0.10)
        env = exact_envelope(raw, CFG, spec)
        matrix = compute_performances(raw)
        x = matrix.x[0]
        lo_x = x.copy()
        lo_x[:3] *= 0.9
        lo_vals = np.clip(CFG.values_at(lo_x) * 0.9, 0.0, 180.0)
        poly = WeightPolyhedron.around(NOMINAL, 0.10)
        lo_obj, _ = optimize_over_weights(lo_vals, poly, "min")
        hi_x = x.copy()
        hi_x[:3] *= 1.1
        hi_vals = np.clip(CFG.values_at(hi_x) * 1.1, 0.0, 180.0)
        hi_obj, _ = optimize_over_weights(hi_vals, poly, "max")
        np.testing.assert_allclose(env.v_minus, lo_obj, atol=1e-9)
        np.testing.assert_allclose(env.v_plus, hi_obj, atol=1e-9)

    def test_perturbed_outputs_respect_caps(self, synthetic_raw):
        env = exact_envelope(synthetic_raw, CFG, PerturbationSpec(0.5, 0.5, 0.5))
        assert np.all(env.v_plus <= 180.0 + 1e-9)
        assert np.all(env.v_minus >= 0.0)

    def test_csv_format(self, synthetic_raw):
        import io

        env = exact_envelope(synthetic_raw, CFG, PerturbationSpec())
        buf = io.StringIO()
        env.to_csv(buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "date,v_minus,v_nominal,v_plus"
        assert len(lines) == len(env.dates) + 1


class TestMonteCarlo:
    def test_zero_delta_single_sample_is_nominal(self, synthetic_raw):
        spec = PerturbationSpec(weight_delta=0.0, rng_seed=5, sample_count=1)
        sim = monte_carlo_weights(synthetic_raw, CFG, spec, MODE_AROUND_NOMINAL)
        matrix = compute_performances(synthetic_raw)
        nominal = CFG.values_matrix(matrix.x) @ NOMINAL
        np.testing.assert_allclose(sim.trajectories[0], nominal, atol=1e-9)

    def test_same_seed_identical(self, synthetic_raw):
        spec = PerturbationSpec(rng_seed=42, sample_count=50)
        a = monte_carlo_weights(synthetic_raw, CFG, spec, MODE_FULL_SIMPLEX)
        b = monte_carlo_weights(synthetic_raw, CFG, spec, MODE_FULL_SIMPLEX)
        np.testing.assert_array_equal(a.trajectories, b.trajectories)
        np.testing.assert_array_equal(a.weights, b.weights)

    def test_different_seeds_differ(self, synthetic_raw):
        a = monte_carlo_weights(
            synthetic_raw, CFG, PerturbationSpec(rng_seed=1, sample_count=10),
            MODE_FULL_SIMPLEX)
        b = monte_carlo_weights(
            synthetic_raw, CFG, PerturbationSpec(rng_seed=2, sample_count=10),
            MODE_FULL_SIMPLEX)
        assert not np.array_equal(a.weights, b.weights)

    def test_sample_prefix_stable_under_count(self, synthetic_raw):
        # per-sample spawned generators: first samples identical regardless
        # of how many more are drawn
        small = monte_carlo_weights(
            synthetic_raw, CFG, PerturbationSpec(rng_seed=7, sample_count=5),
            MODE_FULL_SIMPLEX)
        large = monte_carlo_weights(
            synthetic_raw, CFG, PerturbationSpec(rng_seed=7, sample_count=25),
            MODE_FULL_SIMPLEX)
        np.testing.assert_array_equal(small.weights, large.weights[:5])

    def test_weights_live_on_the_simplex(self, synthetic_raw):
        for mode in (MODE_FULL_SIMPLEX, MODE_AROUND_NOMINAL):
            sim = monte_carlo_weights(
                synthetic_raw, CFG,
                PerturbationSpec(weight_delta=0.10, rng_seed=3, sample_count=200),
                mode)
            np.testing.assert_allclose(sim.weights.sum(axis=1), 1.0, atol=1e-12)
            assert np.all(sim.weights >= 0)

    def test_full_simplex_containment(self, synthetic_raw):
        # with nominal values, any convex combination sits between the
        # per-day min and max over the whole simplex
        matrix = compute_performances(synthetic_raw)
        sim = monte_carlo_from_matrix(
            matrix, CFG, PerturbationSpec(rng_seed=11, sample_count=400),
            MODE_FULL_SIMPLEX)
        values = CFG.values_matrix(matrix.x)
        lo = values.min(axis=1)
        hi = values.max(axis=1)
        assert np.all(sim.trajectories >= lo[None, :] - 1e-9)
        assert np.all(sim.trajectories <= hi[None, :] + 1e-9)

    def test_nominal_box_containment_in_envelope(self, synthetic_raw):
        # draws whose renormalised box stays inside the 10% polyhedron can
        # never exit the exact envelope built with the same deltas
        matrix = compute_performances(synthetic_raw)
        env = envelope_from_matrix(matrix, CFG, PerturbationSpec(0.10, 0.10, 0.10))
        sim = monte_carlo_from_matrix(
            matrix, CFG,
            PerturbationSpec(weight_delta=0.04, rng_seed=13, sample_count=400),
            MODE_AROUND_NOMINAL)
        poly = WeightPolyhedron.around(NOMINAL, 0.10)
        assert np.all(sim.weights >= poly.lower[None, :] - 1e-12)
        assert np.all(sim.weights <= poly.upper[None, :] + 1e-12)
        assert np.all(sim.trajectories >= env.v_minus[None, :] - 1e-9)
        assert np.all(sim.trajectories <= env.v_plus[None, :] + 1e-9)

    def test_long_csv_format(self, synthetic_raw):
        import io

        sim = monte_carlo_weights(
            synthetic_raw, CFG, PerturbationSpec(rng_seed=1, sample_count=3))
        buf = io.StringIO()
        sim.to_csv(buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "sample_id,date,value"
        assert len(lines) == 3 * len(sim.dates) + 1

    def test_bad_mode_rejected(self, synthetic_raw):
        with pytest.raises(PaciError):
            monte_carlo_weights(synthetic_raw, CFG, PerturbationSpec(), "jitter")

    def test_spec_validation(self):
        with pytest.raises(PaciError):
            PerturbationSpec(perf_delta=1.0)
        with pytest.raises(PaciError):
            PerturbationSpec(sample_count=0)
