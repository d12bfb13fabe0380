"""Numba fast path against the numpy fallback, plus backend selection."""

import os
import subprocess
import sys

import numpy as np
import pytest

from paci import _kernels

numba_only = pytest.mark.skipif(
    not _kernels.NUMBA_ACTIVE, reason="numba backend not active")


def _cases(n=200, seed=0):
    rng = np.random.default_rng(seed)
    base = np.maximum(0, (1500 * np.exp(-((np.arange(n) - 90) / 30.0) ** 2)))
    return np.round(base + rng.integers(0, 40, n)).astype(np.float64)


@numba_only
class TestParity:
    def test_rolling_sum(self):
        a = _cases()
        np.testing.assert_array_equal(
            _kernels.rolling_sum_np(a, 7), _kernels.rolling_sum_nb(a, 7))

    def test_growth_ratio(self):
        a = _cases()
        v_np, f_np = _kernels.growth_ratio_series_np(a)
        v_nb, f_nb = _kernels.growth_ratio_series_nb(a)
        np.testing.assert_allclose(v_np[13:], v_nb[13:], rtol=1e-13)
        np.testing.assert_array_equal(f_np, f_nb)

    def test_growth_ratio_zero_stretch(self):
        a = _cases()
        a[:40] = 0.0
        v_np, f_np = _kernels.growth_ratio_series_np(a)
        v_nb, f_nb = _kernels.growth_ratio_series_nb(a)
        np.testing.assert_allclose(v_np[13:], v_nb[13:], rtol=1e-13)
        np.testing.assert_array_equal(f_np, f_nb)

    def test_lethality(self):
        cases = _cases(seed=1)
        deaths = np.round(cases * 0.013).astype(np.float64)
        v_np, f_np = _kernels.lethality_series_np(deaths, cases)
        v_nb, f_nb = _kernels.lethality_series_nb(deaths, cases)
        np.testing.assert_allclose(v_np[27:], v_nb[27:], rtol=1e-13)
        np.testing.assert_array_equal(f_np, f_nb)

    def test_box_simplex_optimize(self):
        rng = np.random.default_rng(5)
        coeffs = rng.uniform(0, 180, size=(64, 5))
        center = rng.dirichlet(np.ones(5))
        lower = np.clip(center * 0.9, 0, 1)
        upper = np.clip(center * 1.1, 0, 1)
        for maximize in (False, True):
            o_np, w_np = _kernels.box_simplex_optimize_np(coeffs, lower, upper, maximize)
            o_nb, w_nb = _kernels.box_simplex_optimize_nb(coeffs, lower, upper, maximize)
            np.testing.assert_allclose(o_np, o_nb, rtol=1e-13)
            np.testing.assert_allclose(w_np, w_nb, rtol=1e-13)

    def test_trajectories(self):
        rng = np.random.default_rng(6)
        values = rng.uniform(0, 180, size=(120, 5))
        weights = rng.dirichlet(np.ones(5), size=32)
        np.testing.assert_array_equal(
            _kernels.trajectories_np(values, weights),
            _kernels.trajectories_nb(values, weights))


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, PACI_NUMBA="0")
    out = subprocess.run(
        [sys.executable, "-c", "from paci import _kernels; print(_kernels.backend())"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_backend_reports_a_known_name():
    assert _kernels.backend() in ("numba", "numpy")
