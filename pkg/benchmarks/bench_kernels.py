"""Compare the numba kernels against the pure-numpy fallbacks.

Run:  python benchmarks/bench_kernels.py [--days 2000] [--samples 4000]

The numba path must be active (PACI_NUMBA unset or "1"); both
implementations are imported explicitly so one process times both.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from paci import _kernels


def _time(fn, *args, repeat=5):
    fn(*args)  # warm-up / jit compile
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--days", type=int, default=2000)
    parser.add_argument("--samples", type=int, default=4000)
    args = parser.parse_args()

    if not _kernels.NUMBA_ACTIVE:
        raise SystemExit("numba backend inactive; unset PACI_NUMBA to benchmark")

    rng = np.random.default_rng(0)
    t = np.arange(args.days, dtype=np.float64)
    cases = np.round(
        100 + 2500 * np.exp(-(((t % 500) - 250) / 90.0) ** 2)
        + rng.integers(0, 50, args.days)
    ).astype(np.float64)
    deaths = np.round(cases * 0.012)
    coeffs = rng.uniform(0, 180, size=(args.days, 5))
    lower = np.clip(np.full(5, 0.2) * 0.9, 0, 1)
    upper = np.clip(np.full(5, 0.2) * 1.1, 0, 1)
    values = rng.uniform(0, 180, size=(args.days, 5))
    weights = rng.dirichlet(np.ones(5), size=args.samples)

    rows = [
        ("rolling_sum", (cases, 7),
         _kernels.rolling_sum_np, _kernels.rolling_sum_nb),
        ("growth_ratio_series", (cases,),
         _kernels.growth_ratio_series_np, _kernels.growth_ratio_series_nb),
        ("lethality_series", (deaths, cases),
         _kernels.lethality_series_np, _kernels.lethality_series_nb),
        ("box_simplex_optimize", (coeffs, lower, upper, True),
         _kernels.box_simplex_optimize_np, _kernels.box_simplex_optimize_nb),
        ("trajectories", (values, weights),
         _kernels.trajectories_np, _kernels.trajectories_nb),
    ]

    print(f"days={args.days} samples={args.samples}")
    print(f"{'kernel':<22}{'numpy (ms)':>12}{'numba (ms)':>12}{'speedup':>9}")
    for name, call_args, np_fn, nb_fn in rows:
        t_np = _time(np_fn, *call_args) * 1e3
        t_nb = _time(nb_fn, *call_args) * 1e3
        print(f"{name:<22}{t_np:>12.3f}{t_nb:>12.3f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
