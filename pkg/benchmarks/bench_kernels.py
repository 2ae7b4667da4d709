"""Benchmark the compiled hot-loop kernels against their numpy twins.

Times the three kernels that dominate wall-clock in this package — the
entire-kernel-function series over node arrays, the heat-factor
coefficient transform, and the RK4 coefficient oracle — once through
the dispatched path (numba-compiled unless LAGSEM_NO_NUMBA=1 or numba
is missing) and once through the pure-numpy implementations.

Run:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from lagsem._accel import USE_NUMBA
from lagsem._kernels import (
    exp_delta_theta_coeffs,
    exp_delta_theta_numpy,
    rk4_coeff,
    rk4_coeff_numpy,
    wtheta_series,
    wtheta_series_numpy,
)

REPEATS = 7


def best_of(fn, *args, repeats=REPEATS):
    """Best wall time in seconds over ``repeats`` runs (first run warms JIT)."""
    fn(*args)
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    rng = np.random.default_rng(0)

    xi = (rng.uniform(0.1, 300.0, size=20_000)
          + 1j * rng.uniform(-50.0, 50.0, size=20_000))
    coeffs = rng.standard_normal(2_000) + 1j * rng.standard_normal(2_000)
    c0 = rng.standard_normal(64) + 1j * rng.standard_normal(64)

    # gamma kept small: a long series under a large heat step has
    # genuinely astronomical output coefficients (the peak ring scales
    # like gamma^k (deg!)^2 / ((deg-k)!^2 k!)), which is an overflow of
    # the problem, not of the kernel.
    cases = [
        ("wtheta_series (20k nodes)",
         wtheta_series, wtheta_series_numpy,
         (1.5, xi, 1e-15, 200_000)),
        ("exp_delta_theta (deg 2000)",
         exp_delta_theta_coeffs, exp_delta_theta_numpy,
         (coeffs, 1e-4, 1.5)),
        ("rk4_coeff (deg 64, 2000 steps)",
         rk4_coeff, rk4_coeff_numpy,
         (c0, 1.0, 0.5, 1.0, 2000)),
    ]

    label = "numba" if USE_NUMBA else "loop (numba disabled)"
    print(f"dispatched path: {label}")
    print(f"{'kernel':<34} {'dispatched':>12} {'numpy':>12} {'speedup':>9}")
    for name, fast, twin, args in cases:
        t_fast = best_of(fast, *args)
        t_twin = best_of(twin, *args)
        print(f"{name:<34} {t_fast * 1e3:>10.2f}ms {t_twin * 1e3:>10.2f}ms "
              f"{t_twin / t_fast:>8.1f}x")
        ref = np.asarray(twin(*args))
        got = np.asarray(fast(*args))
        err = float(np.max(np.abs(got - ref)) / (np.max(np.abs(ref)) + 1e-300))
        if err > 1e-12:
            print(f"  WARNING: paths disagree (rel {err:.2e})")


if __name__ == "__main__":
    main()
