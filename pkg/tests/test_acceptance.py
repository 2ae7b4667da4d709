"""Release acceptance gate: ten structural criteria, one line each.

Every test prints ``ACCEPTANCE NN <label> ... PASS|FAIL`` so a log scrape
shows the whole gate at a glance.  Tolerances are pinned constants; the
random draws are seeded, so every run checks the identical sample.
"""

import math

import numpy as np

from lagsem import (
    ComplexPoly,
    InitialData,
    RadialProblem,
    coefficient_ode_oracle,
    decay_profile,
    exp_delta_decomposed,
    exp_delta_series,
    exp_integral,
    exp_shifted,
    gauss_laguerre,
    kappa,
    kappa_bruteforce,
    lift_params,
    modified_bessel_i,
    radial_identity_check,
    solve_cauchy,
    solve_cauchy_nd,
    trotter_convergence,
    w_theta,
    zero_preservation_suite,
)
from lagsem.verify import norm_bound_suite

# pinned gate tolerances
TOL_THREE_WAY = 1e-7
TOL_KAPPA = 1e-9
TOL_REPRODUCING = 1e-8
TOL_BESSEL = 1e-9
TOL_SOLVER_VS_ODE = 1e-7
TOL_PDE_RESIDUAL = 1e-4
TROTTER_RATE_BAND = (0.25 * 0.7, 0.25 * 1.3)  # 1/4 within +-30%
TOL_RADIAL_IDENTITY = 1e-10
TOL_ND_VS_1D = 1e-9
TOL_DRIFTLESS_LIMIT = 1e-6
DECAY_FINAL_OVER_FIRST = 0.05


def _report(num: int, label: str, ok: bool) -> None:
    print(f"ACCEPTANCE {num:02d} {label} ... {'PASS' if ok else 'FAIL'}", flush=True)


def test_criterion_01_three_way_operator_agreement():
    # series, splitting, and kernel-quadrature realizations of exp(a*Delta)
    # on random polynomials over the standard parameter grid.  Sample
    # points are drawn in the sector |arg z| <= 1 with 0.15 <= |z| <= 3:
    # polynomial evaluation near the negative real axis is dominated by
    # coefficient cancellation, which would measure conditioning of the
    # evaluation rather than disagreement of the routes.
    rng = np.random.default_rng(20260823)
    ang = rng.uniform(-1.0, 1.0, size=20)
    rad = rng.uniform(0.15, 3.0, size=20)
    zs = rad * np.exp(1j * ang)
    worst = 0.0
    for theta in (0.5, 1.0, 2.5):
        for omega in (-0.5, 0.0, 0.7):
            for a in (0.1, 1.0):
                deg = int(rng.integers(1, 9))
                f = ComplexPoly(
                    tuple(rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1))
                )
                dec = exp_delta_decomposed(f, theta, omega, a)
                ser = exp_delta_series(f, theta, omega, a)
                vd, vs = dec(zs), ser(zs)
                vi = exp_integral(f, theta, omega, a, zs)
                scale = np.maximum(np.abs(vd), 1e-12)
                worst = max(
                    worst,
                    float(np.max(np.abs(vd - vs) / scale)),
                    float(np.max(np.abs(vd - vi) / scale)),
                )
    ok = worst <= TOL_THREE_WAY
    _report(1, "three-way operator agreement", ok)
    assert ok, f"worst relative spread {worst:.3e} > {TOL_THREE_WAY}"


def test_criterion_02_kappa_oracle_equivalence():
    # closed-form coefficients against the direct operator power expansion
    worst = 0.0
    for theta in (0.0, 0.5, 1.0, 2.0):
        for omega in (-1.0, -0.1, 0.0, 0.1, 1.0):
            for m in range(0, 9):
                for k in range(0, 9):
                    for n in range(0, 9):
                        want = kappa_bruteforce(n, k, m, theta, omega)
                        got = kappa(n, k, m, theta, omega)
                        denom = max(abs(want), 1.0)
                        worst = max(worst, abs(got - want) / denom)
    ok = worst <= TOL_KAPPA
    _report(2, "kappa oracle equivalence", ok)
    assert ok, f"worst relative deviation {worst:.3e} > {TOL_KAPPA}"


def test_criterion_03_reproducing_identity():
    # int_0^inf w_theta(z s) s^(theta-1) e^-s ds = e^z with the
    # unnormalized Gauss weights (total mass Gamma(theta))
    worst = 0.0
    zs = np.linspace(0.0, 5.0, 11)
    for theta in (0.5, 1.0, 2.5):
        rule = gauss_laguerre(theta, 64)
        s = rule.nodes_array()
        w = rule.weights_array()
        for z in zs:
            got = float(np.sum(w * np.array([complex(w_theta(theta, z * si)).real for si in s])))
            want = math.exp(z)
            worst = max(worst, abs(got - want) / want)
    ok = worst <= TOL_REPRODUCING
    _report(3, "reproducing identity", ok)
    assert ok, f"worst relative error {worst:.3e} > {TOL_REPRODUCING}"


def test_criterion_04_bessel_cross_check():
    # w_theta(xi) = xi^((1-theta)/2) I_{theta-1}(2 sqrt xi), with the
    # right side summed by the independent Bessel series
    worst = 0.0
    for theta in (0.5, 1.0, 2.0, 3.7):
        for xi in (0.1, 1.0, 10.0, 100.0):
            got = complex(w_theta(theta, xi))
            want = xi ** ((1.0 - theta) / 2.0) * modified_bessel_i(
                theta - 1.0, 2.0 * math.sqrt(xi)
            )
            worst = max(worst, abs(got - want) / abs(want))
    ok = worst <= TOL_BESSEL
    _report(4, "Bessel cross-check", ok)
    assert ok, f"worst relative deviation {worst:.3e} > {TOL_BESSEL}"


def test_criterion_05_cauchy_solver_vs_ode_oracle():
    # (a) closed-form evolution against RK4 integration of the coefficient
    # ODE system over the standard grid
    rng = np.random.default_rng(55)
    worst = 0.0
    for theta in (0.5, 1.0, 2.5):
        for omega in (-0.5, 0.0, 0.7):
            for t in (0.1, 1.0):
                deg = int(rng.integers(1, 9))
                g = ComplexPoly(
                    tuple(rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1))
                )
                want = exp_delta_decomposed(g, theta, omega, t)
                got = coefficient_ode_oracle(g, theta, omega, t)
                n = max(len(want.coeffs), len(got.coeffs))
                wa = np.zeros(n, dtype=np.complex128)
                wa[: len(want.coeffs)] = want.coeffs
                ga = np.zeros(n, dtype=np.complex128)
                ga[: len(got.coeffs)] = got.coeffs
                scale = max(float(np.max(np.abs(wa))), 1.0)
                worst = max(worst, float(np.max(np.abs(wa - ga))) / scale)
    ok_ode = worst <= TOL_SOLVER_VS_ODE

    # (b) PDE residual d/dt f = (theta + omega z) f' + z f'' by central
    # differences in t, spatial side from the exact shifted form
    data = InitialData(1.0, ComplexPoly((1.0, 0.5, 0.25)))
    theta, omega, t = 1.5, 0.4, 0.7
    zpts = np.linspace(0.2, 2.5, 7)
    res, h_t = exp_shifted(data.h, -data.epsilon, theta, omega, t)
    hd = h_t.derivative()
    hdd = hd.derivative()
    rate = res.new_rate

    def residual(delta: float) -> float:
        worst_r = 0.0
        for z in zpts:
            fp = solve_cauchy(data, theta, omega, t + delta, complex(z))
            fm = solve_cauchy(data, theta, omega, t - delta, complex(z))
            dfdt = (fp - fm) / (2.0 * delta)
            pref = res.prefactor * np.exp(rate * z)
            fz = pref * (rate * h_t(z) + hd(z))
            fzz = pref * (rate * rate * h_t(z) + 2.0 * rate * hd(z) + hdd(z))
            rhs = (theta + omega * z) * fz + z * fzz
            worst_r = max(worst_r, abs(dfdt - rhs))
        return worst_r

    r1 = residual(1e-3)
    r2 = residual(5e-4)
    ok_pde = r1 <= TOL_PDE_RESIDUAL and r2 <= TOL_PDE_RESIDUAL
    # halving the step must shrink the residual like delta^2, confirming
    # the measured residual is discretization error, not solver error
    ok_rich = 0.15 <= r2 / r1 <= 0.4
    ok = ok_ode and ok_pde and ok_rich
    _report(5, "Cauchy solver vs ODE oracle", ok)
    assert ok_ode, f"worst coefficient deviation {worst:.3e} > {TOL_SOLVER_VS_ODE}"
    assert ok_pde, f"PDE residuals {r1:.3e}, {r2:.3e} > {TOL_PDE_RESIDUAL}"
    assert ok_rich, f"residual ratio {r2 / r1:.3f} outside (0.15, 0.4)"


def test_criterion_06_zero_preservation():
    # 200 trials per asserted configuration: general nonpositive-rooted
    # symbols with omega >= 0, and exponential symbols at mixed rates
    rep = zero_preservation_suite(seed=2024, trials=200)
    general = rep["sections"]["general"]
    expo = rep["sections"]["exponential"]
    ok = (
        general["asserted"]
        and expo["asserted"]
        and general["violation_count"] == 0
        and expo["violation_count"] == 0
        and rep["asserted_violations"] == 0
    )
    _report(6, "zero preservation", ok)
    assert ok, (
        f"asserted violations: general {general['violation_count']}, "
        f"exponential {expo['violation_count']}"
    )


def test_criterion_07_trotter_kato_rate():
    # alternating dilation/theta-flow products converge at rate O(1/n):
    # quadrupling n must cut the error by ~4 (within +-30%)
    errs = trotter_convergence(
        ComplexPoly((0.0, 0.0, 0.0, 1.0)), 1.0, 1.0, 1.0, [4, 16, 64]
    )
    ratios = [errs[1] / errs[0], errs[2] / errs[1]]
    lo, hi = TROTTER_RATE_BAND
    ok = all(lo <= r <= hi for r in ratios) and errs[2] < errs[1] < errs[0]
    _report(7, "Trotter-Kato first-order rate", ok)
    assert ok, f"errors {errs}, ratios {ratios} not in [{lo:.3f}, {hi:.3f}]"


def test_criterion_08_norm_bound():
    # the weighted-norm inequality in 100/100 randomized admissible cases
    rep = norm_bound_suite(seed=2024, cases=100)
    ok = rep["ok"] and rep["checked"] == 100 and rep["failure_count"] == 0
    _report(8, "norm bound inequality", ok)
    assert ok, f"failures: {rep['failure_count']} of {rep['checked']}"


def test_criterion_09_radial_reduction():
    # (a) pointwise generator identity on random polynomial profiles
    rng = np.random.default_rng(9)
    worst_id = 0.0
    for _ in range(30):
        deg = int(rng.integers(1, 6))
        f = ComplexPoly(tuple(rng.normal(size=deg + 1)))
        N = int(rng.integers(1, 5))
        d = float(rng.uniform(-N, 3.0))
        b = float(rng.uniform(-1.0, 2.0))
        x = rng.uniform(0.2, 2.0, size=N)
        worst_id = max(worst_id, radial_identity_check(f, N, d, b, x))
    ok_id = worst_id <= TOL_RADIAL_IDENTITY

    # (b) N-d solver equals the lifted 1-d solver at 50 random (t, x)
    rng_b = np.random.default_rng(90)
    worst_nd = 0.0
    for _ in range(50):
        deg = int(rng_b.integers(1, 6))
        g = ComplexPoly(tuple(rng_b.normal(size=deg + 1)))
        N = int(rng_b.integers(1, 5))
        d = float(rng_b.uniform(-N, 3.0))
        b = float(rng_b.uniform(-1.0, 1.5))
        t = float(rng_b.uniform(0.05, 1.0))
        data = InitialData(0.0, g)
        prob = RadialProblem(N, d, b, data)
        x = rng_b.uniform(-1.5, 1.5, size=(1, N))
        theta, omega = lift_params(N, d, b)
        want = solve_cauchy(data, theta, omega, 4.0 * t, complex(np.dot(x[0], x[0])))
        got = solve_cauchy_nd(prob, t, x)[0]
        worst_nd = max(worst_nd, abs(got - want) / max(abs(want), 1.0))
    ok_nd = worst_nd <= TOL_ND_VS_1D

    # (c) vanishing drift, d = 0: U = (x,x) + 2 N t
    worst_lim = 0.0
    for N in (2, 3):
        prob = RadialProblem(N, 0.0, 1e-9, InitialData(0.0, ComplexPoly((0.0, 1.0))))
        t = 0.8
        x = np.full((1, N), 1.0)
        got = solve_cauchy_nd(prob, t, x)[0].real
        worst_lim = max(worst_lim, abs(got - (N + 2.0 * N * t)))
    ok_lim = worst_lim <= TOL_DRIFTLESS_LIMIT

    # anchor: quadratic-in-radius flow with closed-form coefficients
    prob = RadialProblem(3, 1.0, 2.0, InitialData(0.0, ComplexPoly((0.0, 1.0))))
    anchor = solve_cauchy_nd(prob, 0.5, [1.0, 1.0, 1.0])[0].real
    ok_anchor = abs(anchor - 34.94528049465325) <= 1e-9 * abs(anchor)

    ok = ok_id and ok_nd and ok_lim and ok_anchor
    _report(9, "N-d radial reduction", ok)
    assert ok_id, f"identity residual {worst_id:.3e} > {TOL_RADIAL_IDENTITY}"
    assert ok_nd, f"nd-vs-1d deviation {worst_nd:.3e} > {TOL_ND_VS_1D}"
    assert ok_lim, f"driftless limit deviation {worst_lim:.3e} > {TOL_DRIFTLESS_LIMIT}"
    assert ok_anchor, f"anchor value {anchor!r} != 34.94528049465325"


def test_criterion_10_decay_profile():
    # eps = 1, theta = 1, omega = 0, norms at b = 2: profile must decrease
    # strictly with final/first <= 0.05
    data = InitialData(1.0, ComplexPoly((1.0,)))
    vals = decay_profile(data, 1.0, 0.0, (1.0, 10.0, 100.0), 2.0)
    decreasing = all(lo < hi for lo, hi in zip(vals[1:], vals[:-1]))
    final_over_first = vals[-1] / vals[0]
    ok = decreasing and final_over_first <= DECAY_FINAL_OVER_FIRST
    _report(10, "norm decay profile", ok)
    assert ok, f"profile {vals}, final/first {final_over_first:.4f}"
    assert vals[0] == 0.5
    assert abs(vals[1] - 1.0 / 11.0) < 1e-12
    assert abs(vals[2] - 1.0 / 101.0) < 1e-12
