"""Radial reduction of drifted heat flows on R^N.

The lift ``theta = (N+d)/2, omega = b/2, a = 4t`` is checked three ways:
the pointwise generator identity via the chain rule, agreement of the
N-dimensional solver with the 1-d solver on the squared radius, and a
closed-form flow whose coefficients solve the projected ODE system
``A' = 2bA, B' = 2(N+d)A`` exactly.
"""

import math

import numpy as np
import pytest

from lagsem import (
    ComplexPoly,
    InitialData,
    RadialProblem,
    lift_params,
    lift_time,
    radial_identity_check,
    solve_cauchy,
    solve_cauchy_nd,
)


# ---------------------------------------------------------------------------
# parameter lift
# ---------------------------------------------------------------------------


def test_lift_params_values():
    assert lift_params(3, 0.0, 0.0) == (1.5, 0.0)
    assert lift_params(1, -1.0, 4.0) == (0.0, 2.0)
    assert lift_params(2, 2.0, -2.0) == (2.0, -1.0)


def test_lift_params_validation():
    with pytest.raises(ValueError):
        lift_params(0, 0.0, 0.0)
    with pytest.raises(ValueError):
        lift_params(2, -2.5, 0.0)  # d < -N
    with pytest.raises(ValueError):
        lift_params(2, math.nan, 0.0)
    lift_params(2, -2.0, 0.0)  # boundary theta = 0 is allowed


def test_lift_time():
    assert lift_time(0.25) == 1.0
    assert lift_time(0.0) == 0.0
    with pytest.raises(ValueError):
        lift_time(-1.0)


def test_radial_problem_container():
    prob = RadialProblem(3, 1.0, 2.0, InitialData(0.0, ComplexPoly((0.0, 1.0))))
    assert prob.lifted == (2.0, 1.0)
    with pytest.raises(ValueError):
        RadialProblem(0, 0.0, 0.0, InitialData(0.0, ComplexPoly((1.0,))))
    with pytest.raises(TypeError):
        RadialProblem(2, 0.0, 0.0, ComplexPoly((1.0,)))


# ---------------------------------------------------------------------------
# generator identity
# ---------------------------------------------------------------------------


def test_radial_identity_constant_profile():
    assert radial_identity_check(ComplexPoly((5.0,)), 3, 1.0, 0.5, [1.0, 0.0, 0.0]) == 0.0


def test_radial_identity_linear_profile_exact():
    # f = z, N = 3, d = b = 0: LHS = 2N f' = 6, RHS = 4 theta = 6
    for x in ([1.0, 0.0, 0.0], [0.3, -0.7, 1.1]):
        assert radial_identity_check(ComplexPoly((0.0, 1.0)), 3, 0.0, 0.0, x) == 0.0


def test_radial_identity_quadratic_profile():
    res = radial_identity_check(ComplexPoly((0.0, 0.0, 1.0)), 2, 2.0, 1.0, [1.0, 1.0])
    assert res <= 1e-10


def test_radial_identity_random_profiles():
    rng = np.random.default_rng(31)
    for _ in range(25):
        deg = int(rng.integers(1, 6))
        f = ComplexPoly(tuple(rng.normal(size=deg + 1)))
        N = int(rng.integers(1, 5))
        d = float(rng.uniform(-N, 3.0))
        b = float(rng.uniform(-1.0, 2.0))
        x = rng.uniform(0.2, 2.0, size=N)
        scale = max(1.0, float(np.max(np.abs(f.as_array()))))
        assert radial_identity_check(f, N, d, b, x) <= 1e-9 * scale


def test_radial_identity_domain_errors():
    with pytest.raises(ValueError):
        radial_identity_check(ComplexPoly((0.0, 1.0)), 2, 1.0, 0.0, [0.0, 0.0])
    with pytest.raises(ValueError):
        radial_identity_check(ComplexPoly((0.0, 1.0)), 2, 0.0, 0.0, [1.0, 1.0, 1.0])
    with pytest.raises(TypeError):
        radial_identity_check([0.0, 1.0], 2, 0.0, 0.0, [1.0, 1.0])


# ---------------------------------------------------------------------------
# N-dimensional solver
# ---------------------------------------------------------------------------


def test_solve_nd_constant_datum():
    prob = RadialProblem(3, 1.0, 0.5, InitialData(0.0, ComplexPoly((1.0,))))
    xs = np.array([[1.0, 0.0, 0.0], [0.5, 0.5, 0.5]])
    assert np.allclose(solve_cauchy_nd(prob, 0.7, xs), 1.0, rtol=1e-12)


def test_solve_nd_pure_heat_flow():
    # b = d = 0: U(t, x) = (x,x) + 2 N t
    prob = RadialProblem(3, 0.0, 0.0, InitialData(0.0, ComplexPoly((0.0, 1.0))))
    val = solve_cauchy_nd(prob, 1.0, [1.0, 0.0, 0.0])
    assert complex(val[0]).real == pytest.approx(7.0, rel=1e-12)


def test_solve_nd_drifted_flow_frozen():
    # G = (x,x), N = 3, d = 1, b = 2, t = 0.5: the ansatz U = A(t)(x,x)+B(t)
    # solves A' = 2bA, B' = 2(N+d)A, so U = e^2 (x,x) + 2(e^2 - 1)
    prob = RadialProblem(3, 1.0, 2.0, InitialData(0.0, ComplexPoly((0.0, 1.0))))
    val = solve_cauchy_nd(prob, 0.5, [1.0, 1.0, 1.0])
    assert complex(val[0]).real == pytest.approx(34.94528049465325, rel=1e-12)
    want = math.e**2 * 3.0 + 2.0 * (math.e**2 - 1.0)
    assert complex(val[0]).real == pytest.approx(want, rel=1e-13)


def test_solve_nd_small_drift_matches_zero_drift():
    g = ComplexPoly((1.0, 0.5, -0.2))
    base = RadialProblem(2, 0.0, 0.0, InitialData(0.0, g))
    tiny = RadialProblem(2, 0.0, 1e-9, InitialData(0.0, g))
    xs = np.array([[0.5, 0.5], [1.0, -1.0]])
    v0 = solve_cauchy_nd(base, 0.6, xs)
    v1 = solve_cauchy_nd(tiny, 0.6, xs)
    assert np.max(np.abs(v1 - v0)) <= 1e-6


def test_solve_nd_matches_one_dimensional_solver():
    rng = np.random.default_rng(32)
    for _ in range(20):
        deg = int(rng.integers(1, 6))
        g = ComplexPoly(tuple(rng.normal(size=deg + 1)))
        N = int(rng.integers(1, 5))
        d = float(rng.uniform(-N, 3.0))
        b = float(rng.uniform(-1.0, 1.5))
        t = float(rng.uniform(0.05, 1.0))
        data = InitialData(0.0, g)
        prob = RadialProblem(N, d, b, data)
        xs = rng.uniform(-1.5, 1.5, size=(4, N))
        theta, omega = lift_params(N, d, b)
        want = solve_cauchy(data, theta, omega, 4.0 * t, np.einsum("ij,ij->i", xs, xs))
        got = solve_cauchy_nd(prob, t, xs)
        assert np.allclose(got, want, rtol=1e-9, atol=1e-12)


def test_solve_nd_rotation_invariance():
    rng = np.random.default_rng(33)
    N = 4
    prob = RadialProblem(
        N, 0.5, -0.3, InitialData(0.2, ComplexPoly((1.0, 0.4, 0.1)))
    )
    q, _ = np.linalg.qr(rng.normal(size=(N, N)))
    xs = rng.uniform(-1.0, 1.0, size=(5, N))
    v = solve_cauchy_nd(prob, 0.4, xs)
    v_rot = solve_cauchy_nd(prob, 0.4, xs @ q.T)
    assert np.allclose(v, v_rot, rtol=1e-12)


def test_solve_nd_shape_validation():
    prob = RadialProblem(3, 0.0, 0.0, InitialData(0.0, ComplexPoly((1.0,))))
    with pytest.raises(ValueError):
        solve_cauchy_nd(prob, 0.5, [[1.0, 2.0]])  # width 2, dimension 3
    with pytest.raises(TypeError):
        solve_cauchy_nd("prob", 0.5, [[1.0, 2.0, 3.0]])
