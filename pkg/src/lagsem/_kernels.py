"""Hot numeric kernels, in numba and pure-numpy flavours.

Three loops dominate the runtime of the package: the power-series
evaluation of the kernel function ``w_theta`` over arrays of arguments,
the coefficient transform implementing ``exp(gamma * Delta_theta)`` on
polynomials, and the RK4 integrator used as an independent oracle for
the coefficient ODE.  Each has a plain-loop implementation (compiled
with ``@njit`` when numba is active) and a vectorized numpy twin.  The
public names ``wtheta_series``, ``exp_delta_theta_coeffs`` and
``rk4_coeff`` dispatch on :data:`lagsem._accel.USE_NUMBA`.

All kernels take contiguous ``complex128`` arrays; argument validation
lives in the calling modules.
"""

from __future__ import annotations

import math

import numpy as np

from ._accel import USE_NUMBA

# ---------------------------------------------------------------------------
# w_theta series: w(xi) = sum_k xi^k / (k! Gamma(theta + k))
#
# Term recurrence t_{k+1} = t_k * xi / ((k+1)(theta+k)).  For theta == 0 the
# k = 0 term is 1/Gamma(0) = 0, so the sum starts at t_1 = xi.  Term moduli
# are unimodal in k, so a single relative smallness test cannot fire early
# during the growing phase.
# ---------------------------------------------------------------------------


def _wtheta_series_loop(theta, xi, tol, max_terms):
    out = np.empty(xi.shape[0], dtype=np.complex128)
    for i in range(xi.shape[0]):
        x = xi[i]
        if theta > 0.0:
            term = 1.0 / math.gamma(theta) + 0.0j
            k = 0
        else:
            term = x
            k = 1
        total = term
        while k < max_terms:
            term = term * x / ((k + 1.0) * (theta + k))
            total = total + term
            k += 1
            if abs(term) <= tol * (abs(total) + 1e-300):
                break
        out[i] = total
    return out


def wtheta_series_numpy(theta, xi, tol, max_terms):
    xi = np.ascontiguousarray(xi, dtype=np.complex128)
    if theta > 0.0:
        term = np.full(xi.shape, 1.0 / math.gamma(theta), dtype=np.complex128)
        k = 0
    else:
        term = xi.copy()
        k = 1
    total = term.copy()
    while k < max_terms:
        term *= xi / ((k + 1.0) * (theta + k))
        total += term
        k += 1
        if np.all(np.abs(term) <= tol * (np.abs(total) + 1e-300)):
            break
    return total


# ---------------------------------------------------------------------------
# exp(gamma * Delta_theta) on coefficient vectors.
#
# Image coefficient: out[m-k] += c[m] * gamma^k / k! * q_theta^{(m,k)} with
# q updated incrementally, q^{(m,k)} = q^{(m,k-1)} * (m-k+1)(theta+m-k).
# The theta = 0 pole convention (1/Gamma(0) = 0) falls out of the zero factor
# at theta + m - k = 0; no special casing.
# ---------------------------------------------------------------------------


def _exp_delta_theta_loop(c, gamma, theta):
    n = c.shape[0]
    out = np.zeros(n, dtype=np.complex128)
    for m in range(n):
        w = c[m]
        out[m] += w
        for k in range(1, m + 1):
            w = w * (gamma * (m - k + 1.0) * (theta + m - k) / k)
            out[m - k] += w
    return out


def exp_delta_theta_numpy(c, gamma, theta):
    n = c.shape[0]
    out = c.astype(np.complex128).copy()
    w = c.astype(np.complex128).copy()
    m = np.arange(n, dtype=np.float64)
    for k in range(1, n):
        # entries with m < k pick up a zero factor and drop out on their own
        w *= (gamma / k) * (m - k + 1.0) * (theta + m - k)
        out[: n - k] += w[k:]
    return out


# ---------------------------------------------------------------------------
# RK4 for the coefficient ODE dc_m/dt = (m+1)(theta+m) c_{m+1} + omega m c_m.
# ---------------------------------------------------------------------------


def _ode_rhs_loop(c, a1, a2, out):
    n = c.shape[0]
    for m in range(n - 1):
        out[m] = a2[m] * c[m] + a1[m] * c[m + 1]
    out[n - 1] = a2[n - 1] * c[n - 1]


def _rk4_coeff_loop(c0, theta, omega, t, steps):
    n = c0.shape[0]
    a1 = np.empty(n, dtype=np.float64)
    a2 = np.empty(n, dtype=np.float64)
    for m in range(n):
        a1[m] = (m + 1.0) * (theta + m)
        a2[m] = omega * m
    h = t / steps
    c = c0.copy()
    tmp = np.empty(n, dtype=np.complex128)
    k1 = np.empty(n, dtype=np.complex128)
    k2 = np.empty(n, dtype=np.complex128)
    k3 = np.empty(n, dtype=np.complex128)
    k4 = np.empty(n, dtype=np.complex128)
    for _ in range(steps):
        _ode_rhs(c, a1, a2, k1)
        for m in range(n):
            tmp[m] = c[m] + 0.5 * h * k1[m]
        _ode_rhs(tmp, a1, a2, k2)
        for m in range(n):
            tmp[m] = c[m] + 0.5 * h * k2[m]
        _ode_rhs(tmp, a1, a2, k3)
        for m in range(n):
            tmp[m] = c[m] + h * k3[m]
        _ode_rhs(tmp, a1, a2, k4)
        for m in range(n):
            c[m] = c[m] + (h / 6.0) * (k1[m] + 2.0 * (k2[m] + k3[m]) + k4[m])
    return c


def rk4_coeff_numpy(c0, theta, omega, t, steps):
    n = c0.shape[0]
    m = np.arange(n, dtype=np.float64)
    a1 = (m + 1.0) * (theta + m)
    a2 = omega * m

    def rhs(c):
        d = a2 * c
        d[:-1] += a1[:-1] * c[1:]
        return d

    h = t / steps
    c = c0.astype(np.complex128).copy()
    for _ in range(steps):
        k1 = rhs(c)
        k2 = rhs(c + (0.5 * h) * k1)
        k3 = rhs(c + (0.5 * h) * k2)
        k4 = rhs(c + h * k3)
        c = c + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
    return c


if USE_NUMBA:
    from numba import njit

    wtheta_series = njit(cache=True)(_wtheta_series_loop)
    exp_delta_theta_coeffs = njit(cache=True)(_exp_delta_theta_loop)
    _ode_rhs = njit(cache=True)(_ode_rhs_loop)
    rk4_coeff = njit(cache=True)(_rk4_coeff_loop)
else:
    wtheta_series = wtheta_series_numpy
    exp_delta_theta_coeffs = exp_delta_theta_numpy
    _ode_rhs = _ode_rhs_loop
    rk4_coeff = rk4_coeff_numpy
