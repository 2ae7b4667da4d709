"""Radial reduction of drifted heat flows on R^N to the 1-d calculus.

For radial profiles ``F(x) = f((x,x))`` the generator

    Laplacian F + (d/(x,x) + b) (x . grad F)

collapses to ``4 [(theta + omega z) D + z D^2] f`` at ``z = (x,x)`` with

    theta = (N + d) / 2,    omega = b / 2,

so the Cauchy problem ``dU/dt = Laplacian U + (d/(x,x) + b) x.grad U`` with
radial data ``G(x) = g((x,x))`` is solved by ``U(t, x) = f(4t, (x,x))``
where ``f`` evolves under ``exp(a*Delta)`` with ``a = 4t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ComplexPoly
from .operator import apply_delta
from .semigroup import InitialData, solve_cauchy

__all__ = [
    "RadialProblem",
    "lift_params",
    "lift_time",
    "radial_identity_check",
    "solve_cauchy_nd",
]


def lift_params(N: int, d: float, b: float) -> tuple[float, float]:
    """Map drift parameters to the 1-d operator pair ``(theta, omega)``.

    ``theta = (N+d)/2`` requires ``d >= -N``; ``omega = b/2``.  Combine
    with :func:`lift_time` (``a = 4t``) to evolve the radial profile.
    """
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise ValueError("dimension N must be an integer >= 1")
    d = float(d)
    b = float(b)
    if not (math.isfinite(d) and math.isfinite(b)):
        raise ValueError("drift parameters must be finite reals")
    if d < -N:
        raise ValueError("drift strength d must satisfy d >= -N (theta >= 0)")
    return (N + d) / 2.0, b / 2.0


def lift_time(t: float) -> float:
    """Effective 1-d evolution time for physical time ``t``: ``a = 4t``."""
    t = float(t)
    if not (math.isfinite(t) and t >= 0):
        raise ValueError("time t must be a finite real >= 0")
    return 4.0 * t


@dataclass(frozen=True)
class RadialProblem:
    """Drifted radial Cauchy problem on R^N with data ``g((x,x))``."""

    dim_n: int
    drift_d: float
    drift_b: float
    data: InitialData

    def __post_init__(self):
        lift_params(self.dim_n, self.drift_d, self.drift_b)  # validates
        if not isinstance(self.data, InitialData):
            raise TypeError("data must be an InitialData value")

    @property
    def lifted(self) -> tuple[float, float]:
        return lift_params(self.dim_n, self.drift_d, self.drift_b)


def radial_identity_check(
    f: ComplexPoly, N: int, d: float, b: float, x
) -> float:
    """Residual of the generator identity at one point.

    Computes ``|LHS - RHS|`` where LHS applies the N-dimensional generator
    to ``F(x) = f((x,x))`` by the chain rule and RHS is
    ``4 (Delta_{theta,omega} f)((x,x))`` with the lifted parameters.  The
    drift is singular at the origin, so ``x = 0`` with ``d != 0`` is a
    domain error.
    """
    if not isinstance(f, ComplexPoly):
        raise TypeError("radial profile must be a ComplexPoly")
    theta, omega = lift_params(N, d, b)
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or len(x) != N:
        raise ValueError(f"sample point must be a real vector of length {N}")
    r = float(np.dot(x, x))
    if r == 0.0 and float(d) != 0.0:
        raise ValueError("drift term d/(x,x) is singular at the origin")
    fp = f.derivative()
    fpp = fp.derivative()
    # chain rule: grad F = 2 f'(r) x, Laplacian F = 2N f'(r) + 4 r f''(r),
    # x.grad F = 2 r f'(r); the d/r factor cancels one r exactly.
    lhs = 2.0 * N * fp(r) + 4.0 * r * fpp(r) + 2.0 * (float(d) + float(b) * r) * fp(r)
    rhs = 4.0 * apply_delta(f, theta, omega)(r)
    return abs(lhs - rhs)


def solve_cauchy_nd(prob: RadialProblem, t: float, xs) -> np.ndarray:
    """Evaluate the radial solution at sample points of R^N.

    ``xs`` is a sequence of real vectors (shape ``(k, N)``); the result
    holds ``U(t, x_i) = f(4t, (x_i, x_i))`` computed through the 1-d
    Cauchy solver with the lifted parameters.
    """
    if not isinstance(prob, RadialProblem):
        raise TypeError("prob must be a RadialProblem")
    theta, omega = prob.lifted
    xs = np.atleast_2d(np.asarray(xs, dtype=np.float64))
    if xs.shape[1] != prob.dim_n:
        raise ValueError(f"sample points must have length {prob.dim_n}")
    rs = np.einsum("ij,ij->i", xs, xs)
    return solve_cauchy(prob.data, theta, omega, lift_time(t), rs.astype(np.complex128))
