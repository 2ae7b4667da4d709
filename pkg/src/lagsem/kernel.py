"""Kernel function ``w_theta``, reproducing kernel and Gaussian quadrature.

The central special function is

    w_theta(xi) = sum_{k>=0} xi^k / (k! Gamma(theta + k)),

an entire function of order 1/2 related to the modified Bessel function by
``w_theta(xi) = xi^((1-theta)/2) I_{theta-1}(2 sqrt(xi))``.  The
reproducing kernel ``k_theta(z, s) = exp(-z) w_theta(z s)`` integrated
against the Gamma-type weight ``s^(theta-1) exp(-s)`` reproduces
exponentials, which is what the quadrature route of the semigroup builds
on.  Quadrature rules for that weight come from the Golub-Welsch
eigenproblem of the associated Jacobi matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.special as _sp
from scipy.linalg import eigh_tridiagonal

from . import _kernels

__all__ = [
    "ASYM_SWITCH",
    "recip_gamma",
    "w_theta",
    "w_theta_many",
    "log_w_theta_asym",
    "k_theta",
    "k_theta_row",
    "QuadratureRule",
    "gauss_laguerre",
]

# Real arguments beyond this switch to the logarithmic asymptotic branch.
ASYM_SWITCH = 400.0

# Largest |xi| accepted by the power-series branch.
_SERIES_CAP = 1e8
_MAX_TERMS = 200_000


def recip_gamma(x: float) -> float:
    """Reciprocal Gamma function ``1/Gamma(x)``.

    Entire in ``x``; evaluates to exactly ``0.0`` at the poles
    ``x = 0, -1, -2, ...``, which is the convention the ``theta = 0``
    operator calculus relies on.
    """
    return float(_sp.rgamma(x))


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not (math.isfinite(theta) and theta >= 0):
        raise ValueError("theta must be a finite real >= 0")
    return theta


def log_w_theta_asym(theta: float, xi: float) -> float:
    """Logarithm of ``w_theta`` on the large positive real axis.

    Parameters
    ----------
    theta : float
        Weight parameter, ``>= 0``.
    xi : float
        Real argument, should be ``>= ASYM_SWITCH`` for full accuracy.

    Returns
    -------
    float
        ``log w_theta(xi)`` from the Bessel large-argument expansion
        ``I_nu(x) ~ e^x/sqrt(2 pi x) * sum_k (-1)^k a_k(nu)/x^k`` with
        ``x = 2 sqrt(xi)``, ``nu = theta - 1``.  The correction series is
        truncated at its smallest term; for half-integer ``nu`` it
        terminates and the branch is exact to rounding.
    """
    theta = _check_theta(theta)
    xi = float(xi)
    if xi <= 0:
        raise ValueError("asymptotic branch needs a positive real argument")
    x = 2.0 * math.sqrt(xi)
    nu = theta - 1.0
    s = 1.0
    term = 1.0
    prev = math.inf
    for k in range(1, 40):
        term *= -(4.0 * nu * nu - (2.0 * k - 1.0) ** 2) / (8.0 * k * x)
        if abs(term) >= prev:
            break
        s += term
        prev = abs(term)
        if abs(term) <= 1e-18 * abs(s):
            break
    if s <= 0:
        raise ValueError("asymptotic correction series unusable at these parameters")
    return (
        x
        + (0.25 - 0.5 * theta) * math.log(xi)
        - math.log(2.0 * math.sqrt(math.pi))
        + math.log(s)
    )


def w_theta_many(theta: float, xi, tol: float = 1e-14) -> np.ndarray:
    """Evaluate ``w_theta`` on an array of complex arguments.

    Parameters
    ----------
    theta : float
        Weight parameter, ``>= 0``.
    xi : array_like of complex
        Arguments.  Entries on the positive real axis beyond
        ``ASYM_SWITCH`` use the asymptotic branch; everything else the
        power series with term recurrence
        ``t_{k+1} = t_k xi / ((k+1)(theta+k))``.
    tol : float
        Relative term tolerance for the series.

    Returns
    -------
    numpy.ndarray of complex

    Notes
    -----
    The series branch in 64-bit arithmetic loses relative accuracy like
    ``exp(2 sqrt(|xi|) sin^2(arg(xi)/2))`` because the term moduli exceed
    the result off the positive axis; arguments with strongly negative
    real part and large modulus are intrinsically ill-conditioned here.
    """
    theta = _check_theta(theta)
    xi = np.atleast_1d(np.asarray(xi, dtype=np.complex128))
    if not np.all(np.isfinite(xi)):
        raise ValueError("arguments must be finite")
    out = np.empty(xi.shape, dtype=np.complex128)
    asym = (xi.imag == 0.0) & (xi.real > ASYM_SWITCH)
    rest = ~asym
    if np.any(rest):
        if np.max(np.abs(xi[rest])) > _SERIES_CAP:
            raise ValueError(
                f"|xi| beyond {_SERIES_CAP:.0e} is not supported off the "
                "positive real axis"
            )
        out[rest] = _kernels.wtheta_series(
            theta, np.ascontiguousarray(xi[rest]), tol, _MAX_TERMS
        )
    for i in np.flatnonzero(asym):
        out[i] = math.exp(log_w_theta_asym(theta, xi[i].real))
    return out


def w_theta(theta: float, xi: complex, tol: float = 1e-14) -> complex:
    """Scalar ``w_theta(xi) = sum_k xi^k / (k! Gamma(theta+k))``.

    See :func:`w_theta_many` for branch selection and conditioning notes.
    ``w_0(0) = 0`` by the reciprocal-Gamma convention.
    """
    return complex(w_theta_many(theta, [complex(xi)], tol)[0])


def k_theta(theta: float, z: complex, s: float, tol: float = 1e-14) -> complex:
    """Reproducing kernel ``exp(-z) w_theta(z s)`` for the Gamma weight.

    For real ``z > 0`` with ``z*s`` past the asymptotic switch the factors
    are combined in log space, so the huge ``w`` value and the tiny
    ``exp(-z)`` never meet in linear scale.
    """
    theta = _check_theta(theta)
    s = float(s)
    if s < 0:
        raise ValueError("kernel second argument s must be >= 0")
    z = complex(z)
    if z.imag == 0.0 and z.real > 0.0 and z.real * s > ASYM_SWITCH:
        return complex(math.exp(-z.real + log_w_theta_asym(theta, z.real * s)))
    return complex(np.exp(-z) * w_theta(theta, z * s, tol))


def k_theta_row(theta: float, z: complex, s, tol: float = 1e-14) -> np.ndarray:
    """Kernel values ``k_theta(z, s_i)`` across an array of nodes.

    The workhorse for the quadrature route: one fixed ``z`` against all
    quadrature nodes, with the same log-space protection as
    :func:`k_theta` on the large real branch.
    """
    theta = _check_theta(theta)
    z = complex(z)
    s = np.atleast_1d(np.asarray(s, dtype=np.float64))
    if np.any(s < 0):
        raise ValueError("kernel nodes must be >= 0")
    xi = z * s
    out = np.empty(s.shape, dtype=np.complex128)
    if z.imag == 0.0 and z.real > 0.0:
        big = xi.real > ASYM_SWITCH
        for i in np.flatnonzero(big):
            out[i] = math.exp(-z.real + log_w_theta_asym(theta, xi[i].real))
        if np.any(~big):
            out[~big] = math.exp(-z.real) * _kernels.wtheta_series(
                theta, np.ascontiguousarray(xi[~big]), tol, _MAX_TERMS
            )
        return out
    return np.exp(-z) * w_theta_many(theta, xi, tol)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for ``int_0^inf . s^(theta-1) e^(-s) ds``."""

    theta: float
    nodes: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        theta = float(self.theta)
        if not (theta > 0 and math.isfinite(theta)):
            raise ValueError("quadrature weight needs theta > 0")
        nodes = tuple(float(x) for x in self.nodes)
        weights = tuple(float(x) for x in self.weights)
        if len(nodes) != len(weights) or not nodes:
            raise ValueError("nodes and weights must be equal-length and non-empty")
        if any(x <= 0 or not math.isfinite(x) for x in nodes):
            raise ValueError("nodes must be positive and finite")
        if any(w <= 0 or not math.isfinite(w) for w in weights):
            raise ValueError("weights must be positive and finite")
        if any(b <= a for a, b in zip(nodes, nodes[1:])):
            raise ValueError("nodes must be strictly ascending")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def n(self) -> int:
        return len(self.nodes)

    def nodes_array(self) -> np.ndarray:
        return np.array(self.nodes, dtype=np.float64)

    def weights_array(self) -> np.ndarray:
        return np.array(self.weights, dtype=np.float64)

    def to_dict(self) -> dict:
        return {
            "theta": self.theta,
            "nodes": list(self.nodes),
            "weights": list(self.weights),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QuadratureRule":
        if not isinstance(data, dict) or set(data) != {"theta", "nodes", "weights"}:
            raise ValueError(
                "quadrature JSON must have exactly the keys theta, nodes, weights"
            )
        if not isinstance(data["theta"], (int, float)):
            raise ValueError("'theta' must be a real number")
        for key in ("nodes", "weights"):
            if not isinstance(data[key], list) or not all(
                isinstance(x, (int, float)) for x in data[key]
            ):
                raise ValueError(f"'{key}' must be a list of reals")
        return cls(data["theta"], tuple(data["nodes"]), tuple(data["weights"]))


MAX_QUAD_N = 256


def gauss_laguerre(theta: float, n: int) -> QuadratureRule:
    """Gauss rule for the weight ``s^(theta-1) e^(-s)`` on ``(0, inf)``.

    Parameters
    ----------
    theta : float
        Weight exponent shift; must satisfy ``0 < theta < 171`` so the
        zeroth moment ``Gamma(theta)`` is representable.
    n : int
        Number of nodes, ``1 <= n <= 256``.

    Returns
    -------
    QuadratureRule
        Nodes ascending; weights ``Gamma(theta) * v0^2`` where ``v0`` is
        the first component of the normalized Jacobi-matrix eigenvector,
        per Golub-Welsch.  The matrix has diagonal ``2k + theta`` and
        off-diagonal ``sqrt(k (k + theta - 1))``; the rule integrates
        polynomials up to degree ``2n - 1`` exactly against the weight.

    Notes
    -----
    Nodes come from the symmetric-tridiagonal eigensolver, but the
    eigenvector components are recomputed from the orthonormal-polynomial
    three-term recurrence (``v propto (p_0(x), ..., p_{n-1}(x))``) with
    dynamic rescaling: library eigenvector routines floor the far-tail
    first components to exact zero long before the true weights
    (``~ e^{-node}``) leave double range.  Nodes whose true weight falls
    below the smallest positive double (largest nodes for ``n`` around
    170 and up) are dropped, so the returned rule may hold fewer than
    ``n`` points; such nodes cannot contribute to any double-precision
    integral of an admissible integrand.
    """
    theta = float(theta)
    if not (theta > 0 and math.isfinite(theta)):
        raise ValueError("gauss_laguerre requires theta > 0")
    if theta >= 171.0:
        raise ValueError("theta too large: Gamma(theta) overflows the weight scale")
    if not isinstance(n, (int, np.integer)) or not 1 <= int(n) <= MAX_QUAD_N:
        raise ValueError(f"node count must be an integer in [1, {MAX_QUAD_N}]")
    n = int(n)
    k = np.arange(n, dtype=np.float64)
    diag = 2.0 * k + theta
    off = np.sqrt(k[1:] * (k[1:] + theta - 1.0))
    if n == 1:
        vals = diag.copy()
    else:
        vals = eigh_tridiagonal(diag, off, eigvals_only=True)

    # Normalized first eigenvector components by the recurrence
    # b_k p_{k+1}(x) = (x - a_k) p_k(x) - b_{k-1} p_{k-1}(x), p_0 = 1,
    # rescaled whenever the running values grow large; log-accumulated
    # scales keep log(sum p_k^2) exact even when the sum itself would
    # overflow.
    p_prev = np.zeros_like(vals)
    p_curr = np.ones_like(vals)
    ssum = np.ones_like(vals)
    log_scale = np.zeros_like(vals)
    for j in range(n - 1):
        if j == 0:
            p_next = (vals - diag[0]) * p_curr / off[0]
        else:
            p_next = ((vals - diag[j]) * p_curr - off[j - 1] * p_prev) / off[j]
        ssum = ssum + p_next * p_next
        p_prev, p_curr = p_curr, p_next
        big = np.abs(p_curr) > 1e140
        if np.any(big):
            p_prev = np.where(big, p_prev * 1e-140, p_prev)
            p_curr = np.where(big, p_curr * 1e-140, p_curr)
            ssum = np.where(big, ssum * 1e-280, ssum)
            log_scale = np.where(big, log_scale + 140.0 * math.log(10.0),
                                 log_scale)
    log_w = math.lgamma(theta) - (np.log(ssum) + 2.0 * log_scale)
    with np.errstate(under="ignore"):
        weights = np.exp(log_w)
    keep = weights > 0.0
    return QuadratureRule(theta, tuple(vals[keep]), tuple(weights[keep]))
