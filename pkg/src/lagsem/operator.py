"""Exact operational calculus for ``Delta = (theta + omega*z) D + z D^2``.

On the monomial basis the operator acts as

    Delta z^m = m (theta + m - 1) z^(m-1) + omega m z^m,

so every polynomial manipulation here is exact coefficient arithmetic.
The module provides the single application :func:`apply_delta`, symbol
application ``phi(Delta)`` for polynomial and entire symbols, the
iterated-coefficient table ``kappa`` with its brute-force twin, and two
realizations of ``exp(a*Delta)``: the dilation/``Delta_theta`` splitting
(:func:`exp_delta_decomposed`) and the direct operator series
(:func:`exp_delta_series`).
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from . import _kernels
from .core import (
    CapacityError,
    ComplexPoly,
    ContractivityError,
    TaylorSeries,
    as_poly,
    c_of_b,
    gamma_factor,
)

__all__ = [
    "apply_delta",
    "gamma_theta",
    "log_gamma_theta",
    "q_coeff",
    "alpha",
    "kappa",
    "kappa_bruteforce",
    "KappaTable",
    "apply_phi",
    "apply_phi_series",
    "dilate",
    "exp_delta_theta",
    "exp_delta_decomposed",
    "exp_delta_series",
    "psi",
    "psi_limit",
]


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not (math.isfinite(theta) and theta >= 0):
        raise ValueError("theta must be a finite real >= 0")
    return theta


def _check_omega(omega: float) -> float:
    omega = float(omega)
    if not math.isfinite(omega):
        raise ValueError("omega must be a finite real")
    return omega


def _check_index(value: int, name: str) -> int:
    if not isinstance(value, (int, np.integer)) or value < 0:
        raise ValueError(f"{name} must be a nonnegative integer")
    return int(value)


def apply_delta(f: ComplexPoly, theta: float, omega: float) -> ComplexPoly:
    """One application of ``(theta + omega*z) D + z D^2`` to a polynomial.

    Coefficient rule: ``out[j] = (j+1)(theta+j) c[j+1] + omega j c[j]``.
    """
    theta = _check_theta(theta)
    omega = _check_omega(omega)
    if not isinstance(f, ComplexPoly):
        raise TypeError("apply_delta acts on ComplexPoly values")
    c = f.as_array()
    j = np.arange(len(c), dtype=np.float64)
    out = omega * j * c
    if len(c) > 1:
        out[:-1] += (j[:-1] + 1.0) * (theta + j[:-1]) * c[1:]
    return ComplexPoly(tuple(out))


def log_gamma_theta(theta: float, m: int) -> float:
    """``log(m! * Gamma(theta+m))``; ``+inf`` at the theta=0, m=0 pole."""
    theta = _check_theta(theta)
    m = _check_index(m, "m")
    if theta + m == 0:
        return math.inf
    return math.lgamma(m + 1) + math.lgamma(theta + m)


def gamma_theta(theta: float, m: int) -> float:
    """``m! * Gamma(theta+m)``, the basic factorial weight.

    Returns ``+inf`` both at the theta=0, m=0 pole and on overflow.
    """
    lg = log_gamma_theta(theta, m)
    if lg > 709.0:
        return math.inf
    return math.factorial(int(m)) * math.gamma(float(theta) + int(m))


def _log_q_coeff(theta: float, m: int, k: int) -> float:
    """``log q_theta^(m,k)`` with ``-inf`` encoding an exact zero."""
    if k == 0:
        return 0.0
    if k > m:
        return -math.inf
    if theta == 0 and m - k == 0:
        return -math.inf
    return (
        math.lgamma(m + 1)
        - math.lgamma(m - k + 1)
        + math.lgamma(theta + m)
        - math.lgamma(theta + m - k)
    )


def q_coeff(theta: float, m: int, k: int) -> float:
    """Falling product ``gamma_theta(m) / gamma_theta(m-k)``.

    This is the coefficient in ``Delta_theta^k z^m = q z^(m-k)``; it is 0
    for ``k > m`` and, through the ``1/Gamma(0) = 0`` convention, also 0
    for ``theta = 0, k = m >= 1``.  Computed as an exact running product.
    """
    theta = _check_theta(theta)
    m = _check_index(m, "m")
    k = _check_index(k, "k")
    if k > m:
        return 0.0
    q = 1.0
    for j in range(1, k + 1):
        q *= (m - j + 1) * (theta + m - j)
    return q


def alpha(p: int, s: int) -> int:
    """Forward-difference count ``sum_j C(p,j)(-1)^j (p-j)^s`` (exact int).

    Equals the number of surjections from an ``s``-set onto a ``p``-set:
    zero for ``s < p``, ``p!`` at ``s = p``, positive for ``s >= p``.
    Convention ``0^0 = 1``.
    """
    p = _check_index(p, "p")
    s = _check_index(s, "s")
    return sum((-1) ** j * math.comb(p, j) * (p - j) ** s for j in range(p + 1))


def kappa(n: int, k: int, m: int, theta: float, omega: float) -> float:
    """Closed form for ``[D^n Delta^k z^m]_{z=0}``.

    For ``n <= m <= n + k`` the value is

        (n!/(m-n)!) q_theta^(m, m-n) omega^(k+n-m)
            sum_{l=m-n}^{k} C(k,l) n^(k-l) alpha_{m-n}^(l),

    zero for ``m < n`` or ``k < m - n``.  At ``omega = 0`` only the
    ``k = m - n`` diagonal survives with value ``n! q_theta^(m, m-n)``.
    Evaluated in log space with an exact big-integer inner sum, so large
    index combinations do not overflow prematurely.
    """
    n = _check_index(n, "n")
    k = _check_index(k, "k")
    m = _check_index(m, "m")
    theta = _check_theta(theta)
    omega = _check_omega(omega)
    if m < n:
        return 0.0
    s = m - n
    if k < s:
        return 0.0
    lq = _log_q_coeff(theta, m, s)
    if lq == -math.inf:
        return 0.0
    if omega == 0.0:
        if k != s:
            return 0.0
        return math.exp(math.lgamma(n + 1) + lq)
    inner = sum(
        math.comb(k, l) * n ** (k - l) * alpha(s, l) for l in range(s, k + 1)
    )
    if inner == 0:
        return 0.0
    logmag = (
        math.lgamma(n + 1)
        - math.lgamma(s + 1)
        + lq
        + (k - s) * math.log(abs(omega))
        + math.log(inner)
    )
    sign = -1.0 if (omega < 0.0 and (k - s) % 2 == 1) else 1.0
    return sign * math.exp(logmag)


def kappa_bruteforce(n: int, k: int, m: int, theta: float, omega: float) -> float:
    """Oracle twin of :func:`kappa` by literal operator application.

    Builds ``z^m``, applies ``Delta`` ``k`` times coefficient-wise and
    reads off ``n! *`` (coefficient of ``z^n``).  Shares no code with the
    closed form beyond :func:`apply_delta` itself.
    """
    n = _check_index(n, "n")
    k = _check_index(k, "k")
    m = _check_index(m, "m")
    p = ComplexPoly((0j,) * m + (1.0 + 0j,))
    for _ in range(k):
        p = apply_delta(p, theta, omega)
    if n >= len(p.coeffs):
        return 0.0
    return float((math.factorial(n) * p.coeffs[n]).real)


class KappaTable:
    """Cache of ``kappa`` values for fixed ``(theta, omega)``.

    Entries are computed lazily; indices are capped at ``max_index`` and a
    request beyond the cap raises :class:`~lagsem.core.CapacityError`.
    """

    def __init__(self, theta: float, omega: float, max_index: int = 64):
        self.theta = _check_theta(theta)
        self.omega = _check_omega(omega)
        self.max_index = _check_index(max_index, "max_index")
        self._cache: dict[tuple[int, int, int], float] = {}

    def kappa(self, n: int, k: int, m: int) -> float:
        if max(n, k, m) > self.max_index:
            raise CapacityError(
                f"index {(n, k, m)} exceeds table capacity {self.max_index}"
            )
        key = (n, k, m)
        val = self._cache.get(key)
        if val is None:
            val = kappa(n, k, m, self.theta, self.omega)
            self._cache[key] = val
        return val

    def __len__(self) -> int:
        return len(self._cache)


def apply_phi(phi: ComplexPoly, f: ComplexPoly, theta: float, omega: float) -> ComplexPoly:
    """Polynomial symbol application ``phi(Delta) f = sum_k phi_k Delta^k f``.

    Includes the ``k = 0`` term ``phi(0) * f``, so ``phi = 1`` is the
    identity.
    """
    if not isinstance(phi, ComplexPoly) or not isinstance(f, ComplexPoly):
        raise TypeError("apply_phi acts on ComplexPoly values")
    result = phi.coeffs[0] * f
    g = f
    for k in range(1, len(phi.coeffs)):
        g = apply_delta(g, theta, omega)
        result = result + phi.coeffs[k] * g
    return result


def apply_phi_series(
    phi: TaylorSeries,
    f: TaylorSeries,
    theta: float,
    omega: float,
    trunc: int = 32,
    table: KappaTable | None = None,
) -> tuple[TaylorSeries, float]:
    """Entire-symbol application through the ``kappa`` table.

    Output derivative ``n`` accumulates
    ``phi^(k)(0)/k! * f^(m)(0)/m! * kappa(n, k, m)`` over all stored
    ``k, m < trunc``.  Returns the truncated result together with a tail
    estimate: the total magnitude contributed by the outermost stored
    shell (``k`` or ``m`` at its cut), a heuristic for what the cut may
    be discarding.

    When both inputs declare growth bounds the admissibility product
    ``b * gamma_factor(a, omega)`` is checked; an inadmissible pair only
    warns (the truncated computation itself is finite), and the result
    then carries no declared bound.
    """
    if not isinstance(phi, TaylorSeries) or not isinstance(f, TaylorSeries):
        raise TypeError("apply_phi_series acts on TaylorSeries values")
    theta = _check_theta(theta)
    omega = _check_omega(omega)
    trunc = _check_index(trunc, "trunc")
    if trunc < 1:
        raise ValueError("trunc must be >= 1")
    if table is None:
        table = KappaTable(theta, omega, max_index=trunc - 1)
    else:
        if table.theta != theta or table.omega != omega:
            raise ValueError("table parameters do not match the requested operator")
        if table.max_index < trunc - 1:
            raise CapacityError(
                f"table capacity {table.max_index} below requested truncation {trunc}"
            )

    out_bound = None
    if phi.bound_b is not None and f.bound_b is not None:
        try:
            out_bound = c_of_b(phi.bound_b, omega, f.bound_b)
        except ContractivityError as err:
            warnings.warn(
                f"symbol/argument bounds violate the contractivity condition "
                f"(product {err.product:.6g}); result carries no bound",
                RuntimeWarning,
                stacklevel=2,
            )

    kmax = min(phi.order, trunc)
    mmax = min(f.order, trunc)
    pc = [phi.derivs[k] / math.factorial(k) for k in range(kmax)]
    fc = [f.derivs[m] / math.factorial(m) for m in range(mmax)]
    out = np.zeros(trunc, dtype=np.complex128)
    shell = np.zeros(trunc, dtype=np.float64)
    for k in range(kmax):
        if pc[k] == 0:
            continue
        for m in range(mmax):
            if fc[m] == 0:
                continue
            w = pc[k] * fc[m]
            on_shell = k == kmax - 1 or m == mmax - 1
            # kappa vanishes for n > m, so only n <= m contributes
            for n in range(0, min(m, trunc - 1) + 1):
                kap = table.kappa(n, k, m)
                if kap == 0.0:
                    continue
                contrib = w * kap
                out[n] += contrib
                if on_shell:
                    shell[n] += abs(contrib)
    tail = float(np.max(shell)) if trunc else 0.0
    return TaylorSeries(tuple(out), out_bound), tail


def dilate(f, lam: complex):
    """Composition with a linear scale: ``f(z) -> f(lam * z)``."""
    if isinstance(f, ComplexPoly):
        acc, out = 1.0 + 0j, []
        for c in f.coeffs:
            out.append(c * acc)
            acc *= lam
        return ComplexPoly(tuple(out))
    if isinstance(f, TaylorSeries):
        acc, out = 1.0 + 0j, []
        for d in f.derivs:
            out.append(d * acc)
            acc *= lam
        b = f.bound_b
        new_b = None
        if b is not None and lam != 0:
            new_b = abs(lam) * b
        return TaylorSeries(tuple(out), new_b)
    raise TypeError("dilate acts on ComplexPoly or TaylorSeries values")


def exp_delta_theta(f, gamma: float, theta: float):
    """Exact ``exp(gamma * Delta_theta)`` on polynomial or truncated data.

    Coefficient transform: ``out[m-k] += c[m] gamma^k/k! q_theta^(m,k)``;
    the hot loop lives in :mod:`lagsem._kernels`.
    """
    theta = _check_theta(theta)
    gamma = float(gamma)
    if not math.isfinite(gamma):
        raise ValueError("gamma must be finite")
    if isinstance(f, ComplexPoly):
        c = np.ascontiguousarray(f.as_array())
        out = _kernels.exp_delta_theta_coeffs(c, gamma, theta)
        return ComplexPoly(tuple(out))
    if isinstance(f, TaylorSeries):
        c = np.ascontiguousarray(f.to_poly().as_array())
        if len(c) < f.order:
            c = np.concatenate([c, np.zeros(f.order - len(c), dtype=np.complex128)])
        out = _kernels.exp_delta_theta_coeffs(c, gamma, theta)
        new_b = None
        if f.bound_b is not None and gamma >= 0:
            try:
                new_b = c_of_b(gamma, 0.0, f.bound_b)
            except ContractivityError:
                new_b = None
        d, fact = [], 1.0
        for k in range(len(out)):
            if k > 0:
                fact *= k
            d.append(complex(out[k]) * fact)
        return TaylorSeries(tuple(d), new_b)
    raise TypeError("exp_delta_theta acts on ComplexPoly or TaylorSeries values")


def exp_delta_decomposed(f, theta: float, omega: float, a: float):
    """``exp(a*Delta)`` via the splitting into dilation and theta-flow.

    ``exp(a*Delta) = exp(a*omega*z*D) . exp(gamma*Delta_theta)`` with
    ``gamma = gamma_factor(a, omega)``; the dilation part is composition
    with ``exp(a*omega)``.
    """
    omega = _check_omega(omega)
    gam = gamma_factor(a, omega)
    g = exp_delta_theta(f, gam, theta)
    return dilate(g, math.exp(float(a) * omega))


def exp_delta_series(
    f: ComplexPoly,
    theta: float,
    omega: float,
    a: float,
    tol: float = 1e-14,
    max_terms: int = 128,
) -> ComplexPoly:
    """``exp(a*Delta) f`` by direct summation of ``a^k Delta^k f / k!``.

    Terminates when two consecutive terms fall below ``tol`` relative to
    the running result (term sizes are eventually factorially damped);
    warns if ``max_terms`` is reached first.
    """
    if not isinstance(f, ComplexPoly):
        raise TypeError("exp_delta_series acts on ComplexPoly values")
    a = float(a)
    if not (math.isfinite(a) and a >= 0):
        raise ValueError("evolution time a must be a finite real >= 0")
    total = f
    term = f
    small_streak = 0
    for k in range(1, max_terms + 1):
        term = apply_delta(term, theta, omega) * (a / k)
        total = total + term
        tmag = max(abs(c) for c in term.coeffs)
        smag = max(abs(c) for c in total.coeffs)
        if tmag <= tol * max(smag, 1e-300):
            small_streak += 1
            if small_streak >= 2:
                return total
        else:
            small_streak = 0
    warnings.warn(
        "operator series did not meet tolerance within max_terms",
        RuntimeWarning,
        stacklevel=2,
    )
    return total


def psi(n: int, k: int, b: float) -> float:
    """Splitting weight ``(1/k!) [e^(b/n)(e^b-1) / (n(e^(b/n)-1))]^k``.

    ``b = 0`` gives ``1/k!`` exactly; as ``n`` grows the bracket tends to
    ``(e^b - 1)/b`` (see :func:`psi_limit`) at rate ``O(1/n)``.
    """
    n = _check_index(n, "n")
    if n < 1:
        raise ValueError("n must be >= 1")
    k = _check_index(k, "k")
    b = float(b)
    if b == 0.0:
        base = 1.0
    else:
        base = math.exp(b / n) * math.expm1(b) / (n * math.expm1(b / n))
    return base ** k / math.factorial(k)


def psi_limit(k: int, b: float) -> float:
    """Large-``n`` limit of :func:`psi`: ``((e^b - 1)/b)^k / k!``."""
    k = _check_index(k, "k")
    b = float(b)
    base = 1.0 if b == 0.0 else math.expm1(b) / b
    return base ** k / math.factorial(k)
