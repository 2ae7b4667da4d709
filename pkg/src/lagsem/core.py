"""Value types and scalar parameter formulas shared across the package.

The operator family under study is ``Delta = (theta + omega*z) D + z D^2``
acting on entire functions.  This module holds the immutable value types
(polynomials, truncated Taylor data, Laguerre-type product forms, operator
parameter bundles) and the small closed-form quantities that every other
module needs: the dilation-split factor ``gamma_factor``, the kernel scale
``nu``, the growth-bound map ``c_of_b`` and the weighted sup-norm ``norm_b``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

__all__ = [
    "ComplexPoly",
    "TaylorSeries",
    "LaguerreForm",
    "OperatorSpec",
    "BoundNorm",
    "ContractivityError",
    "ShiftConditionError",
    "CapacityError",
    "gamma_factor",
    "nu",
    "c_of_b",
    "norm_b",
    "bound_estimate",
    "laguerre_to_taylor",
    "as_taylor",
    "as_poly",
    "complex_to_pair",
    "pair_to_complex",
]

DEFAULT_ORDER = 64


class ContractivityError(ValueError):
    """Growth bound incompatible with the requested evolution time.

    Raised when ``b * gamma_factor(a, omega) >= 1``, i.e. the image bound
    ``c_of_b`` is undefined.  The offending product is attached as
    ``product``.
    """

    def __init__(self, message: str, product: float):
        super().__init__(message)
        self.product = float(product)


class ShiftConditionError(ValueError):
    """Exponential-shift admissibility condition violated.

    Carries the offending quantity and, when computable, the largest
    admissible time ``t_max``.
    """

    def __init__(self, message: str, quantity: float, t_max: float | None = None):
        super().__init__(message)
        self.quantity = float(quantity)
        self.t_max = t_max


class CapacityError(ValueError):
    """A cached table or truncation capacity was exceeded."""


# ---------------------------------------------------------------------------
# value types
# ---------------------------------------------------------------------------


def _coerce_pair(entry) -> complex:
    """Accept a JSON number or an [re, im] pair."""
    if isinstance(entry, (int, float)):
        return complex(entry)
    if (
        isinstance(entry, (list, tuple))
        and len(entry) == 2
        and all(isinstance(x, (int, float)) for x in entry)
    ):
        return complex(entry[0], entry[1])
    raise ValueError(f"expected a number or an [re, im] pair, got {entry!r}")


def complex_to_pair(value: complex) -> list[float]:
    return [float(value.real), float(value.imag)]


def pair_to_complex(entry) -> complex:
    return _coerce_pair(entry)


@dataclass(frozen=True)
class ComplexPoly:
    """Polynomial with complex coefficients, ascending powers.

    The stored tuple is canonical: trailing exact zeros are trimmed and the
    zero polynomial is ``(0,)``.  Instances are immutable values.
    """

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        c = [complex(x) for x in self.coeffs]
        if not all(math.isfinite(x.real) and math.isfinite(x.imag) for x in c):
            raise ValueError("polynomial coefficients must be finite")
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0j]
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    @classmethod
    def from_roots(cls, roots: Sequence[complex], leading: complex = 1.0) -> "ComplexPoly":
        c = np.array([1.0 + 0j])
        for r in roots:
            c = np.convolve(c, np.array([-complex(r), 1.0 + 0j]))
        return cls(tuple(complex(leading) * c))

    def __call__(self, z):
        """Evaluate by Horner's scheme; works on scalars and arrays."""
        result = 0j if np.isscalar(z) else np.zeros(np.shape(z), dtype=np.complex128)
        for c in reversed(self.coeffs):
            result = result * z + c
        return result

    def derivative(self) -> "ComplexPoly":
        if self.degree == 0:
            return ComplexPoly((0j,))
        return ComplexPoly(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.complex128)

    def __add__(self, other: "ComplexPoly") -> "ComplexPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0j] * (n - len(self.coeffs))
        for k, c in enumerate(other.coeffs):
            a[k] += c
        return ComplexPoly(tuple(a))

    def __mul__(self, other):
        if isinstance(other, ComplexPoly):
            return ComplexPoly(tuple(np.convolve(self.as_array(), other.as_array())))
        return ComplexPoly(tuple(complex(other) * c for c in self.coeffs))

    __rmul__ = __mul__

    def to_dict(self) -> dict:
        return {"coeffs": [complex_to_pair(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: dict) -> "ComplexPoly":
        if not isinstance(data, dict) or set(data) != {"coeffs"}:
            raise ValueError("polynomial JSON must have exactly the key 'coeffs'")
        if not isinstance(data["coeffs"], list) or not data["coeffs"]:
            raise ValueError("'coeffs' must be a non-empty list")
        return cls(tuple(_coerce_pair(e) for e in data["coeffs"]))


@dataclass(frozen=True)
class TaylorSeries:
    """Truncated Taylor data ``derivs[k] = f^(k)(0)``, optional growth bound.

    ``bound_b`` declares membership of the represented function in the
    weighted space with norm :func:`norm_b` at that ``b``; ``None`` means
    no declaration.
    """

    derivs: tuple[complex, ...]
    bound_b: float | None = None

    def __post_init__(self):
        d = tuple(complex(x) for x in self.derivs)
        if not d:
            raise ValueError("a Taylor series needs at least one stored derivative")
        if not all(math.isfinite(x.real) and math.isfinite(x.imag) for x in d):
            raise ValueError("stored derivatives must be finite")
        object.__setattr__(self, "derivs", d)
        if self.bound_b is not None:
            b = float(self.bound_b)
            if not (b > 0 and math.isfinite(b)):
                raise ValueError("declared bound must be a positive finite real")
            object.__setattr__(self, "bound_b", b)

    @property
    def order(self) -> int:
        return len(self.derivs)

    @classmethod
    def from_poly(cls, p: ComplexPoly, order: int | None = None,
                  bound_b: float | None = None) -> "TaylorSeries":
        n = len(p.coeffs) if order is None else int(order)
        if n < len(p.coeffs):
            raise ValueError("order must cover the polynomial degree")
        d = [0j] * n
        for k, c in enumerate(p.coeffs):
            d[k] = math.factorial(k) * c
        return cls(tuple(d), bound_b)

    @classmethod
    def exponential(cls, rate: complex, order: int = DEFAULT_ORDER,
                    bound_b: float | None = None) -> "TaylorSeries":
        """Taylor data of ``exp(rate*z)``; declares ``bound_b = |rate|`` by default."""
        rate = complex(rate)
        if bound_b is None and rate != 0:
            bound_b = abs(rate)
        d, acc = [], 1.0 + 0j
        for _ in range(int(order)):
            d.append(acc)
            acc *= rate
        return cls(tuple(d), bound_b)

    def to_poly(self) -> ComplexPoly:
        return ComplexPoly(tuple(d / math.factorial(k) for k, d in enumerate(self.derivs)))

    def __call__(self, z):
        return self.to_poly()(z)

    def to_dict(self) -> dict:
        return {
            "derivs": [complex_to_pair(d) for d in self.derivs],
            "bound_b": self.bound_b,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TaylorSeries":
        if not isinstance(data, dict) or set(data) != {"derivs", "bound_b"}:
            raise ValueError("series JSON must have exactly the keys 'derivs', 'bound_b'")
        if not isinstance(data["derivs"], list) or not data["derivs"]:
            raise ValueError("'derivs' must be a non-empty list")
        b = data["bound_b"]
        if b is not None and not isinstance(b, (int, float)):
            raise ValueError("'bound_b' must be a real number or null")
        return cls(tuple(_coerce_pair(e) for e in data["derivs"]), b)


@dataclass(frozen=True)
class LaguerreForm:
    """Product form ``C * z^m * exp(alpha*z) * prod_j (1 + beta_j z)``.

    ``betas`` are stored sorted nonincreasing; all must be nonnegative, so
    the polynomial factor has only real nonpositive roots.  The class tag
    reports the sign regime of the exponential rate: ``"L+"`` for
    ``alpha >= 0``, ``"L-"`` for ``alpha < 0`` (a mirrored form; exact
    mirror-class membership additionally needs ``betas == ()``), and
    ``"L0"`` for the pure monomial ``alpha == 0, betas == ()``.
    """

    scale: complex
    zero_order: int
    rate: float
    betas: tuple[float, ...] = ()

    def __post_init__(self):
        c = complex(self.scale)
        if c == 0:
            raise ValueError("scale C must be nonzero")
        object.__setattr__(self, "scale", c)
        m = int(self.zero_order)
        if m < 0:
            raise ValueError("zero order m must be a nonnegative integer")
        object.__setattr__(self, "zero_order", m)
        a = float(self.rate)
        if not math.isfinite(a):
            raise ValueError("rate alpha must be finite")
        object.__setattr__(self, "rate", a)
        bs = tuple(sorted((float(b) for b in self.betas), reverse=True))
        if any(b < 0 or not math.isfinite(b) for b in bs):
            raise ValueError("each beta must be finite and >= 0")
        object.__setattr__(self, "betas", bs)

    @property
    def class_tag(self) -> str:
        if self.rate == 0 and not self.betas:
            return "L0"
        return "L+" if self.rate >= 0 else "L-"

    def poly_part(self) -> ComplexPoly:
        """The factor ``C z^m prod (1 + beta_j z)`` as a polynomial."""
        c = np.zeros(self.zero_order + 1, dtype=np.complex128)
        c[self.zero_order] = self.scale
        p = ComplexPoly(tuple(c))
        for b in self.betas:
            p = p * ComplexPoly((1.0 + 0j, complex(b)))
        return p

    def __call__(self, z):
        return self.poly_part()(z) * np.exp(self.rate * np.asarray(z))

    def to_dict(self) -> dict:
        return {
            "C": complex_to_pair(self.scale),
            "m": self.zero_order,
            "alpha": self.rate,
            "betas": list(self.betas),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LaguerreForm":
        if not isinstance(data, dict) or set(data) != {"C", "m", "alpha", "betas"}:
            raise ValueError("Laguerre-form JSON must have exactly the keys C, m, alpha, betas")
        if not isinstance(data["m"], int):
            raise ValueError("'m' must be an integer")
        if not isinstance(data["alpha"], (int, float)):
            raise ValueError("'alpha' must be a real number")
        if not isinstance(data["betas"], list):
            raise ValueError("'betas' must be a list of reals")
        return cls(_coerce_pair(data["C"]), data["m"], data["alpha"], tuple(data["betas"]))


@dataclass(frozen=True)
class OperatorSpec:
    """Parameter bundle for ``(theta + omega*z) D + z D^2`` and a symbol.

    ``theta >= 0`` and ``time_a >= 0`` are enforced; ``phi`` optionally
    carries the symbol applied through the operational calculus.
    """

    theta: float
    omega: float
    time_a: float = 0.0
    phi: Union[ComplexPoly, TaylorSeries, None] = None

    def __post_init__(self):
        th = float(self.theta)
        om = float(self.omega)
        ta = float(self.time_a)
        if not (math.isfinite(th) and th >= 0):
            raise ValueError("theta must be a finite real >= 0")
        if not math.isfinite(om):
            raise ValueError("omega must be a finite real")
        if not (math.isfinite(ta) and ta >= 0):
            raise ValueError("time must be a finite real >= 0")
        object.__setattr__(self, "theta", th)
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "time_a", ta)


PolyLike = Union[ComplexPoly, TaylorSeries]


def as_taylor(f: PolyLike, order: int | None = None) -> TaylorSeries:
    if isinstance(f, TaylorSeries):
        if order is None or order == f.order:
            return f
        if order < f.order:
            return TaylorSeries(f.derivs[:order], f.bound_b)
        return TaylorSeries(f.derivs + (0j,) * (order - f.order), f.bound_b)
    return TaylorSeries.from_poly(f, order)


def as_poly(f: PolyLike) -> ComplexPoly:
    return f if isinstance(f, ComplexPoly) else f.to_poly()


# ---------------------------------------------------------------------------
# scalar parameter formulas
# ---------------------------------------------------------------------------


def gamma_factor(a: float, omega: float) -> float:
    """Dilation-split time ``(exp(a*omega) - 1)/omega``, continuous at 0.

    This is the effective ``theta``-part evolution time in the splitting
    ``exp(a*Delta) = exp(a*omega*z*D) . exp(gamma*Delta_theta)``.  Using
    ``expm1`` keeps full accuracy through ``omega -> 0``, where the value
    is ``a``.
    """
    a = float(a)
    omega = float(omega)
    if a < 0:
        raise ValueError("evolution time a must be >= 0")
    if omega == 0.0:
        return a
    return math.expm1(a * omega) / omega


def nu(a: float, omega: float) -> float:
    """Kernel scale ``omega*exp(a*omega)/(exp(a*omega)-1)``; ``1/a`` at omega=0.

    Requires ``a > 0``; the scale diverges as the evolution time vanishes.
    """
    a = float(a)
    omega = float(omega)
    if a <= 0:
        raise ValueError("kernel scale requires a > 0")
    if omega == 0.0:
        return 1.0 / a
    return omega * math.exp(a * omega) / math.expm1(a * omega)


def c_of_b(a: float, omega: float, b: float) -> float:
    """Image growth bound ``b*exp(a*omega) / (1 - b*gamma_factor(a, omega))``.

    Maps a declared bound ``b`` for the input to the bound satisfied by the
    evolved function.  Raises :class:`ContractivityError` when
    ``b*gamma_factor >= 1`` (the evolution leaves every bounded class).
    """
    b = float(b)
    if b < 0:
        raise ValueError("growth bound b must be >= 0")
    g = gamma_factor(a, omega)
    prod = b * g
    if prod >= 1.0:
        raise ContractivityError(
            f"bound violates b*gamma < 1 (product {prod:.6g})", prod
        )
    return b * math.exp(a * omega) / (1.0 - prod)


class BoundNorm(NamedTuple):
    """Weighted sup-norm value plus a truncation-tail warning flag."""

    value: float
    possibly_divergent: bool

    def __float__(self) -> float:
        return float(self.value)


def norm_b(f: PolyLike, b: float) -> BoundNorm:
    """``sup_k b^-k |f^(k)(0)|`` over the stored truncation.

    The flag is set when the sup is still attained in the last 10% of
    stored indices, which suggests the true sup lives beyond the
    truncation (e.g. ``exp(z)`` probed with ``b < 1``).  The zero series
    is never flagged.
    """
    b = float(b)
    if not (b > 0 and math.isfinite(b)):
        raise ValueError("norm parameter b must be a positive finite real")
    d = np.abs(np.array(as_taylor(f).derivs, dtype=np.complex128))
    k = np.arange(len(d), dtype=np.float64)
    vals = d * b ** (-k)
    value = float(np.max(vals))
    if value == 0.0 or math.isinf(value):
        return BoundNorm(value, value != 0.0)
    last_attained = int(np.flatnonzero(vals == np.max(vals))[-1])
    n = len(vals)
    tail_start = max(1, n - max(1, n // 10))
    return BoundNorm(value, last_attained >= tail_start)


def bound_estimate(f: PolyLike) -> float:
    """Ratio-test estimate of the exponential type of ``f`` (heuristic).

    Returns ``max`` of the consecutive-derivative ratios over the tail
    half of the stored data; ``0.0`` for (near-)polynomial data.  Finite
    truncations cannot certify membership in a growth class, so treat the
    result as a diagnostic, not a proof.
    """
    d = np.abs(np.array(as_taylor(f).derivs))
    if len(d) < 2:
        return 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(d[:-1] > 0, d[1:] / np.where(d[:-1] > 0, d[:-1], 1.0), 0.0)
    tail = ratios[len(ratios) // 2:]
    if tail.size == 0:
        tail = ratios
    return float(np.max(tail)) if tail.size else 0.0


def laguerre_to_taylor(g: LaguerreForm, order: int = DEFAULT_ORDER) -> TaylorSeries:
    """Expand a Laguerre product form into truncated Taylor data.

    The polynomial factor is convolved exactly; the exponential factor is
    truncated at ``order`` stored derivatives.  The declared bound of the
    result is ``|alpha|``.  If ``order`` does not reach past the zero order
    ``m`` the result is identically zero and a warning is issued.
    """
    order = int(order)
    if order < 1:
        raise ValueError("order must be >= 1")
    if order <= g.zero_order:
        warnings.warn(
            "truncation order does not reach past the zero order; result is 0",
            RuntimeWarning,
            stacklevel=2,
        )
        return TaylorSeries((0j,) * order, abs(g.rate) if g.rate != 0 else None)
    p = g.poly_part().as_array()
    e = np.zeros(order, dtype=np.complex128)
    acc = 1.0
    for k in range(order):
        e[k] = acc
        acc *= g.rate / (k + 1.0)
    c = np.convolve(p, e)[:order]
    d, fact = [], 1.0
    for k in range(order):
        if k > 0:
            fact *= k
        d.append(complex(c[k]) * fact)
    return TaylorSeries(tuple(d), abs(g.rate) if g.rate != 0 else None)
