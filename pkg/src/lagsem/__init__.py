"""Operational calculus of the generalized Laguerre operator.

The operator is ``Delta f = (theta + omega z) f' + z f''`` acting on
entire functions of one complex variable.  This package provides its
exact action on polynomials, the symbol calculus ``phi(Delta)``, the
semigroup ``exp(a*Delta)`` by three independent routes (truncated
series, dilation/heat decomposition, kernel-integral quadrature),
closed-form Cauchy solvers in one and N dimensions for data of the form
``exp(-epsilon z) h(z)``, and randomized verification suites for the
structure the calculus is supposed to preserve (nonpositive real zeros,
growth norms, splitting convergence).
"""

from ._accel import USE_NUMBA
from .core import (
    BoundNorm,
    CapacityError,
    ComplexPoly,
    ContractivityError,
    LaguerreForm,
    OperatorSpec,
    ShiftConditionError,
    TaylorSeries,
    bound_estimate,
    c_of_b,
    gamma_factor,
    laguerre_to_taylor,
    norm_b,
    nu,
)
from .kernel import (
    QuadratureRule,
    gauss_laguerre,
    k_theta,
    recip_gamma,
    w_theta,
)
from .ndim import (
    RadialProblem,
    lift_params,
    lift_time,
    radial_identity_check,
    solve_cauchy_nd,
)
from .operator import (
    KappaTable,
    alpha,
    apply_delta,
    apply_phi,
    apply_phi_series,
    dilate,
    exp_delta_decomposed,
    exp_delta_series,
    exp_delta_theta,
    gamma_theta,
    kappa,
    kappa_bruteforce,
    psi,
    psi_limit,
    q_coeff,
)
from .semigroup import (
    InitialData,
    ShiftResult,
    decay_profile,
    exp_integral,
    exp_shifted,
    solve_cauchy,
)
from .verify import (
    ZeroReport,
    coefficient_ode_oracle,
    laguerre_class_check,
    modified_bessel_i,
    norm_bound_check,
    roots,
    trotter_convergence,
    zero_preservation_suite,
)

__version__ = "0.1.0"

__all__ = [
    "USE_NUMBA",
    "__version__",
    # core
    "BoundNorm", "CapacityError", "ComplexPoly", "ContractivityError",
    "LaguerreForm", "OperatorSpec", "ShiftConditionError", "TaylorSeries",
    "bound_estimate", "c_of_b", "gamma_factor", "laguerre_to_taylor",
    "norm_b", "nu",
    # kernel
    "QuadratureRule", "gauss_laguerre", "k_theta", "recip_gamma", "w_theta",
    # operator
    "KappaTable", "alpha", "apply_delta", "apply_phi", "apply_phi_series",
    "dilate", "exp_delta_decomposed", "exp_delta_series", "exp_delta_theta",
    "gamma_theta", "kappa", "kappa_bruteforce", "psi", "psi_limit", "q_coeff",
    # semigroup
    "InitialData", "ShiftResult", "decay_profile", "exp_integral",
    "exp_shifted", "solve_cauchy",
    # ndim
    "RadialProblem", "lift_params", "lift_time", "radial_identity_check",
    "solve_cauchy_nd",
    # verify
    "ZeroReport", "coefficient_ode_oracle", "laguerre_class_check",
    "modified_bessel_i", "norm_bound_check", "roots", "trotter_convergence",
    "zero_preservation_suite",
]
