"""Value types and scalar parameter formulas.

Covers polynomial/series containers, the Laguerre product form, the
dilation-split scalars gamma_factor / nu / c_of_b, and the weighted
coefficient norm.  Expected numbers that are not forced by the defining
formulas were computed once with mpmath at 50 digits and frozen here.
"""

import math
import warnings

import numpy as np
import pytest

from lagsem import (
    BoundNorm,
    ComplexPoly,
    ContractivityError,
    LaguerreForm,
    OperatorSpec,
    TaylorSeries,
    bound_estimate,
    c_of_b,
    gamma_factor,
    laguerre_to_taylor,
    norm_b,
    nu,
)


# ---------------------------------------------------------------------------
# ComplexPoly
# ---------------------------------------------------------------------------


def test_poly_trims_trailing_zeros():
    p = ComplexPoly((1.0, 2.0, 0.0, 0.0))
    assert p.coeffs == (1 + 0j, 2 + 0j)
    assert p.degree == 1


def test_poly_zero_canonical_form():
    assert ComplexPoly((0.0,)).coeffs == (0j,)
    assert ComplexPoly((0.0, 0.0, 0.0)).coeffs == (0j,)
    assert ComplexPoly((0.0,)).is_zero
    assert not ComplexPoly((0.0, 1.0)).is_zero


def test_poly_rejects_nonfinite():
    with pytest.raises(ValueError):
        ComplexPoly((1.0, math.inf))
    with pytest.raises(ValueError):
        ComplexPoly((complex(0, math.nan),))


def test_poly_eval_matches_termwise_sum():
    rng = np.random.default_rng(7)
    for _ in range(20):
        deg = int(rng.integers(0, 65))
        c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        c[-1] += 2.0  # keep the leading term away from the trim
        p = ComplexPoly(tuple(c))
        z = rng.uniform(-10, 10) + 1j * rng.uniform(-10, 10)
        direct = sum(ck * z**k for k, ck in enumerate(p.coeffs))
        assert p(z) == pytest.approx(direct, rel=1e-12, abs=1e-12)


def test_poly_eval_vectorized():
    p = ComplexPoly((1.0, 0.0, 1.0))  # 1 + z^2
    zs = np.array([0.0, 1.0, 2.0j])
    assert np.allclose(p(zs), [1.0, 2.0, -3.0])


def test_poly_from_roots():
    p = ComplexPoly.from_roots([-1.0, -2.0], leading=3.0)
    # 3(z+1)(z+2) = 6 + 9z + 3z^2
    assert np.allclose(p.as_array(), [6.0, 9.0, 3.0])
    for r in (-1.0, -2.0):
        assert abs(p(r)) < 1e-12


def test_poly_derivative():
    p = ComplexPoly((5.0, 1.0, 0.0, 2.0))  # 5 + z + 2z^3
    assert p.derivative().coeffs == (1 + 0j, 0j, 6 + 0j)
    assert ComplexPoly((7.0,)).derivative().is_zero


def test_poly_arithmetic():
    p = ComplexPoly((1.0, 1.0))
    q = ComplexPoly((0.0, 0.0, 1.0))
    assert (p + q).coeffs == (1 + 0j, 1 + 0j, 1 + 0j)
    assert (p * q).coeffs == (0j, 0j, 1 + 0j, 1 + 0j)
    assert (2.0 * p).coeffs == (2 + 0j, 2 + 0j)


def test_poly_json_round_trip():
    p = ComplexPoly((1.0, 2.0 - 3.0j))
    d = p.to_dict()
    assert d == {"coeffs": [[1.0, 0.0], [2.0, -3.0]]}
    assert ComplexPoly.from_dict(d) == p


def test_poly_from_dict_rejects_malformed():
    with pytest.raises(ValueError):
        ComplexPoly.from_dict({"coeffs": [1.0], "extra": 0})
    with pytest.raises(ValueError):
        ComplexPoly.from_dict({"coeffs": []})
    with pytest.raises(ValueError):
        ComplexPoly.from_dict({"coeffs": [[1.0, 2.0, 3.0]]})
    with pytest.raises(ValueError):
        ComplexPoly.from_dict({"wrong": [1.0]})


# ---------------------------------------------------------------------------
# TaylorSeries
# ---------------------------------------------------------------------------


def test_series_from_poly_scales_by_factorials():
    p = ComplexPoly((1.0, 2.0, 3.0))
    s = TaylorSeries.from_poly(p)
    # derivs[k] = k! * c_k
    assert s.derivs == (1 + 0j, 2 + 0j, 6 + 0j)
    assert s.to_poly() == p


def test_series_from_poly_with_padding():
    s = TaylorSeries.from_poly(ComplexPoly((1.0,)), order=4)
    assert s.derivs == (1 + 0j, 0j, 0j, 0j)
    with pytest.raises(ValueError):
        TaylorSeries.from_poly(ComplexPoly((1.0, 1.0, 1.0)), order=2)


def test_series_exponential():
    s = TaylorSeries.exponential(2.0, order=5)
    assert s.derivs == (1 + 0j, 2 + 0j, 4 + 0j, 8 + 0j, 16 + 0j)
    assert s.bound_b == 2.0
    assert TaylorSeries.exponential(0.0, order=3).bound_b is None


def test_series_requires_data_and_finiteness():
    with pytest.raises(ValueError):
        TaylorSeries(())
    with pytest.raises(ValueError):
        TaylorSeries((math.nan,))
    with pytest.raises(ValueError):
        TaylorSeries((1.0,), bound_b=-1.0)
    with pytest.raises(ValueError):
        TaylorSeries((1.0,), bound_b=0.0)


def test_series_json_round_trip():
    s = TaylorSeries((1.0, 2.0j), bound_b=0.5)
    d = s.to_dict()
    assert d == {"derivs": [[1.0, 0.0], [0.0, 2.0]], "bound_b": 0.5}
    assert TaylorSeries.from_dict(d) == s
    with pytest.raises(ValueError):
        TaylorSeries.from_dict({"derivs": [[1.0, 0.0]]})
    with pytest.raises(ValueError):
        TaylorSeries.from_dict({"derivs": [], "bound_b": None})


def test_series_call_evaluates_truncation():
    s = TaylorSeries.exponential(1.0, order=30)
    assert s(1.0) == pytest.approx(math.e, rel=1e-14)


# ---------------------------------------------------------------------------
# LaguerreForm
# ---------------------------------------------------------------------------


def test_laguerre_form_sorts_betas_and_validates():
    g = LaguerreForm(2.0, 1, 0.5, betas=(0.1, 3.0, 1.0))
    assert g.betas == (3.0, 1.0, 0.1)
    with pytest.raises(ValueError):
        LaguerreForm(0.0, 0, 0.0)
    with pytest.raises(ValueError):
        LaguerreForm(1.0, -1, 0.0)
    with pytest.raises(ValueError):
        LaguerreForm(1.0, 0, 0.0, betas=(-0.5,))
    with pytest.raises(ValueError):
        LaguerreForm(1.0, 0, math.inf)


def test_laguerre_form_class_tag():
    assert LaguerreForm(1.0, 2, 0.0).class_tag == "L0"
    assert LaguerreForm(1.0, 0, 1.5).class_tag == "L+"
    assert LaguerreForm(1.0, 0, 0.0, betas=(1.0,)).class_tag == "L+"
    assert LaguerreForm(1.0, 0, -0.5).class_tag == "L-"


def test_laguerre_form_poly_part():
    g = LaguerreForm(2.0, 1, 0.7, betas=(3.0,))
    # 2 z (1 + 3z) = 2z + 6z^2
    assert np.allclose(g.poly_part().as_array(), [0.0, 2.0, 6.0])


def test_laguerre_to_taylor_exponential_only():
    # C=1, m=0, alpha=1: derivs are all 1
    s = laguerre_to_taylor(LaguerreForm(1.0, 0, 1.0), order=6)
    assert np.allclose(s.derivs, np.ones(6))
    assert s.bound_b == 1.0


def test_laguerre_to_taylor_monomial_and_product():
    s = laguerre_to_taylor(LaguerreForm(1.0, 1, 0.0), order=5)
    assert s.derivs == (0j, 1 + 0j, 0j, 0j, 0j)
    assert s.bound_b is None
    # C=2, m=0, alpha=1: f = 2 e^z, every derivative is 2
    s2 = laguerre_to_taylor(LaguerreForm(2.0, 0, 1.0), order=5)
    assert np.allclose(s2.derivs, 2.0 * np.ones(5))


def test_laguerre_to_taylor_recovers_roots():
    # alpha = 0 keeps the function polynomial: roots are -1/beta_j
    g = LaguerreForm(1.0, 0, 0.0, betas=(2.0, 0.5))
    p = laguerre_to_taylor(g, order=8).to_poly()
    for beta in g.betas:
        assert abs(p(-1.0 / beta)) < 1e-8


def test_laguerre_to_taylor_short_truncation_warns():
    with pytest.warns(RuntimeWarning):
        s = laguerre_to_taylor(LaguerreForm(1.0, 3, 0.0), order=2)
    assert all(d == 0 for d in s.derivs)


# ---------------------------------------------------------------------------
# OperatorSpec
# ---------------------------------------------------------------------------


def test_operator_spec_validation():
    spec = OperatorSpec(1.5, -0.5)
    assert spec.theta == 1.5 and spec.omega == -0.5 and spec.time_a == 0.0
    with pytest.raises(ValueError):
        OperatorSpec(-0.1, 0.0)
    with pytest.raises(ValueError):
        OperatorSpec(1.0, math.nan)
    with pytest.raises(ValueError):
        OperatorSpec(1.0, 0.0, time_a=-1.0)


# ---------------------------------------------------------------------------
# scalar parameter formulas
# ---------------------------------------------------------------------------


def test_gamma_factor_basic_values():
    assert gamma_factor(1.0, 0.0) == 1.0
    assert gamma_factor(0.0, 3.0) == 0.0
    assert gamma_factor(1.0, 1.0) == pytest.approx(math.e - 1.0, rel=1e-15)
    with pytest.raises(ValueError):
        gamma_factor(-1.0, 0.0)


def test_gamma_factor_continuous_through_zero_rate():
    # expm1 keeps (e^{a w} - 1)/w accurate; compare with the two-term Taylor
    # expansion a + a^2 w / 2 for |w| tiny.
    for a in (0.5, 1.0, 2.0):
        for w in (1e-6, -1e-6):
            expected = a + a * a * w / 2.0
            assert gamma_factor(a, w) == pytest.approx(expected, rel=1e-10)


def test_nu_values():
    assert nu(1.0, 0.0) == 1.0
    assert nu(0.5, 0.0) == 2.0
    assert nu(1.0, 1.0) == pytest.approx(1.5819767068693265, rel=1e-15)
    assert nu(2.0, -1.0) == pytest.approx(0.15651764274966568, rel=1e-15)
    with pytest.raises(ValueError):
        nu(0.0, 1.0)


def test_nu_times_gamma_is_exp_rate():
    # nu(a, w) * gamma_factor(a, w) telescopes to exp(a w)
    for a, w in [(0.5, 0.7), (1.0, -0.3), (2.0, 1.0), (0.1, 0.0)]:
        assert nu(a, w) * gamma_factor(a, w) == pytest.approx(
            math.exp(a * w), rel=1e-14
        )


def test_c_of_b_values():
    assert c_of_b(1.0, 1.0, 0.25) == pytest.approx(1.1913311040614878, rel=1e-15)
    assert c_of_b(0.0, 3.0, 0.5) == 0.5
    assert c_of_b(1.0, 0.0, 0.5) == pytest.approx(1.0, rel=1e-15)
    assert c_of_b(1.0, 0.0, 0.0) == 0.0


def test_c_of_b_contractivity_error():
    with pytest.raises(ContractivityError) as exc:
        c_of_b(1.0, 0.0, 1.5)  # b * gamma = 1.5 >= 1
    assert exc.value.product == pytest.approx(1.5)
    with pytest.raises(ValueError):
        c_of_b(1.0, 0.0, -0.5)


# ---------------------------------------------------------------------------
# weighted norm and growth diagnostics
# ---------------------------------------------------------------------------


def test_norm_b_examples():
    # exp(z) probed at b = 2: sup_k 2^{-k} * 1 is attained at k = 0
    res = norm_b(TaylorSeries.exponential(1.0, order=40), 2.0)
    assert res.value == 1.0
    assert not res.possibly_divergent
    # z^3 at b = 1: the only nonzero derivative is 3! at k = 3
    res = norm_b(ComplexPoly((0.0, 0.0, 0.0, 1.0)), 1.0)
    assert res.value == 6.0
    assert float(res) == 6.0
    assert isinstance(res, BoundNorm)


def test_norm_b_zero_and_validation():
    res = norm_b(ComplexPoly((0.0,)), 1.0)
    assert res.value == 0.0 and not res.possibly_divergent
    with pytest.raises(ValueError):
        norm_b(ComplexPoly((1.0,)), 0.0)
    with pytest.raises(ValueError):
        norm_b(ComplexPoly((1.0,)), -1.0)


def test_norm_b_divergence_flag():
    # exp(z) probed at b = 0.5 grows like 2^k: the sup sits at the end of
    # the truncation, which the flag reports.
    res = norm_b(TaylorSeries.exponential(1.0, order=40), 0.5)
    assert res.possibly_divergent
    # a polynomial has a finite norm for every b > 0
    p = ComplexPoly((1.0, -2.0, 0.5))
    for b in (0.01, 0.5, 1.0, 10.0):
        r = norm_b(p, b)
        assert math.isfinite(r.value)


def test_norm_b_monotone_decreasing_in_b():
    rng = np.random.default_rng(11)
    c = rng.normal(size=9) + 1j * rng.normal(size=9)
    s = TaylorSeries(tuple(c))
    bs = [0.2, 0.5, 1.0, 2.0, 5.0]
    vals = [norm_b(s, b).value for b in bs]
    for lo, hi in zip(vals[1:], vals[:-1]):
        assert lo <= hi + 1e-15


def test_bound_estimate():
    # exp(3z): consecutive-derivative ratio is exactly 3
    assert bound_estimate(TaylorSeries.exponential(3.0, order=30)) == pytest.approx(3.0)
    # polynomials have vanishing tail ratios
    assert bound_estimate(TaylorSeries.from_poly(ComplexPoly((1.0, 1.0)), order=20)) == 0.0
    assert bound_estimate(TaylorSeries((1.0,))) == 0.0
