import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltaops import expr as ex
from deltaops.errors import ComposeNonzeroConstant, NotSmoothAtOrigin, ZeroConstantTerm
from deltaops.series import PowerSeries, reciprocal, series_arith, series_of
from strategies import exp_trig_poly

coef = st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False)


@st.composite
def series(draw, order=8, unit=False):
    c = draw(st.lists(coef, min_size=order + 1, max_size=order + 1))
    if unit:
        c[0] = draw(st.complex_numbers(min_magnitude=0.5, max_magnitude=3.0, allow_nan=False, allow_infinity=False))
    return PowerSeries(c)


def test_mul_difference_of_squares():
    out = series_arith(PowerSeries([1, 1], 2), PowerSeries([1, -1], 2), "mul")
    np.testing.assert_allclose(out.coeffs, [1, 0, -1])


def test_compose_exp_with_2x():
    out = series_arith(PowerSeries.exp_series(3), PowerSeries([0, 2], 3), "compose")
    np.testing.assert_allclose(out.coeffs, [1, 2, 2, 4 / 3], rtol=1e-15)


def test_add_negation_is_zero():
    a = PowerSeries([1, 2j, 3])
    assert np.all(series_arith(a, -a, "add").coeffs == 0)


def test_compose_needs_zero_constant():
    with pytest.raises(ComposeNonzeroConstant):
        series_arith(PowerSeries.exp_series(3), PowerSeries([1, 1], 3), "compose")


def test_unknown_operation():
    with pytest.raises(ValueError):
        series_arith(PowerSeries([1]), PowerSeries([1]), "div")


def test_geometric_reciprocal():
    np.testing.assert_allclose(reciprocal(PowerSeries([1, -1], 3)).coeffs, [1, 1, 1, 1])


def test_reciprocal_of_gaussian_exponent():
    n = 12
    e = PowerSeries([0, 0, -0.5], n).exp()
    expected = PowerSeries([0, 0, 0.5], n).exp()
    np.testing.assert_allclose(reciprocal(e).coeffs, expected.coeffs, atol=1e-15)
    # closed form coefficients of exp(x^2/2)
    for k in range(n // 2 + 1):
        assert expected.coeffs[2 * k] == pytest.approx(0.5**k / math.factorial(k))


def test_reciprocal_of_constant():
    assert reciprocal(PowerSeries([2.0], 0)).coeffs[0] == 0.5


def test_reciprocal_needs_constant_term():
    with pytest.raises(ZeroConstantTerm):
        reciprocal(PowerSeries([0, 1]))


def test_result_order_is_minimum():
    assert (PowerSeries([1] * 5) * PowerSeries([1] * 3)).order == 2
    assert (PowerSeries([1] * 5) + PowerSeries([1] * 3)).order == 2


def test_series_of_cos():
    np.testing.assert_allclose(series_of(ex.Cos(), 4).coeffs, [1, 0, -0.5, 0, 1 / 24], atol=1e-16)


def test_series_of_gaussian():
    np.testing.assert_allclose(series_of(ex.Gaussian(1.0), 4).coeffs, [1, 0, -0.5, 0, 0.125], atol=1e-16)


@pytest.mark.parametrize("e", [ex.Heaviside(), ex.DiracDelta(), ex.PVRecip(), ex.Log(), ex.power(ex.X, -2)])
def test_series_of_singular(e):
    with pytest.raises(NotSmoothAtOrigin):
        series_of(e, 5)


def test_series_of_heaviside_away_from_jump():
    assert series_of(ex.Heaviside(ex.Affine(1.0, 1.0)), 3).coeffs[0] == 1


def test_log_jet_matches_hand_expansion():
    # log(1 + x) = x - x^2/2 + x^3/3
    np.testing.assert_allclose(series_of(ex.Log(ex.Affine(1.0, 1.0)), 3).coeffs, [0, 1, -0.5, 1 / 3], atol=1e-16)


@given(series(), series(), series())
def test_mul_associative(a, b, c):
    assert ((a * b) * c).allclose(a * (b * c), rtol=1e-10, atol=1e-10)


@given(series(unit=True))
def test_reciprocal_involution(a):
    # conditioning degrades as |c0| shrinks relative to the other coefficients
    assert reciprocal(reciprocal(a)).allclose(a, rtol=1e-6, atol=1e-6)


@given(series(unit=True))
def test_reciprocal_is_inverse(a):
    one = a * reciprocal(a)
    scale = max(1.0, float(np.max(np.abs(reciprocal(a).coeffs))))
    assert np.allclose(one.coeffs, [1] + [0] * a.order, atol=1e-10 * scale)


@given(exp_trig_poly(), st.integers(min_value=2, max_value=12))
def test_series_of_derivative_is_formal_derivative(e, n):
    lhs = series_of(ex.differentiate(e, 1), n - 1)
    rhs = series_of(e, n).derivative()
    assert lhs.allclose(rhs, rtol=1e-9, atol=1e-9)


@given(exp_trig_poly(), st.floats(min_value=-1.5, max_value=1.5))
def test_jet_reproduces_derivatives(e, x0):
    jet = series_of(ex.shift(e, x0), 4).derivative_values()
    for n in range(5):
        assert jet[n] == pytest.approx(ex.differentiate(e, n)(x0), rel=1e-9, abs=1e-9)
