import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltaops import expr as ex
from deltaops.errors import HeatRuleViolation, NotExponentialPolynomial, UnliftableExpression
from deltaops.operators import (
    MINUS_I,
    OperatorForm,
    ShiftTerm,
    apply_delta_of_derivative,
    apply_exact,
    apply_truncated,
    exp_poly_form,
    heat_apply,
    lift,
)
from deltaops.parser import parse_expression as P
from strategies import exp_trig_poly, gaussian_block, small

X = ex.X


def normal(s):
    return ex.mul(ex.Const(1 / math.sqrt(2 * math.pi * s)), ex.Gaussian(s))


def test_lift_sinc():
    op = lift(P("sin(x)/x"), MINUS_I)
    terms = {(t.shift, t.k, t.m): t.coeff for t in op.terms}
    assert terms == {(1, 0, 1): pytest.approx(0.5), (-1, 0, 1): pytest.approx(-0.5)}


def test_lift_plane_wave_is_single_shift():
    w = 1.7
    op = lift(ex.Exp(ex.Affine(1j * w)), MINUS_I)
    assert len(op.terms) == 1
    t = op.terms[0]
    assert (t.coeff, t.shift, t.k, t.m, t.heat) == (1, pytest.approx(w), 0, 0, 0)


def test_lift_constant_is_identity():
    op = lift(ex.ONE)
    assert op.terms == (ShiftTerm(1.0),)
    assert op.series.coeffs[0] == 1 and not np.any(op.series.coeffs[1:])


def test_lift_plus_i_symbol():
    op = lift(ex.Exp(ex.Affine(1j)), 1j)
    assert op.terms[0].shift == pytest.approx(-1)


def test_lift_non_exponential_uses_series():
    op = lift(P("1/(1+x^2)"), MINUS_I, order=6)
    assert not op.has_exact
    # 1/(1 - D^2)
    np.testing.assert_allclose(op.series.coeffs, [1, 0, 1, 0, 1, 0, 1], atol=1e-15)


def test_unliftable():
    with pytest.raises(UnliftableExpression):
        lift(ex.Log())


def test_shift_on_delta():
    w = 0.6
    out = apply_exact(lift(ex.Exp(ex.Affine(1j * w))), ex.DiracDelta())
    assert out == ex.DiracDelta(0, ex.Affine(1.0, w))


def test_heat_on_normalised_gaussian():
    out = apply_exact(OperatorForm.heat(0.5), normal(1.0))
    for x in (0.0, 0.7, -2.0):
        assert out(x) == pytest.approx(normal(2.0)(x), rel=1e-14)


def test_inverse_derivative_on_delta():
    assert apply_exact(OperatorForm((ShiftTerm(1.0, m=1),)), ex.DiracDelta()) == ex.Heaviside()


def test_heat_rule_violation():
    with pytest.raises(HeatRuleViolation):
        apply_exact(OperatorForm.heat(-0.6), normal(1.0))
    with pytest.raises(HeatRuleViolation):
        apply_exact(OperatorForm.heat(-0.1), ex.DiracDelta())


def test_truncated_gaussian_delta():
    op = OperatorForm.heat(-0.5, order=10)
    base = 1 / math.sqrt(2 * math.pi)
    assert apply_truncated(op, normal(1.0), 0.0, 0) == pytest.approx(base, rel=1e-15)
    assert apply_truncated(op, normal(1.0), 0.0, 1) == pytest.approx(1.5 * base, rel=1e-15)


@given(exp_trig_poly(), st.floats(min_value=-1, max_value=1), st.integers(min_value=0, max_value=6))
def test_identity_truncated(e, x0, n):
    assert apply_truncated(OperatorForm.identity(), e, x0, n) == pytest.approx(e(x0), rel=1e-12, abs=1e-12)


def test_delta_of_derivative_on_plane_wave():
    w = 0.9
    dv = apply_delta_of_derivative(ex.Exp(ex.Affine(1j * w)), x=0.3)
    assert len(dv.deltas) == 1
    d = dv.deltas[0]
    assert d.location == pytest.approx(-w) and d.order == 0
    assert d.coeff == pytest.approx(np.exp(1j * w * 0.3))


def test_delta_of_derivative_on_constant():
    assert apply_delta_of_derivative(ex.ONE).deltas == (ex.DeltaTerm(0, 0, 1),)


def test_delta_of_derivative_on_sine():
    got = {(d.location.real, d.order): d.coeff for d in apply_delta_of_derivative(ex.Sin()).deltas}
    assert got == {(-1.0, 0): pytest.approx(1 / 2j), (1.0, 0): pytest.approx(-1 / 2j)}


def test_delta_of_derivative_numeric_argument():
    dv = apply_delta_of_derivative(ex.Sin(), y=1.0)
    assert dv.deltas == (ex.DeltaTerm(1.0, 0, -1 / 2j),)
    assert apply_delta_of_derivative(ex.Sin(), y=0.5).deltas == ()


def test_delta_of_derivative_rejects_gaussians():
    with pytest.raises(NotExponentialPolynomial):
        apply_delta_of_derivative(ex.Gaussian(1.0))


def test_delta_of_derivative_polynomial_factor():
    # delta(iD - y) x = x delta(-y) + i delta'(-y) = x delta(y) - i delta'(y)
    got = {d.order: d.coeff for d in apply_delta_of_derivative(X, x=2.0).deltas}
    assert got == {0: pytest.approx(2.0), 1: pytest.approx(-1j)}


def test_exp_poly_form_of_shifted_gaussian():
    form = exp_poly_form(ex.Gaussian(2.0, ex.Affine(1.0, 1.0)))
    # exp(-(x+1)^2/4) = e^{-1/4} e^{-x/2} e^{-x^2/4}
    ((k, b, p), c), = form.terms.items()
    assert (k, b, p) == (0, pytest.approx(-0.5), pytest.approx(0.25))
    assert c == pytest.approx(math.exp(-0.25))


@given(gaussian_block(), st.floats(min_value=0.05, max_value=1.5), st.floats(min_value=-1.5, max_value=1.5))
def test_heat_matches_convolution(f, tau, x):
    # exp(tau D^2) f = f * N(2 tau)
    got = heat_apply(tau, f)(x)
    fn = lambda y: complex(f(float(x - y))).real * math.exp(-y * y / (4 * tau)) / math.sqrt(4 * math.pi * tau)
    ref = float(mpmath.quad(lambda y: fn(float(y)), [-mpmath.inf, 0, mpmath.inf]))
    assert got == pytest.approx(ref, rel=1e-9, abs=1e-11)


@given(st.floats(min_value=0.2, max_value=3.0), st.floats(min_value=-0.45, max_value=2.0))
def test_heat_rule_on_normalised_gaussians(s, frac):
    tau = frac * s
    out = heat_apply(tau, normal(s))
    for x in (0.0, 0.4, -1.3):
        assert out(x) == pytest.approx(normal(s + 2 * tau)(x), rel=1e-12)


@given(exp_trig_poly(), small, small, st.floats(min_value=-1, max_value=1))
def test_shift_composition(e, a, b, x):
    ta, tb, tab = OperatorForm.translation(a), OperatorForm.translation(b), OperatorForm.translation(a + b)
    lhs = apply_exact(ta, apply_exact(tb, e))
    rhs = apply_exact(tab, e)
    assert lhs(x) == pytest.approx(rhs(x), rel=1e-9, abs=1e-9)
    assert (ta @ tb).terms[0].shift == pytest.approx(a + b)


@pytest.mark.parametrize("s_op,s_arg,x0", [(4.0, 2.0, 0.3), (2.0, 3.0, 0.0), (5.0, 1.0, -0.4)])
def test_exact_and_truncated_agree(s_op, s_arg, x0):
    op = lift(ex.Gaussian(s_op), MINUS_I, order=40)
    g = ex.Gaussian(s_arg)
    exact = apply_exact(op, g)(x0)
    errs = [abs(apply_truncated(op, g, x0, n) - exact) for n in range(14)]
    # the tau-series converges for |tau| < s/2; parameters keep tau below s/4
    tail = errs[4:]
    assert all(b < a for a, b in zip(tail, tail[1:]))
    assert errs[-1] < 1e-6 * abs(exact)


def test_regularised_deldel():
    sigma = tau = 0.1
    op = lift(normal(sigma), MINUS_I)
    got = apply_exact(op, normal(tau))(0.0)
    assert got == pytest.approx(1 / (2 * math.pi * math.sqrt(1 + sigma * tau)), rel=1e-12)
    small_w = apply_exact(lift(normal(1e-4)), normal(1e-4))(0.0)
    assert small_w == pytest.approx(1 / (2 * math.pi), rel=1e-7)
