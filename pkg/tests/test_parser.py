import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltaops import expr as ex
from deltaops.errors import ParseError
from deltaops.parser import parse_expression as P
from deltaops.parser import tokenize
from strategies import exp_trig_poly, gaussian_block, nonzero, small


def test_sinc():
    e = P("sin(x)/x")
    assert isinstance(e, ex.Prod)
    assert ex.Sin(ex.IDENTITY) in e.factors
    assert ex.power(ex.X, -1) in e.factors


def test_gaussian_input():
    e = P("cos(x)*gauss(0.5)")
    assert e == ex.mul(ex.Cos(ex.IDENTITY), ex.Gaussian(0.5))
    assert e(1.2) == pytest.approx(math.cos(1.2) * math.exp(-1.44), rel=1e-15)


def test_unbalanced_parenthesis():
    with pytest.raises(ParseError) as info:
        P("sin(x^2")
    assert info.value.position == len("sin(x^2")
    assert ")" in info.value.expected


@pytest.mark.parametrize(
    "src,pos",
    [("", 0), ("2 +", 3), ("foo(x)", 0), ("x $ 2", 2), ("x^1.5", 2), ("sin x", 4), ("(x))", 3), ("x x", 2), ("2^3^1", 3)],
)
def test_error_positions(src, pos):
    with pytest.raises(ParseError) as info:
        P(src)
    assert info.value.position == pos
    assert str(pos) in str(info.value)


@pytest.mark.parametrize(
    "src",
    ["sin(x^2)", "exp(x^3)", "gauss(-1)", "gauss(x)", "delta(x, 1.5)", "theta(3)", "sin(1/x)", "exp(x^2)", "cos(x, 2)"],
)
def test_rejected_arguments(src):
    with pytest.raises(ParseError):
        P(src)


@pytest.mark.parametrize(
    "src,x,value",
    [
        ("1 + 2*3", 0.0, 7.0),
        ("-x^2", 3.0, -9.0),
        ("x^-1", 4.0, 0.25),
        ("x^(-2)", 2.0, 0.25),
        ("1.5e1 - .5", 0.0, 14.5),
        ("i*i", 0.0, -1.0),
        ("exp(i*x)", math.pi, -1.0),
        ("theta(x - 1)", 2.0, 1.0),
        ("theta(x - 1)", 0.0, 0.0),
        ("gauss(2, x - 1)", 3.0, math.exp(-1.0)),
        ("exp(-x^2 + 2*x)", 0.5, math.exp(0.75)),
        ("log(2*x)", 1.5, math.log(3.0)),
        ("(1 - cos(2*x))/x^2", 0.7, (1 - math.cos(1.4)) / 0.49),
        ("  sin ( x ) *  cos( x )  ", 0.3, math.sin(0.3) * math.cos(0.3)),
    ],
)
def test_values(src, x, value):
    assert complex(P(src)(x)) == pytest.approx(value, rel=1e-14, abs=1e-15)


def test_delta_nodes():
    e = P("delta(x + 2, 3)")
    assert e == ex.DiracDelta(3, ex.Affine(1.0, 2.0))
    assert P("delta(x)") == ex.DiracDelta()


def test_tokens_carry_positions():
    toks = tokenize("sin(x) + 2.5")
    assert [(t.kind, t.text, t.pos) for t in toks] == [
        ("name", "sin", 0),
        ("op", "(", 3),
        ("name", "x", 4),
        ("op", ")", 5),
        ("op", "+", 7),
        ("num", "2.5", 9),
        ("end", "", 12),
    ]


def _close(e1, e2, xs=(-1.3, 0.4, 2.1)):
    for x in xs:
        a, b = complex(e1(x)), complex(e2(x))
        assert abs(a - b) <= 1e-12 * (1 + abs(a))


@given(exp_trig_poly())
def test_printed_form_reparses(e):
    _close(P(str(e)), e)


@given(gaussian_block())
def test_printed_gaussian_reparses(e):
    _close(P(str(e)), e)


@given(nonzero, small, st.sampled_from(["sin", "cos", "exp", "theta"]))
def test_affine_arguments(scale, offset, fn):
    e = P(f"{fn}({scale!r}*x + ({offset!r}))")
    assert e.arg.scale == pytest.approx(scale, rel=1e-15)
    assert e.arg.offset == pytest.approx(offset, abs=1e-15)
