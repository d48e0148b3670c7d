"""Hypothesis strategies for random closed-form expressions."""
from hypothesis import strategies as st

from deltaops import expr as ex

small = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False, allow_infinity=False)
nonzero = small.filter(lambda v: abs(v) > 0.1)
coeff = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False).filter(lambda v: abs(v) > 1e-3)


@st.composite
def smooth_atom(draw):
    kind = draw(st.sampled_from(["exp", "sin", "cos", "poly"]))
    k = draw(st.integers(min_value=0, max_value=3))
    arg = ex.Affine(draw(nonzero), draw(small))
    body = {"exp": ex.Exp, "sin": ex.Sin, "cos": ex.Cos}.get(kind)
    parts = [ex.Const(draw(coeff)), ex.power(ex.X, k)]
    if body is not None:
        parts.append(body(arg))
    return ex.mul(*parts)


@st.composite
def exp_trig_poly(draw, max_terms=3):
    n = draw(st.integers(min_value=1, max_value=max_terms))
    return ex.add(*(draw(smooth_atom()) for _ in range(n)))


@st.composite
def gaussian_block(draw):
    """c x^k cos(w x) exp(-x^2 / 2s)."""
    k = draw(st.integers(min_value=0, max_value=3))
    w = draw(st.floats(min_value=0.0, max_value=2.0))
    s = draw(st.floats(min_value=0.2, max_value=3.0))
    c = draw(coeff)
    return ex.mul(ex.Const(c), ex.power(ex.X, k), ex.Cos(ex.Affine(w)) if w else ex.ONE, ex.Gaussian(s))
