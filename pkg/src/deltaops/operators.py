"""Derivative operators ``f(mu * D)`` built from closed-form functions.

A function in the exp-trig-polynomial-Gaussian family, possibly divided by a
power of ``x``, is first normalised to an :class:`ExpPoly`, a finite sum of
``c * x**k * exp(beta*x) * exp(-p*x**2)`` blocks.  Substituting ``x -> mu*D``
turns each block into ``c mu^k * exp(beta*mu*D) * D^k * exp(-p mu^2 D^2)``:
a translation, a derivative power (negative powers are antiderivatives) and a
heat operator.  The same function can also be carried as a plain truncated
power series in ``D``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from math import comb, factorial

import numpy as np

from . import expr as ex
from .errors import (
    HeatRuleViolation,
    NoClosedForm,
    NotExponentialPolynomial,
    NotSmoothAtOrigin,
    UndefinedDistribution,
    UnliftableExpression,
    ZeroConstantTerm,
)
from .series import DEFAULT_ORDER, PowerSeries, taylor

MINUS_I = -1j
PLUS_I = 1j


# ---------------------------------------------------------------------------
# exponential-polynomial normal form


@dataclass
class ExpPoly:
    """``sum c * x**k * exp(beta*x) * exp(-p*x**2)`` keyed by ``(k, beta, p)``."""

    terms: dict = field(default_factory=dict)

    @classmethod
    def const(cls, c) -> "ExpPoly":
        return cls({(0, 0j, 0j): complex(c)}) if c != 0 else cls()

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return ExpPoly({k: c for k, c in out.items() if c != 0})

    def __mul__(self, other):
        if not isinstance(other, ExpPoly):
            return ExpPoly({k: c * other for k, c in self.terms.items() if c * other != 0})
        out: dict = {}
        for (k1, b1, p1), c1 in self.terms.items():
            for (k2, b2, p2), c2 in other.terms.items():
                key = (k1 + k2, b1 + b2, p1 + p2)
                out[key] = out.get(key, 0) + c1 * c2
        return ExpPoly({k: c for k, c in out.items() if c != 0})

    def __pow__(self, n: int) -> "ExpPoly":
        if n < 0:
            if len(self.terms) != 1:
                raise NotExponentialPolynomial("only single-term bases can carry negative powers")
            ((k, b, p), c), = self.terms.items()
            return ExpPoly({(k * n, b * n, p * n): c**n})
        out = ExpPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    @property
    def is_gaussian_free(self) -> bool:
        return all(p == 0 for (_, _, p) in self.terms)

    @property
    def min_power(self) -> int:
        return min((k for (k, _, _) in self.terms), default=0)

    def to_expr(self) -> ex.Expr:
        parts = []
        for (k, beta, p), c in self.terms.items():
            f = [ex.Const(c), ex.power(ex.X, k)]
            if beta != 0:
                f.append(ex.Exp(ex.Affine(beta, 0.0)))
            if p != 0:
                if complex(p).imag != 0 or complex(p).real <= 0:
                    raise NoClosedForm("Gaussian factor with non-positive precision")
                f.append(ex.Gaussian(1 / (2 * complex(p).real)))
            parts.append(ex.mul(*f))
        return ex.add(*parts)

    def antiderivative(self) -> ex.Expr:
        if not self.is_gaussian_free or self.min_power < 0:
            raise NoClosedForm("antiderivative needs Gaussian-free, pole-free exponential polynomials")
        parts = []
        for (k, beta, _), c in self.terms.items():
            if beta == 0:
                parts.append(ex.mul(ex.Const(c / (k + 1)), ex.power(ex.X, k + 1)))
                continue
            # int x^k e^{bx} = e^{bx} sum_j (-1)^j k!/(k-j)! x^(k-j) / b^(j+1)
            poly = [
                ex.mul(ex.Const((-1) ** j * factorial(k) / factorial(k - j) / beta ** (j + 1)), ex.power(ex.X, k - j))
                for j in range(k + 1)
            ]
            parts.append(ex.mul(ex.Const(c), ex.Exp(ex.Affine(beta, 0.0)), ex.add(*poly)))
        return ex.add(*parts)

    def series(self, order: int) -> PowerSeries:
        """Maclaurin series; poles from negative powers must cancel."""
        lift = max(0, -self.min_power)
        n = order + lift
        acc = PowerSeries.constant(0, n)
        for (k, beta, p), c in self.terms.items():
            e = PowerSeries([0, beta, -p], n).exp()
            shift = k + lift
            coeffs = np.concatenate([np.zeros(shift, dtype=complex), e.coeffs])[: n + 1]
            acc = acc + PowerSeries(coeffs, n) * c
        head = acc.coeffs[:lift]
        scale = max(1.0, float(np.max(np.abs(acc.coeffs))))
        if lift and np.max(np.abs(head)) > 1e-12 * scale:
            raise NotSmoothAtOrigin("function has a pole at the origin")
        return PowerSeries(acc.coeffs[lift:], order)


def _affine_exp(arg: ex.Affine, factor: complex = 1.0) -> ExpPoly:
    # exp(factor * (a x + c))
    return ExpPoly({(0, complex(factor * arg.scale), 0j): cmath.exp(factor * arg.offset)})


def exp_poly_form(e: ex.Expr) -> ExpPoly:
    """Normalise ``e`` or raise :class:`NotExponentialPolynomial`."""
    if isinstance(e, ex.Const):
        return ExpPoly.const(e.value)
    if isinstance(e, ex.Var):
        return ExpPoly({(1, 0j, 0j): complex(e.arg.scale)}) + ExpPoly.const(e.arg.offset)
    if isinstance(e, ex.Sum):
        out = ExpPoly()
        for t in e.terms:
            out = out + exp_poly_form(t)
        return out
    if isinstance(e, ex.Prod):
        out = ExpPoly.const(1)
        for f in e.factors:
            out = out * exp_poly_form(f)
        return out
    if isinstance(e, ex.Pow):
        return exp_poly_form(e.base) ** e.n
    if isinstance(e, ex.Exp):
        return _affine_exp(e.arg)
    if isinstance(e, ex.Sin):
        return (_affine_exp(e.arg, 1j) + _affine_exp(e.arg, -1j) * -1) * (1 / 2j)
    if isinstance(e, ex.Cos):
        return (_affine_exp(e.arg, 1j) + _affine_exp(e.arg, -1j)) * 0.5
    if isinstance(e, ex.Gaussian):
        a, c, s = complex(e.arg.scale), complex(e.arg.offset), e.s
        return ExpPoly({(0, -a * c / s, a * a / (2 * s)): cmath.exp(-c * c / (2 * s))})
    if isinstance(e, ex.PVRecip) and e.arg.offset == 0:
        return ExpPoly({(-1, 0j, 0j): 1 / complex(e.arg.scale)})
    raise NotExponentialPolynomial(f"{type(e).__name__} node is outside the exponential-polynomial family")


# ---------------------------------------------------------------------------
# operator forms


@dataclass(frozen=True)
class ShiftTerm:
    """``coeff * exp(shift*D) * D**k * D**(-m) * exp(heat*D**2)``."""

    coeff: complex
    shift: complex = 0.0
    k: int = 0
    m: int = 0
    heat: complex = 0.0


@dataclass(frozen=True)
class OperatorForm:
    terms: tuple[ShiftTerm, ...] | None = None
    series: PowerSeries | None = None

    def __post_init__(self):
        if self.terms is None and self.series is None:
            raise ValueError("an operator needs an exact part, a series, or both")

    @property
    def has_exact(self) -> bool:
        return self.terms is not None

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> "OperatorForm":
        return cls((ShiftTerm(1.0),), PowerSeries.constant(1.0, order))

    @classmethod
    def translation(cls, c: complex, order: int = DEFAULT_ORDER) -> "OperatorForm":
        coeffs = [c**n / factorial(n) for n in range(order + 1)]
        return cls((ShiftTerm(1.0, shift=c),), PowerSeries(coeffs))

    @classmethod
    def heat(cls, tau: complex, order: int = DEFAULT_ORDER) -> "OperatorForm":
        coeffs = np.zeros(order + 1, dtype=complex)
        for j in range(order // 2 + 1):
            coeffs[2 * j] = tau**j / factorial(j)
        return cls((ShiftTerm(1.0, heat=tau),), PowerSeries(coeffs))

    @classmethod
    def from_series(cls, s: PowerSeries) -> "OperatorForm":
        return cls(None, s)

    def __matmul__(self, other: "OperatorForm") -> "OperatorForm":
        """Composition ``self`` after ``other`` (all parts commute)."""
        terms = None
        if self.has_exact and other.has_exact:
            terms = tuple(
                ShiftTerm(a.coeff * b.coeff, a.shift + b.shift, a.k + b.k, a.m + b.m, a.heat + b.heat)
                for a in self.terms
                for b in other.terms
            )
            terms = _normalise_terms(terms)
        series = self.series * other.series if self.series is not None and other.series is not None else None
        return OperatorForm(terms, series)

    def scaled(self, c: complex) -> "OperatorForm":
        terms = None if self.terms is None else tuple(
            ShiftTerm(t.coeff * c, t.shift, t.k, t.m, t.heat) for t in self.terms
        )
        return OperatorForm(terms, None if self.series is None else self.series * c)


def _normalise_terms(terms) -> tuple[ShiftTerm, ...]:
    acc: dict = {}
    for t in terms:
        k, m = t.k - min(t.k, t.m), t.m - min(t.k, t.m)
        key = (t.shift, k, m, t.heat)
        acc[key] = acc.get(key, 0) + t.coeff
    return tuple(ShiftTerm(c, s, k, m, h) for (s, k, m, h), c in acc.items() if c != 0)


def lift(f: ex.Expr, symbol: complex = MINUS_I, order: int = DEFAULT_ORDER) -> OperatorForm:
    """Operator ``f(symbol * D)``.

    ``symbol`` is ``-1j`` for ``f(-i d/dx)``, ``1j`` for ``f(i d/dx)``;
    any complex number is accepted.
    """
    mu = complex(symbol)
    terms = None
    form = None
    try:
        form = exp_poly_form(f)
    except NotExponentialPolynomial:
        pass
    if form is not None:
        raw = []
        for (k, beta, p), c in form.terms.items():
            raw.append(
                ShiftTerm(
                    coeff=c * mu**k,
                    shift=beta * mu,
                    k=max(k, 0),
                    m=max(-k, 0),
                    heat=-p * mu * mu,
                )
            )
        terms = _normalise_terms(raw) or (ShiftTerm(0.0),)
    series = None
    try:
        s = form.series(order) if form is not None else taylor(f, 0.0, order)
        series = PowerSeries(s.coeffs * mu ** np.arange(order + 1))
    except (NotSmoothAtOrigin, ZeroConstantTerm, UndefinedDistribution, TypeError):
        series = None
    if terms is None and series is None:
        raise UnliftableExpression(f"cannot build an operator from {f}")
    return OperatorForm(terms, series)


# ---------------------------------------------------------------------------
# exact application


def _hermite_coeffs(poly: list[complex], s: float) -> list[complex]:
    """Coefficients ``h`` with ``P(u) G_s(u) = sum_i h_i D^i G_s(u)``."""
    deg = len(poly) - 1
    q = [np.array([1.0 + 0j])]
    for _ in range(deg):
        prev = q[-1]
        d = np.polynomial.polynomial.polyder(prev) if len(prev) > 1 else np.zeros(1, dtype=complex)
        nxt = np.zeros(len(prev) + 1, dtype=complex)
        nxt[: len(d)] += d
        nxt[1:] -= prev / s
        q.append(nxt)
    rem = np.array(poly, dtype=complex)
    h = [0j] * (deg + 1)
    for i in range(deg, -1, -1):
        h[i] = rem[i] / q[i][i]
        rem[: i + 1] -= h[i] * q[i][: i + 1]
    return h


def _heat_gaussian_block(k: int, beta: complex, p: complex, c: complex, tau: float) -> ex.Expr:
    if complex(p).imag != 0 or complex(p).real <= 0:
        raise HeatRuleViolation("Gaussian factor must have positive precision")
    p = complex(p).real
    s = 1 / (2 * p)
    width = s + 2 * tau
    if width <= 0:
        raise HeatRuleViolation(f"heat operator exp({tau} D^2) would give Gaussian width {width} <= 0")
    x0 = beta / (2 * p)
    pref = c * cmath.exp(beta * beta / (4 * p)) * math.sqrt(s / width)
    # x^k = (u + x0)^k with u = x - x0
    poly = [comb(k, j) * x0 ** (k - j) for j in range(k + 1)]
    h = _hermite_coeffs(poly, s)
    g = ex.Gaussian(width, ex.Affine(1.0, -x0))
    return ex.add(*(ex.mul(ex.Const(pref * hi), ex.differentiate(g, i)) for i, hi in enumerate(h) if hi != 0))


def _heat_exp_block(k: int, beta: complex, c: complex, tau: complex) -> ex.Expr:
    # e^{tau D^2} x^k e^{bx} = e^{bx} e^{tau (D+b)^2} x^k
    w = (PowerSeries([0, 2 * tau * beta, tau], k).exp() * cmath.exp(tau * beta * beta)).coeffs
    poly = [
        ex.mul(ex.Const(w[j] * factorial(k) / factorial(k - j)), ex.power(ex.X, k - j)) for j in range(k + 1) if w[j] != 0
    ]
    e = [ex.Exp(ex.Affine(beta, 0.0))] if beta != 0 else []
    return ex.mul(ex.Const(c), *e, ex.add(*poly))


def heat_apply(tau: complex, e: ex.Expr) -> ex.Expr:
    """``exp(tau D^2) e`` in closed form.

    Gaussian blocks of width ``s`` go to width ``s + 2 tau`` (must stay
    positive); a delta needs ``tau > 0`` and becomes the heat kernel.
    """
    if tau == 0:
        return e
    terms = e.terms if isinstance(e, ex.Sum) else (e,)
    out = []
    rest = []
    for t in terms:
        c, body = ex._split_coeff(t)
        if isinstance(body, ex.DiracDelta):
            out.append(ex.mul(ex.Const(c), _heat_delta(tau, body)))
        else:
            rest.append(t)
    if rest:
        form = exp_poly_form(ex.add(*rest))
        for (k, beta, p), c in form.terms.items():
            if k < 0:
                raise NoClosedForm("heat operator on a pole")
            if p != 0:
                out.append(_heat_gaussian_block(k, beta, p, c, _real_tau(tau)))
            else:
                out.append(_heat_exp_block(k, beta, c, tau))
    return ex.add(*out)


def _real_tau(tau) -> float:
    if complex(tau).imag != 0:
        raise HeatRuleViolation(f"heat parameter must be real, got {tau}")
    return complex(tau).real


def _heat_delta(tau, d: ex.DiracDelta) -> ex.Expr:
    tau = _real_tau(tau)
    if tau <= 0:
        raise HeatRuleViolation(f"exp({tau} D^2) applied to a delta needs tau > 0")
    a = complex(d.arg.scale).real
    b = complex(d.arg.offset) / a
    if b.imag > 0:
        return ex.ZERO
    if b.imag < 0:
        raise UndefinedDistribution(f"{d} lies in the lower half plane")
    width = 2 * tau
    kernel = ex.mul(ex.Const(1 / math.sqrt(2 * math.pi * width)), ex.Gaussian(width, ex.Affine(1.0, b)))
    return ex.mul(ex.Const(1 / (a**d.order * abs(a))), ex.differentiate(kernel, d.order))


def apply_exact(op: OperatorForm, e: ex.Expr) -> ex.Expr:
    """Closed-form ``op e``.

    Per term: heat first, then translation, then antiderivatives, then
    derivatives.  All four commute up to integration constants, which cancel
    between the translated copies of any integrable input.
    """
    if not op.has_exact:
        raise UnliftableExpression("operator has no exact part")
    heated: dict = {}
    parts = []
    for t in op.terms:
        if t.coeff == 0:
            continue
        if t.heat not in heated:
            heated[t.heat] = heat_apply(t.heat, e)
        r = heated[t.heat].shift(t.shift)
        for _ in range(t.m):
            r = ex.antiderivative(r)
        r = ex.differentiate(r, t.k)
        parts.append(ex.mul(ex.Const(t.coeff), r))
    return ex.add(*parts)


# ---------------------------------------------------------------------------
# truncated application


def apply_truncated(op: OperatorForm, e: ex.Expr, x0: complex, n_terms: int) -> complex:
    """``sum c_n e^(n)(x0)`` over the first ``n_terms + 1`` nonzero coefficients.

    For even operators such as ``exp(-s/2 D^2)`` this keeps ``D^0 .. D^(2 n_terms)``.
    """
    if op.series is None:
        raise UnliftableExpression("operator has no series part")
    idx = [n for n, c in enumerate(op.series.coeffs) if c != 0][: n_terms + 1]
    if not idx:
        return 0j
    jet = taylor(e, x0, idx[-1]).coeffs
    return complex(sum(op.series.coeffs[n] * factorial(n) * jet[n] for n in idx))


def apply_to_series(op: OperatorForm, kernel: PowerSeries, y0: complex = 0.0) -> complex:
    """Exact terms of ``op`` applied to an entire function given by its series, at ``y0``.

    Heat acts coefficient-wise, ``D^-m`` integrates from 0, ``D^k``
    differentiates and the translation becomes the evaluation point.
    """
    if not op.has_exact:
        raise UnliftableExpression("operator has no exact part")
    total = 0j
    for t in op.terms:
        s = kernel
        if t.heat != 0:
            s = _heat_on_series(t.heat, s)
        for _ in range(t.m):
            s = s.integral()
        for _ in range(t.k):
            s = s.derivative()
        total += t.coeff * s(y0 + t.shift)
    return total


def _heat_on_series(tau: complex, s: PowerSeries) -> PowerSeries:
    c = s.coeffs
    n_max = len(c) - 1
    out = np.zeros(n_max + 1, dtype=complex)
    for n in range(n_max + 1):
        acc = 0j
        term_scale = 1.0
        for j in range(0, (n_max - n) // 2 + 1):
            m = n + 2 * j
            # tau^j / j! * m!/n! * c_m
            acc += tau**j * term_scale * c[m]
            term_scale *= (m + 1) * (m + 2) / (j + 1)
        out[n] = acc
    return PowerSeries(out)


# ---------------------------------------------------------------------------
# delta with derivatives in its argument


def _delta_derivative_terms(form: ExpPoly, y):
    """Yield ``(location, order, coeff, poly_power, alpha)`` for ``delta(i D - y)`` on ``form``.

    Each tuple stands for ``coeff * x**poly_power * exp(alpha*x) * delta^(order)(t - location)``
    in the frequency variable ``t`` (``t = y``).
    """
    for (k, alpha, p), c in form.terms.items():
        if p != 0 or k < 0:
            raise NotExponentialPolynomial("operand must be a polynomial times exponentials")
        loc = 1j * alpha
        for j in range(k + 1):
            # F(D + alpha) x^k with F = delta(iD - y); F^(j)(alpha) = i^j delta^(j)(i alpha - y)
            # and delta^(j)(loc - t) = (-1)^j delta^(j)(t - loc)
            coeff = c * (1j) ** j / factorial(j) * factorial(k) / factorial(k - j) * (-1) ** j
            yield loc, j, coeff, k - j, alpha


def apply_delta_of_derivative(e: ex.Expr, y: complex | None = None, x: complex = 0.0) -> ex.DistributionalValue:
    """``delta(i D - y) e`` at ``x`` for exponential-polynomial ``e``.

    Uses ``F(D) exp(alpha x) = F(alpha) exp(alpha x)``.  With ``y=None`` the
    result is the full distribution in ``y``; with a numeric ``y`` the delta
    terms are evaluated under the extended convention.
    """
    form = exp_poly_form(e)
    deltas = []
    for loc, order, coeff, kpow, alpha in _delta_derivative_terms(form, y):
        weight = coeff * complex(x) ** kpow * cmath.exp(alpha * x)
        if y is None:
            deltas.append(ex.DeltaTerm(loc, order, weight))
            continue
        z = loc - complex(y)
        if z.imag > 0:
            continue
        if z.imag < 0:
            raise UndefinedDistribution(f"delta at {z} (Im < 0)")
        if ex._vanishes(z, loc, y):
            deltas.append(ex.DeltaTerm(complex(y), order, weight))
    return ex.DistributionalValue(0.0, tuple(deltas))
