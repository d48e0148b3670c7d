"""Truncated formal power series about 0 with complex coefficients.

``taylor`` computes jets (Taylor coefficients at a point) of expression trees
by running every node through series arithmetic, which is how derivative
series get applied numerically without building huge symbolic derivatives.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from . import expr as ex
from .errors import ComposeNonzeroConstant, NotSmoothAtOrigin, UndefinedDistribution, ZeroConstantTerm

DEFAULT_ORDER = 16


class PowerSeries:
    """``c[0] + c[1] x + ... + c[N] x**N + O(x**(N+1))``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order: int | None = None):
        c = np.array(coeffs, dtype=complex).ravel()
        if order is not None:
            if order < 0:
                raise ValueError("truncation order must be >= 0")
            c = np.concatenate([c[: order + 1], np.zeros(max(0, order + 1 - len(c)), dtype=complex)])
        if len(c) == 0:
            c = np.zeros(1, dtype=complex)
        c.setflags(write=False)
        self.coeffs = c

    @classmethod
    def constant(cls, value: complex, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return cls([value], order)

    @classmethod
    def variable(cls, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return cls([0, 1], order)

    @classmethod
    def exp_series(cls, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return cls([1 / math.factorial(n) for n in range(order + 1)])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self):
        return f"PowerSeries({np.array2string(self.coeffs, precision=6)}, order={self.order})"

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, order)

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries.constant(other, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return PowerSeries(self.coeffs[: n + 1] + other.coeffs[: n + 1])

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries(self.coeffs * other)
        n = min(self.order, other.order)
        return PowerSeries(np.convolve(self.coeffs[: n + 1], other.coeffs[: n + 1])[: n + 1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return self * other.reciprocal()
        return PowerSeries(self.coeffs / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.reciprocal() ** (-n)
        out = PowerSeries.constant(1.0, self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def allclose(self, other, rtol=1e-12, atol=1e-14) -> bool:
        other = self._coerce(other)
        n = min(self.order, other.order)
        return bool(np.allclose(self.coeffs[: n + 1], other.coeffs[: n + 1], rtol=rtol, atol=atol))

    def __call__(self, x):
        """Horner evaluation of the truncated polynomial."""
        acc = 0j
        for c in self.coeffs[::-1]:
            acc = acc * x + c
        return acc

    def derivative(self) -> "PowerSeries":
        n = np.arange(1, len(self.coeffs))
        return PowerSeries(self.coeffs[1:] * n) if len(n) else PowerSeries([0])

    def integral(self) -> "PowerSeries":
        """Formal antiderivative with zero constant; order grows by one."""
        n = np.arange(1, len(self.coeffs) + 1)
        return PowerSeries(np.concatenate([[0], self.coeffs / n]))

    def reciprocal(self) -> "PowerSeries":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroConstantTerm("reciprocal needs a nonzero constant term")
        b = np.zeros_like(a)
        b[0] = 1 / a[0]
        for n in range(1, len(a)):
            b[n] = -np.dot(a[1 : n + 1], b[n - 1 :: -1][:n]) / a[0]
        return PowerSeries(b)

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """``self(inner(x))``; ``inner`` must vanish at 0."""
        if inner.coeffs[0] != 0:
            raise ComposeNonzeroConstant("inner series must have zero constant term")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        acc = PowerSeries.constant(self.coeffs[n], n)
        for c in self.coeffs[n - 1 :: -1] if n > 0 else []:
            acc = acc * inner + c
        return acc

    def exp(self) -> "PowerSeries":
        a = self.coeffs
        f = np.zeros_like(a)
        f[0] = cmath.exp(a[0])
        k = np.arange(len(a))
        for n in range(1, len(a)):
            f[n] = np.dot(k[1 : n + 1] * a[1 : n + 1], f[n - 1 :: -1][:n]) / n
        return PowerSeries(f)

    def log(self) -> "PowerSeries":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroConstantTerm("log needs a nonzero constant term")
        g = np.zeros_like(a)
        g[0] = cmath.log(a[0])
        for n in range(1, len(a)):
            k = np.arange(1, n)
            g[n] = (a[n] - np.dot(k * g[1:n], a[n - 1 : 0 : -1]) / n) / a[0]
        return PowerSeries(g)

    def sin(self) -> "PowerSeries":
        return ((self * 1j).exp() - (self * -1j).exp()) / 2j

    def cos(self) -> "PowerSeries":
        return ((self * 1j).exp() + (self * -1j).exp()) / 2

    def derivative_values(self) -> np.ndarray:
        """``f^(n)(0) = n! c_n``."""
        return np.array([c * math.factorial(n) for n, c in enumerate(self.coeffs)])


def series_arith(a: PowerSeries, b: PowerSeries, op: str) -> PowerSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "compose":
        return a.compose(b)
    raise ValueError(f"unknown series operation {op!r}")


def reciprocal(a: PowerSeries) -> PowerSeries:
    return a.reciprocal()


# ---------------------------------------------------------------------------
# jets


def _affine_series(arg: ex.Affine, x0: complex, order: int) -> PowerSeries:
    return PowerSeries([arg(x0), arg.scale], order)


def taylor(e: ex.Expr, x0: complex, order: int) -> PowerSeries:
    """Taylor coefficients of ``t -> e(x0 + t)`` up to ``t**order``."""
    x0 = complex(x0)
    if isinstance(e, ex.Const):
        return PowerSeries.constant(e.value, order)
    if isinstance(e, ex.Var):
        return _affine_series(e.arg, x0, order)
    if isinstance(e, ex.Sum):
        out = PowerSeries.constant(0, order)
        for t in e.terms:
            out = out + taylor(t, x0, order)
        return out
    if isinstance(e, ex.Prod):
        out = PowerSeries.constant(1, order)
        for f in e.factors:
            out = out * taylor(f, x0, order)
        return out
    if isinstance(e, ex.Pow):
        base = taylor(e.base, x0, order)
        if e.n < 0 and base.coeffs[0] == 0:
            raise NotSmoothAtOrigin(f"{e} has a pole at {x0}")
        return base**e.n
    u = _affine_series(e.arg, x0, order) if isinstance(e, ex.Primitive) else None
    u0 = complex(u.coeffs[0]) if u is not None else 0j
    on_support = u is not None and ex._vanishes(u0, e.arg.scale * x0, e.arg.offset)
    if isinstance(e, ex.Exp):
        return u.exp()
    if isinstance(e, ex.Sin):
        return u.sin()
    if isinstance(e, ex.Cos):
        return u.cos()
    if isinstance(e, ex.Gaussian):
        return (u * u * (-1 / (2 * e.s))).exp()
    if isinstance(e, ex.Log):
        if on_support:
            raise NotSmoothAtOrigin(f"{e} is singular at {x0}")
        out = (u / u0).log()
        return out + ex._log_value(u0)
    if isinstance(e, ex.PVRecip):
        if on_support:
            raise NotSmoothAtOrigin(f"{e} has a pole at {x0}")
        return u.reciprocal()
    if isinstance(e, ex.Heaviside):
        if u0.imag != 0:
            raise UndefinedDistribution(f"Heaviside evaluated off the real axis at {u0}")
        if on_support:
            raise NotSmoothAtOrigin(f"{e} jumps at {x0}")
        return PowerSeries.constant(1.0 if u0.real > 0 else 0.0, order)
    if isinstance(e, ex.DiracDelta):
        if u0.imag < 0:
            raise UndefinedDistribution(f"delta evaluated at {u0} (Im < 0)")
        if on_support:
            raise NotSmoothAtOrigin(f"{e} is supported at {x0}")
        return PowerSeries.constant(0.0, order)
    raise TypeError(f"no Taylor rule for {type(e).__name__}")


def series_of(e: ex.Expr, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Maclaurin series of ``e`` truncated at ``x**order``."""
    return taylor(e, 0.0, order)
