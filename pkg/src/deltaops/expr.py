"""Closed-form expression trees in one real variable ``x``.

Every primitive node carries an affine argument ``scale*x + offset`` with a
complex offset, so translation by a complex amount and differentiation both
stay inside the family.  Distributions (Heaviside, Dirac delta and its
derivatives, principal-value 1/x) are first-class nodes.

Delta functions follow the extended convention: ``delta(z) = 0`` when
``Im z > 0`` and is undefined when ``Im z < 0``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import comb, factorial
import numpy as np

from .errors import NoClosedForm, PoleAtPoint, UndefinedDistribution

_EPS = 8 * np.finfo(float).eps


def _fmt(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        return f"{c.real:.15g}"
    if c.real == 0:
        return f"{c.imag:.15g}*i"
    sign = "+" if c.imag > 0 else "-"
    return f"({c.real:.15g} {sign} {abs(c.imag):.15g}*i)"


def _vanishes(u, *parts) -> bool:
    return abs(u) <= _EPS * (1.0 + sum(abs(p) for p in parts))


@dataclass(frozen=True)
class Affine:
    """The map ``x -> scale*x + offset``."""

    scale: complex = 1.0
    offset: complex = 0.0

    def __call__(self, x):
        return self.scale * x + self.offset

    def shifted(self, c: complex) -> "Affine":
        return Affine(self.scale, self.offset + self.scale * c)

    def __str__(self):
        if self.scale == 1:
            head = "x"
        elif self.scale == -1:
            head = "-x"
        else:
            head = f"{_fmt(self.scale)}*x"
        if self.offset == 0:
            return head
        off = complex(self.offset)
        if off.imag == 0:
            sign = "+" if off.real > 0 else "-"
            return f"{head} {sign} {abs(off.real):.15g}"
        return f"{head} + {_fmt(off)}"


IDENTITY = Affine()


def _real_scale(arg: Affine, what: str) -> float:
    a = complex(arg.scale)
    if a.imag != 0 or a.real == 0:
        raise ValueError(f"{what} needs a real nonzero argument scale, got {arg.scale}")
    return a.real


# ---------------------------------------------------------------------------
# evaluation results


@dataclass(frozen=True)
class DeltaTerm:
    """``coeff * delta^(order)(t - location)`` in the evaluation variable ``t``."""

    location: complex
    order: int
    coeff: complex

    def __post_init__(self):
        object.__setattr__(self, "location", complex(self.location))
        object.__setattr__(self, "order", int(self.order))
        object.__setattr__(self, "coeff", complex(self.coeff))


@dataclass(frozen=True)
class DistributionalValue:
    finite: complex = 0.0
    deltas: tuple[DeltaTerm, ...] = ()

    def __post_init__(self):
        merged: dict[tuple, complex] = {}
        for d in self.deltas:
            key = (d.location, d.order)
            merged[key] = merged.get(key, 0) + d.coeff
        terms = tuple(DeltaTerm(loc, n, c) for (loc, n), c in merged.items() if c != 0)
        object.__setattr__(self, "deltas", terms)

    @property
    def is_regular(self) -> bool:
        return not self.deltas

    @property
    def value(self) -> complex:
        if self.deltas:
            raise UndefinedDistribution(f"value carries delta content {self.deltas}")
        return self.finite

    def __add__(self, other):
        if not isinstance(other, DistributionalValue):
            other = DistributionalValue(other)
        return DistributionalValue(self.finite + other.finite, self.deltas + other.deltas)

    __radd__ = __add__

    def scaled(self, c: complex) -> "DistributionalValue":
        return DistributionalValue(
            self.finite * c, tuple(DeltaTerm(d.location, d.order, d.coeff * c) for d in self.deltas)
        )


_ZERO_DV = DistributionalValue()


# ---------------------------------------------------------------------------
# node types


class Expr:
    """Base class.  Subclasses are frozen dataclasses."""

    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return add(self, mul(Const(-1), as_expr(other)))

    def __rsub__(self, other):
        return add(as_expr(other), mul(Const(-1), self))

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return mul(self, power(as_expr(other), -1))

    def __rtruediv__(self, other):
        return mul(as_expr(other), power(self, -1))

    def __neg__(self):
        return mul(Const(-1), self)

    def __pow__(self, n):
        if isinstance(n, Const):
            n = n.value
        if complex(n).imag != 0 or int(complex(n).real) != complex(n).real:
            raise ValueError("only integer exponents are supported")
        return power(self, int(complex(n).real))

    def __call__(self, x):
        """Numeric value; vectorised over numpy arrays.  Delta content is an error."""
        if np.ndim(x) == 0:
            return self.evaluate(x).value
        return self._num(np.asarray(x, dtype=complex))

    def evaluate(self, x0: complex) -> DistributionalValue:
        return self._dv(complex(x0))

    def derivative(self) -> "Expr":
        return self._d()

    def shift(self, c: complex) -> "Expr":
        return self if c == 0 else self._shift(c)

    # overridden
    def _d(self) -> "Expr":
        raise NotImplementedError

    def _shift(self, c) -> "Expr":
        raise NotImplementedError

    def _dv(self, x0) -> DistributionalValue:
        raise NotImplementedError

    def _num(self, x):
        raise NotImplementedError

    def children(self) -> tuple["Expr", ...]:
        return ()

    def walk(self):
        yield self
        for ch in self.children():
            yield from ch.walk()


def as_expr(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, (int, float, complex, np.number)):
        return Const(complex(v) if isinstance(v, complex) else float(v))
    raise TypeError(f"cannot use {v!r} as an expression")


@dataclass(frozen=True)
class Const(Expr):
    value: complex

    def _d(self):
        return ZERO

    def _shift(self, c):
        return self

    def _dv(self, x0):
        return DistributionalValue(complex(self.value))

    def _num(self, x):
        return np.full(x.shape, complex(self.value))

    def __str__(self):
        return _fmt(self.value)


ZERO = Const(0.0)
ONE = Const(1.0)


@dataclass(frozen=True)
class Var(Expr):
    arg: Affine = IDENTITY

    def _d(self):
        return Const(self.arg.scale)

    def _shift(self, c):
        return Var(self.arg.shifted(c))

    def _dv(self, x0):
        return DistributionalValue(complex(self.arg(x0)))

    def _num(self, x):
        return self.arg(x)

    def __str__(self):
        return str(self.arg)


X = Var()


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple[Expr, ...]

    def children(self):
        return self.terms

    def _d(self):
        return add(*(t._d() for t in self.terms))

    def _shift(self, c):
        return add(*(t._shift(c) for t in self.terms))

    def _dv(self, x0):
        out = _ZERO_DV
        for t in self.terms:
            out = out + t._dv(x0)
        return out

    def _num(self, x):
        return sum(t._num(x) for t in self.terms)

    def __str__(self):
        parts = [str(self.terms[0])]
        for t in self.terms[1:]:
            s = str(t)
            parts.append(f"- {s[1:]}" if s.startswith("-") else f"+ {s}")
        return " ".join(parts)


@dataclass(frozen=True)
class Prod(Expr):
    factors: tuple[Expr, ...]

    def children(self):
        return self.factors

    def _d(self):
        terms = []
        for i, f in enumerate(self.factors):
            df = f._d()
            if df == ZERO:
                continue
            terms.append(mul(*self.factors[:i], df, *self.factors[i + 1 :]))
        return add(*terms)

    def _shift(self, c):
        return mul(*(f._shift(c) for f in self.factors))

    def _dv(self, x0):
        vals = [f._dv(x0) for f in self.factors]
        singular = [i for i, v in enumerate(vals) if v.deltas]
        finite = complex(np.prod([v.finite for v in vals]))
        if not singular:
            return DistributionalValue(finite)
        if len(singular) > 1:
            raise UndefinedDistribution("product of two delta-type distributions")
        i = singular[0]
        rest = [v.finite for j, v in enumerate(vals) if j != i]
        rest_value = complex(np.prod(rest)) if rest else 1.0
        others = mul(*(f for j, f in enumerate(self.factors) if j != i))
        deltas = []
        for d in vals[i].deltas:
            if d.order == 0:
                deltas.append(DeltaTerm(d.location, 0, d.coeff * rest_value))
                continue
            # g * delta^(n)(t - t0) = sum_j (-1)^j C(n,j) g^(j)(t0) delta^(n-j)(t - t0)
            from .series import taylor

            jet = taylor(others, d.location, d.order).coeffs
            for j in range(d.order + 1):
                gj = jet[j] * factorial(j)
                deltas.append(DeltaTerm(d.location, d.order - j, d.coeff * (-1) ** j * comb(d.order, j) * gj))
        return DistributionalValue(finite, tuple(deltas))

    def _num(self, x):
        out = np.ones(x.shape, dtype=complex)
        for f in self.factors:
            out = out * f._num(x)
        return out

    def __str__(self):
        parts = []
        for f in self.factors:
            s = str(f)
            parts.append(f"({s})" if isinstance(f, Sum) else s)
        if len(parts) > 1 and parts[0] == "-1":
            return "-" + "*".join(parts[1:])
        return "*".join(parts)


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    n: int

    def children(self):
        return (self.base,)

    def _d(self):
        return mul(Const(self.n), power(self.base, self.n - 1), self.base._d())

    def _shift(self, c):
        return power(self.base._shift(c), self.n)

    def _dv(self, x0):
        v = self.base._dv(x0)
        if v.deltas:
            raise UndefinedDistribution("power of a delta-type distribution")
        if self.n < 0 and v.finite == 0:
            raise PoleAtPoint(f"{self} has a pole at x = {x0}")
        return DistributionalValue(complex(v.finite) ** self.n)

    def _num(self, x):
        b = self.base._num(x)
        if self.n < 0 and np.any(b == 0):
            raise PoleAtPoint(f"{self} has a pole on the evaluation grid")
        return b**self.n

    def __str__(self):
        b = str(self.base)
        if not (isinstance(self.base, Const) or self.base == X or isinstance(self.base, Primitive)):
            b = f"({b})"
        return f"{b}^{self.n}" if self.n >= 0 else f"{b}^({self.n})"


class Primitive(Expr):
    """A named function of the affine argument ``self.arg``."""

    name = "?"

    def with_arg(self, arg: Affine) -> "Primitive":
        raise NotImplementedError

    def _shift(self, c):
        return self.with_arg(self.arg.shifted(c))

    def __str__(self):
        return f"{self.name}({self.arg})"


@dataclass(frozen=True)
class Exp(Primitive):
    arg: Affine = IDENTITY
    name = "exp"

    def with_arg(self, arg):
        return Exp(arg)

    def _d(self):
        return mul(Const(self.arg.scale), self)

    def _dv(self, x0):
        return DistributionalValue(cmath.exp(self.arg(x0)))

    def _num(self, x):
        return np.exp(self.arg(x))


@dataclass(frozen=True)
class Sin(Primitive):
    arg: Affine = IDENTITY
    name = "sin"

    def with_arg(self, arg):
        return Sin(arg)

    def _d(self):
        return mul(Const(self.arg.scale), Cos(self.arg))

    def _dv(self, x0):
        return DistributionalValue(cmath.sin(self.arg(x0)))

    def _num(self, x):
        return np.sin(self.arg(x))


@dataclass(frozen=True)
class Cos(Primitive):
    arg: Affine = IDENTITY
    name = "cos"

    def with_arg(self, arg):
        return Cos(arg)

    def _d(self):
        return mul(Const(-self.arg.scale), Sin(self.arg))

    def _dv(self, x0):
        return DistributionalValue(cmath.cos(self.arg(x0)))

    def _num(self, x):
        return np.cos(self.arg(x))


def _log_value(u: complex) -> complex:
    # On the real axis this is log|u|, the antiderivative of PV 1/u.
    if u.imag == 0:
        return complex(math.log(abs(u.real)))
    return cmath.log(u)


@dataclass(frozen=True)
class Log(Primitive):
    """``log|u|`` for real ``u``, principal ``log u`` off the real axis."""

    arg: Affine = IDENTITY
    name = "log"

    def with_arg(self, arg):
        return Log(arg)

    def _d(self):
        return mul(Const(self.arg.scale), PVRecip(self.arg))

    def _dv(self, x0):
        u = complex(self.arg(x0))
        if _vanishes(u, self.arg.scale * x0, self.arg.offset):
            raise PoleAtPoint(f"{self} is singular at x = {x0}")
        return DistributionalValue(_log_value(u))

    def _num(self, x):
        u = self.arg(x)
        if np.any(u == 0):
            raise PoleAtPoint(f"{self} is singular on the evaluation grid")
        return np.where(u.imag == 0, np.log(np.abs(u)) + 0j, np.log(u))


@dataclass(frozen=True)
class Gaussian(Primitive):
    """``exp(-u**2 / (2*s))`` with ``u`` the affine argument and ``s > 0``."""

    s: float
    arg: Affine = IDENTITY
    name = "gauss"

    def __post_init__(self):
        if not (np.isreal(self.s) and float(np.real(self.s)) > 0):
            raise ValueError(f"Gaussian width must be positive, got {self.s}")
        object.__setattr__(self, "s", float(np.real(self.s)))

    def with_arg(self, arg):
        return Gaussian(self.s, arg)

    def _d(self):
        return mul(Const(-self.arg.scale / self.s), Var(self.arg), self)

    def _dv(self, x0):
        u = self.arg(x0)
        return DistributionalValue(cmath.exp(-u * u / (2 * self.s)))

    def _num(self, x):
        u = self.arg(x)
        return np.exp(-u * u / (2 * self.s))

    def __str__(self):
        if self.arg == IDENTITY:
            return f"gauss({self.s:.15g})"
        return f"gauss({self.s:.15g}, {self.arg})"


@dataclass(frozen=True)
class Heaviside(Primitive):
    """Step function, ``1/2`` at the jump; defined on the real axis only."""

    arg: Affine = IDENTITY
    name = "theta"

    def __post_init__(self):
        _real_scale(self.arg, "Heaviside")

    def with_arg(self, arg):
        return Heaviside(arg)

    def _d(self):
        return mul(Const(self.arg.scale), DiracDelta(0, self.arg))

    def _dv(self, x0):
        u = complex(self.arg(x0))
        if u.imag != 0:
            raise UndefinedDistribution(f"Heaviside evaluated off the real axis at {u}")
        if _vanishes(u, self.arg.scale * x0, self.arg.offset):
            return DistributionalValue(0.5)
        return DistributionalValue(1.0 if u.real > 0 else 0.0)

    def _num(self, x):
        u = self.arg(x)
        if np.any(u.imag != 0):
            raise UndefinedDistribution("Heaviside evaluated off the real axis")
        return np.where(u.real > 0, 1.0, np.where(u.real < 0, 0.0, 0.5)) + 0j


@dataclass(frozen=True)
class DiracDelta(Primitive):
    """``order``-th derivative of the Dirac delta at the affine argument."""

    order: int = 0
    arg: Affine = IDENTITY
    name = "delta"

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("delta derivative order must be non-negative")
        _real_scale(self.arg, "DiracDelta")

    def with_arg(self, arg):
        return DiracDelta(self.order, arg)

    def _d(self):
        return mul(Const(self.arg.scale), DiracDelta(self.order + 1, self.arg))

    def _dv(self, x0):
        u = complex(self.arg(x0))
        if u.imag > 0:
            return _ZERO_DV
        if u.imag < 0:
            raise UndefinedDistribution(f"delta evaluated at {u} (Im < 0)")
        if not _vanishes(u, self.arg.scale * x0, self.arg.offset):
            return _ZERO_DV
        # delta^(n)(a t + c) = delta^(n)(t - t0) / (a**n * |a|)
        a = complex(self.arg.scale).real
        return DistributionalValue(0.0, (DeltaTerm(complex(x0), self.order, 1.0 / (a**self.order * abs(a))),))

    def _num(self, x):
        u = self.arg(x)
        if np.any(u.imag < 0):
            raise UndefinedDistribution("delta evaluated in the lower half plane")
        if np.any((u.imag == 0) & (u.real == 0)):
            raise UndefinedDistribution("delta evaluated on its support")
        return np.zeros(x.shape, dtype=complex)

    def __str__(self):
        if self.order == 0:
            return f"delta({self.arg})"
        return f"delta({self.arg}, {self.order})"


@dataclass(frozen=True)
class PVRecip(Primitive):
    """Principal value of ``1/u``."""

    arg: Affine = IDENTITY
    name = "pv"

    def with_arg(self, arg):
        return PVRecip(arg)

    def _d(self):
        return mul(Const(-self.arg.scale), power(self, 2))

    def _dv(self, x0):
        u = complex(self.arg(x0))
        if _vanishes(u, self.arg.scale * x0, self.arg.offset):
            raise PoleAtPoint(f"{self} evaluated at its pole x = {x0}")
        return DistributionalValue(1.0 / u)

    def _num(self, x):
        u = self.arg(x)
        if np.any(u == 0):
            raise PoleAtPoint(f"{self} evaluated at its pole")
        return 1.0 / u


DISTRIBUTIONS = (Heaviside, DiracDelta, PVRecip)


# ---------------------------------------------------------------------------
# smart constructors


def _split_coeff(e: Expr) -> tuple[complex, Expr]:
    if isinstance(e, Const):
        return complex(e.value), ONE
    if isinstance(e, Prod) and isinstance(e.factors[0], Const):
        rest = e.factors[1:]
        return complex(e.factors[0].value), rest[0] if len(rest) == 1 else Prod(rest)
    return 1.0, e


def _clean(c: complex):
    c = complex(c)
    return c.real if c.imag == 0 else c


def add(*terms: Expr) -> Expr:
    """Flattened sum with like terms collected."""
    acc: dict[Expr, complex] = {}
    stack = list(terms)
    flat = []
    while stack:
        t = stack.pop(0)
        if isinstance(t, Sum):
            stack[0:0] = list(t.terms)
        else:
            flat.append(t)
    for t in flat:
        c, rest = _split_coeff(t)
        acc[rest] = acc.get(rest, 0) + c
    out = []
    const = acc.pop(ONE, 0)
    for rest, c in acc.items():
        if c == 0:
            continue
        out.append(rest if c == 1 else _prod_with_coeff(c, rest))
    if const != 0 or not out:
        out.insert(0, Const(_clean(const)))
    return out[0] if len(out) == 1 else Sum(tuple(out))


def _prod_with_coeff(c, rest: Expr) -> Expr:
    if isinstance(rest, Prod):
        return Prod((Const(_clean(c)),) + rest.factors)
    return Prod((Const(_clean(c)), rest))


def mul(*factors: Expr) -> Expr:
    """Flattened product; constants folded, repeated bases merged into powers."""
    coeff: complex = 1.0
    bases: dict[Expr, int] = {}
    stack = list(factors)
    while stack:
        f = stack.pop(0)
        if isinstance(f, Prod):
            stack[0:0] = list(f.factors)
        elif isinstance(f, Const):
            coeff *= f.value
        elif isinstance(f, Pow):
            bases[f.base] = bases.get(f.base, 0) + f.n
        else:
            bases[f] = bases.get(f, 0) + 1
    if coeff == 0:
        return ZERO
    parts = [power(b, n) for b, n in bases.items() if n != 0]
    parts = [p for p in parts if p != ONE]
    if not parts:
        return Const(_clean(coeff))
    if len(parts) == 1 and coeff == 1:
        return parts[0]
    if len(parts) == 1 and isinstance(parts[0], Sum):
        # distribute constants over sums so that like terms can merge
        return add(*(mul(Const(coeff), t) for t in parts[0].terms))
    head = () if coeff == 1 else (Const(_clean(coeff)),)
    return Prod(head + tuple(parts))


def power(base: Expr, n: int) -> Expr:
    if n == 0:
        return ONE
    if n == 1:
        return base
    if isinstance(base, Const):
        if base.value == 0 and n < 0:
            raise PoleAtPoint("division by zero constant")
        return Const(_clean(complex(base.value) ** n))
    if isinstance(base, Pow):
        return power(base.base, base.n * n)
    if isinstance(base, Prod):
        return mul(*(power(f, n) for f in base.factors))
    return Pow(base, n)


# ---------------------------------------------------------------------------
# operations


def differentiate(e: Expr, n: int = 1) -> Expr:
    if n < 0:
        raise ValueError("derivative order must be non-negative")
    for _ in range(n):
        e = e._d()
    return e


def shift(e: Expr, c: complex) -> Expr:
    """Translate the argument: returns ``x -> e(x + c)``."""
    return e.shift(c)


def evaluate(e: Expr, x0: complex) -> DistributionalValue:
    return e.evaluate(x0)


def contains(e: Expr, kinds) -> bool:
    return any(isinstance(n, kinds) for n in e.walk())


def antiderivative(e: Expr) -> Expr:
    """One antiderivative with integration constant 0.

    Covers the exp-trig-polynomial ring, delta and its derivatives, principal
    value 1/x and its powers, polynomial times Heaviside and polynomial times
    log sharing one affine argument.
    """
    if isinstance(e, Sum):
        return add(*(antiderivative(t) for t in e.terms))
    c, rest = _split_coeff(e)
    if c != 1:
        return mul(Const(c), antiderivative(rest))
    if rest == ONE:
        return X
    got = _antiderivative_primitive(rest)
    if got is not None:
        return got
    got = _antiderivative_affine_product(rest)
    if got is not None:
        return got
    from .operators import exp_poly_form  # local import: operators builds on expr

    try:
        form = exp_poly_form(rest)
    except Exception as exc:
        raise NoClosedForm(f"no closed-form antiderivative for {rest}") from exc
    return form.antiderivative()


def _antiderivative_primitive(e: Expr) -> Expr | None:
    if isinstance(e, Var):
        a = e.arg.scale
        return mul(Const(1 / (2 * a)), power(e, 2))
    if isinstance(e, Exp):
        return mul(Const(1 / e.arg.scale), e)
    if isinstance(e, Sin):
        return mul(Const(-1 / e.arg.scale), Cos(e.arg))
    if isinstance(e, Cos):
        return mul(Const(1 / e.arg.scale), Sin(e.arg))
    if isinstance(e, DiracDelta):
        a = complex(e.arg.scale).real
        im = complex(e.arg.offset).imag
        if im > 0:
            return ZERO  # vanishes identically on the real line
        if im < 0:
            raise UndefinedDistribution(f"{e} lies in the lower half plane")
        if e.order == 0:
            return mul(Const(1 / a), Heaviside(e.arg))
        return mul(Const(1 / a), DiracDelta(e.order - 1, e.arg))
    if isinstance(e, PVRecip):
        return mul(Const(1 / e.arg.scale), Log(e.arg))
    if isinstance(e, Log):
        u = Var(e.arg)
        return mul(Const(1 / e.arg.scale), add(mul(u, e), mul(Const(-1), u)))
    if isinstance(e, Heaviside):
        return mul(Const(1 / e.arg.scale), Var(e.arg), e)
    if isinstance(e, Pow):
        b, n = e.base, e.n
        if isinstance(b, Var):
            if n == -1:
                return mul(Const(1 / b.arg.scale), Log(b.arg))
            return mul(Const(1 / ((n + 1) * b.arg.scale)), power(b, n + 1))
        if isinstance(b, PVRecip) and n >= 2:
            return mul(Const(-1 / ((n - 1) * b.arg.scale)), power(b, n - 1))
    return None


def _antiderivative_affine_product(e: Expr) -> Expr | None:
    """``u**k * Theta(u)`` and ``u**k * log(u)`` with one shared affine ``u``."""
    if not isinstance(e, Prod):
        return None
    k = 0
    special = None
    arg = None
    for f in e.factors:
        if isinstance(f, (Heaviside, Log)) and special is None:
            special = f
            continue
        if isinstance(f, Var):
            base, n = f, 1
        elif isinstance(f, Pow) and isinstance(f.base, Var) and f.n > 0:
            base, n = f.base, f.n
        else:
            return None
        if arg is not None and base.arg != arg:
            return None
        arg = base.arg
        k += n
    if special is None or (arg is not None and arg != special.arg):
        return None
    a = special.arg.scale
    u = Var(special.arg)
    up = power(u, k + 1)
    if isinstance(special, Heaviside):
        return mul(Const(1 / ((k + 1) * a)), up, special)
    # int u^k log u = u^(k+1) log(u) / (k+1) - u^(k+1) / (k+1)^2
    return mul(Const(1 / a), add(mul(Const(1 / (k + 1)), up, special), mul(Const(-1 / (k + 1) ** 2), up)))
