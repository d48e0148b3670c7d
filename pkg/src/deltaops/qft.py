"""Zero-dimensional quartic model ``z(j) = int exp(-a x^2 - lam x^4 + j x) dx``.

Two expansions are compared against quadrature:

* weak coupling: powers of ``lam`` acting as ``d/dj^4`` on the free
  Gaussian; asymptotic only;
* strong coupling: the quadratic term pulled out as an inverse-heat
  operator ``exp(-(a/sqrt(lam)) d_r^2)`` acting on the entire function
  ``P(r) = int exp(-x^4 + r x) dx``; convergent.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from math import factorial, lgamma

import numpy as np
from scipy import integrate, optimize, special

from .errors import PSeriesUnderResolved
from .series import PowerSeries

DEFAULT_PTERMS = 64
_LN_CUT = math.log(1e300)


@dataclass(frozen=True)
class QuarticModel:
    a: float
    lam: float
    j: float = 0.0

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("a must be positive")
        if not self.lam > 0:
            raise ValueError("lambda must be positive")

    def phase(self, x):
        return -self.a * x * x - self.lam * x**4 + self.j * x


@dataclass
class SeriesReport:
    model: QuarticModel
    method: str
    terms: list[float]
    partial_sums: list[float]
    oracle: float
    meta: dict = field(default_factory=dict)

    @property
    def errors(self) -> list[float]:
        return [abs(s - self.oracle) for s in self.partial_sums]

    @property
    def relative_errors(self) -> list[float]:
        return [e / abs(self.oracle) for e in self.errors]

    @property
    def best_index(self) -> int:
        return int(np.argmin(self.errors))

    def to_json(self) -> str:
        doc = {
            "model": {"a": self.model.a, "lambda": self.model.lam, "j": self.model.j},
            "method": self.method,
            "terms": self.terms,
            "partial_sums": self.partial_sums,
            "oracle": self.oracle,
            "errors": self.errors,
        }
        return json.dumps(doc)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["order", "term", "partial_sum", "abs_error"])
        for k, (t, s, e) in enumerate(zip(self.terms, self.partial_sums, self.errors)):
            w.writerow([k, repr(t), repr(s), repr(e)])
        return buf.getvalue()


def _report(m, method, terms, oracle, **meta) -> SeriesReport:
    sums = list(np.cumsum(terms))
    return SeriesReport(m, method, [float(t) for t in terms], [float(s) for s in sums], oracle, meta)


# ---------------------------------------------------------------------------
# oracle


def z_quadrature(m: QuarticModel) -> float:
    """Adaptive quadrature around the peak; tails cut where the integrand drops by 1e-300."""
    # phase' = -2 a x - 4 lam x^3 + j is strictly decreasing: one root
    peak = optimize.brentq(lambda x: -2 * m.a * x - 4 * m.lam * x**3 + m.j, -1e6, 1e6, xtol=1e-15)
    top = m.phase(peak)

    def drop(x):
        return m.phase(x) - top + _LN_CUT

    step = 1.0
    while drop(peak + step) > 0 or drop(peak - step) > 0:
        step *= 2
    right = optimize.brentq(drop, peak, peak + step)
    left = optimize.brentq(drop, peak - step, peak)

    def f(x):
        return math.exp(m.phase(x) - top)

    opts = dict(epsabs=0.0, epsrel=1e-13, limit=400)
    lo, _ = integrate.quad(f, left, peak, **opts)
    hi, _ = integrate.quad(f, peak, right, **opts)
    return math.exp(top) * (lo + hi)


# ---------------------------------------------------------------------------
# P(r)


def _hyp_log_terms(b1: float, b2: float, M: int) -> np.ndarray:
    # log of 1 / ((b1)_k (b2)_k k! 256^k)
    k = np.arange(M)
    return -(special.gammaln(b1 + k) - lgamma(b1) + special.gammaln(b2 + k) - lgamma(b2) + special.gammaln(k + 1) + k * math.log(256))


def hyp0f2(b1: float, b2: float, u: float, M: int) -> float:
    """``sum_{k<M} u^k / ((b1)_k (b2)_k k!)`` by term recurrence."""
    total, t = 0.0, 1.0
    for k in range(M):
        total += t
        t *= u / ((b1 + k) * (b2 + k) * (k + 1))
    return total


def P_eval(r: float, M: int = DEFAULT_PTERMS) -> float:
    """``P(r)`` from the two ``0F2`` series with ``M`` terms each."""
    if M < 1:
        raise ValueError("M must be at least 1")
    g34 = math.gamma(0.75)
    u = r**4 / 256
    return (g34**2 * r * r * hyp0f2(1.25, 1.5, u, M) + 2 * math.sqrt(2) * math.pi * hyp0f2(0.5, 0.75, u, M)) / (4 * g34)


def P_log_derivatives_at_zero(M: int = DEFAULT_PTERMS) -> np.ndarray:
    """``log P^(n)(0)`` for ``n = 0 .. 4M-1`` read off the ``0F2`` form; odd ``n`` are ``-inf``."""
    g34 = math.gamma(0.75)
    out = np.full(4 * M, -np.inf)
    k = np.arange(M)
    # r^{4k}: 2 sqrt2 pi / (4 G(3/4)) * term ; r^{4k+2}: G(3/4)/4 * term ; derivative = coeff * n!
    even = math.log(2 * math.sqrt(2) * math.pi / (4 * g34)) + _hyp_log_terms(0.5, 0.75, M)
    odd = math.log(g34 / 4) + _hyp_log_terms(1.25, 1.5, M)
    out[4 * k] = even + special.gammaln(4 * k + 1)
    out[4 * k + 2] = odd + special.gammaln(4 * k + 3)
    return out


def P_moment_coefficient(n: int) -> float:
    """Maclaurin coefficient of ``r^n`` in ``P`` from ``int x^n e^{-x^4} dx / n!``."""
    if n % 2:
        return 0.0
    return math.gamma((n + 1) / 4) / (2 * factorial(n))


def P_derivative(r: float, order: int, M: int = DEFAULT_PTERMS, tol: float = 1e-12) -> float:
    """``d^order P / dr^order`` at ``r`` from the truncated Maclaurin series."""
    logq = P_log_derivatives_at_zero(M)
    n_max = len(logq) - 1
    if order > n_max:
        raise PSeriesUnderResolved(f"order {order} needs more than {M} terms per 0F2 series")
    total = 0.0
    last = 0.0
    lr = math.log(abs(r)) if r != 0 else None
    for n in range(order, n_max + 1):
        if not np.isfinite(logq[n]):
            continue
        p = n - order
        if p == 0:
            term = math.exp(logq[n])
        elif lr is None:
            continue
        else:
            term = math.exp(logq[n] - lgamma(p + 1) + p * lr) * (1 if r > 0 or p % 2 == 0 else -1)
        total += term
        last = term
    if r != 0 and abs(last) > tol * abs(total):
        raise PSeriesUnderResolved(f"last kept term {last:.3e} is not below {tol:g} of the sum {total:.3e}")
    return total


# ---------------------------------------------------------------------------
# expansions


def weak_term(m: QuarticModel, k: int) -> float:
    """``(-lam)^k / k! * d_j^{4k} [sqrt(pi/a) exp(j^2/4a)]``."""
    if m.j == 0:
        return (-m.lam) ** k / factorial(k) * math.sqrt(math.pi / m.a) * factorial(4 * k) / (factorial(2 * k) * (4 * m.a) ** (2 * k))
    return weak_series(m, k, oracle=False).terms[k]


def weak_series(m: QuarticModel, K: int, oracle: bool = True) -> SeriesReport:
    if K < 1 and oracle:
        raise ValueError("K must be at least 1")
    if m.j == 0:
        terms = [weak_term(m, k) for k in range(K + 1)]
    else:
        # jet of exp((j + t)^2 / 4a) about t = 0
        jet = PowerSeries([m.j**2 / (4 * m.a), m.j / (2 * m.a), 1 / (4 * m.a)], 4 * K).exp().coeffs
        base = math.sqrt(math.pi / m.a)
        terms = [
            float(((-m.lam) ** k / factorial(k) * base * factorial(4 * k) * jet[4 * k]).real) for k in range(K + 1)
        ]
    return _report(m, "weak", terms, z_quadrature(m) if oracle else float("nan"))


def strong_series(m: QuarticModel, K: int, M: int = DEFAULT_PTERMS) -> SeriesReport:
    """``lam^-1/4 sum_k (1/k!) (-a/sqrt(lam))^k P^(2k)(j lam^-1/4)``."""
    if K < 0:
        raise ValueError("K must be non-negative")
    scale = m.lam**-0.25
    r = m.j * scale
    g = -m.a / math.sqrt(m.lam)
    terms = [scale * g**k / factorial(k) * P_derivative(r, 2 * k, M) for k in range(K + 1)]
    return _report(m, "strong", terms, z_quadrature(m), pterms=M)
