"""Dirac delta representations ``delta = (2 pi)^-1/2 g(-i D)^-1 g~``.

Any ``g`` with ``g(0) != 0`` yields one.  Truncating the reciprocal series
gives ordinary nascent deltas; the Gaussian generator at order 0 is the
usual heat kernel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import factorial

import numpy as np
from scipy import integrate

from . import expr as ex
from .errors import UnliftableExpression, ZeroConstantTerm
from .operators import MINUS_I, OperatorForm, apply_exact, lift
from .series import PowerSeries, taylor
from .transforms import fourier_via_delta, gaussian_delta

SQRT_2PI = math.sqrt(2 * math.pi)


@dataclass(frozen=True)
class DeltaRepresentation:
    generator: ex.Expr
    operator: OperatorForm
    carrier: ex.Expr
    order: int
    name: str = "custom"

    @property
    def coefficients(self) -> np.ndarray:
        return np.asarray(self.operator.series.coeffs)


def build_representation(g: ex.Expr, N: int, carrier: ex.Expr | None = None, name: str = "custom") -> DeltaRepresentation:
    """Operator ``1/g(-i D)`` to order ``N`` plus the Fourier partner of ``g``.

    ``carrier`` overrides the computed transform for generators outside the
    liftable family.
    """
    gs = taylor(g, 0.0, N)
    if gs.coeffs[0] == 0:
        raise ZeroConstantTerm(f"generator {g} vanishes at 0")
    symbol = PowerSeries(gs.coeffs * MINUS_I ** np.arange(N + 1))
    op = OperatorForm.from_series(symbol.reciprocal())
    if carrier is None:
        try:
            carrier = fourier_via_delta(g).value
        except UnliftableExpression as err:
            raise UnliftableExpression(f"no carrier for {g}; pass one explicitly") from err
    return DeltaRepresentation(g, op, carrier, N, name)


def gaussian_representation(sigma: float, N: int) -> DeltaRepresentation:
    # g(x) = exp(-sigma x^2 / 2), g~(x) = sigma^-1/2 exp(-x^2 / 2 sigma)
    g = ex.Gaussian(1 / sigma)
    carrier = ex.mul(ex.Const(1 / math.sqrt(sigma)), ex.Gaussian(sigma))
    return build_representation(g, N, carrier, "gaussian")


def lorentzian_representation(N: int) -> DeltaRepresentation:
    # g = 1/(1+x^2), g~ = sqrt(pi/2) exp(-|x|)
    g = ex.power(ex.add(ex.ONE, ex.power(ex.X, 2)), -1)
    decay = ex.add(
        ex.mul(ex.Exp(ex.Affine(-1.0)), ex.Heaviside()),
        ex.mul(ex.Exp(ex.Affine(1.0)), ex.Heaviside(ex.Affine(-1.0))),
    )
    carrier = ex.mul(ex.Const(math.sqrt(math.pi / 2)), decay)
    return build_representation(g, N, carrier, "lorentzian")


def perturbed_gaussian_representation(b: float, N: int) -> DeltaRepresentation:
    """``g = (1 + b x^2) exp(-x^2/2)``; carrier computed by the Fourier engine."""
    g = ex.mul(ex.add(ex.ONE, ex.mul(ex.Const(b), ex.power(ex.X, 2))), ex.Gaussian(1.0))
    return build_representation(g, N, name="perturbed-gaussian")


PRESETS = {
    "gaussian": lambda N, param=1.0: gaussian_representation(param, N),
    "lorentzian": lambda N, param=None: lorentzian_representation(N),
    "perturbed-gaussian": lambda N, param=0.5: perturbed_gaussian_representation(param, N),
}


def _kept_indices(rep: DeltaRepresentation, N: int) -> list[int]:
    return [n for n, c in enumerate(rep.coefficients) if c != 0][: N + 1]


def truncated_delta(rep: DeltaRepresentation, x: float, N: int) -> float:
    """Partial sum over the first ``N + 1`` nonzero operator terms at ``x``."""
    idx = _kept_indices(rep, N)
    jet = taylor(rep.carrier, x, idx[-1]).coeffs
    val = sum(rep.coefficients[n] * factorial(n) * jet[n] for n in idx) / SQRT_2PI
    return float(np.real(val))


def moment(rep: DeltaRepresentation, poly: list[float], N: int, half_width: float = 60.0) -> float:
    """``int truncated_delta(x) p(x) dx`` with derivatives moved onto ``p``.

    ``poly`` lists coefficients of ``p`` in increasing degree.  The carrier is
    assumed negligible beyond ``half_width``.
    """
    p = np.polynomial.Polynomial(poly)
    q = np.polynomial.Polynomial([0.0])
    for n in _kept_indices(rep, N):
        q = q + p.deriv(n) * complex(rep.coefficients[n] * (-1) ** n).real
    carrier = rep.carrier

    def integrand(x):
        return float(np.real(carrier(x))) * q(x)

    left, _ = integrate.quad(integrand, -half_width, 0.0, epsabs=1e-14, epsrel=1e-12, limit=400)
    right, _ = integrate.quad(integrand, 0.0, half_width, epsabs=1e-14, epsrel=1e-12, limit=400)
    return (left + right) / SQRT_2PI


def deldel_regularized(sigma: float, tau: float) -> float:
    """``delta_sigma(-i D) delta_tau(x)`` at 0 with Gaussian nascent deltas."""
    op = lift(gaussian_delta(sigma), MINUS_I)
    val = apply_exact(op, gaussian_delta(tau)).evaluate(0.0).value
    return float(np.real(val))
