"""Operator calculus built on representations of the Dirac delta.

Fourier and Laplace transforms and definite integrals are computed by
applying derivative operators ``f(-i d/dx)`` to delta-type primitives.  The
package also blurs and deblurs sampled signals with truncated derivative
series, and studies weak- and strong-coupling expansions of a quartic
integral.
"""
from .errors import (
    DeltaOpsError,
    DivergentIntegral,
    DomainError,
    NoClosedForm,
    ParseError,
    UndefinedDistribution,
)
from .expr import (
    Affine,
    DistributionalValue,
    Expr,
    X,
    antiderivative,
    differentiate,
    evaluate,
    shift,
)
from .operators import OperatorForm, apply_exact, apply_delta_of_derivative, apply_truncated, lift
from .parser import parse_expression
from .series import PowerSeries, reciprocal, series_arith, series_of
from .transforms import (
    TransformResult,
    antiderivative_formula,
    fourier_via_delta,
    fourier_via_shifted_delta,
    integrate_halfline,
    integrate_interval,
    integrate_line,
    laplace,
)

__version__ = "0.1.0"
