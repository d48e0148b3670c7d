"""Exception types raised across the package.

Domain errors (things the mathematics refuses to give a number for) derive
from ``DomainError``; the CLI maps those to exit status 2.
"""


class DeltaOpsError(Exception):
    """Base class for every error raised by this package."""


class DomainError(DeltaOpsError):
    """The requested quantity does not exist as a number."""


class UndefinedDistribution(DomainError):
    """A delta term sits at an argument with negative imaginary part."""


class DivergentIntegral(DomainError):
    """A delta term at the evaluation point survives: the integral diverges."""


class PoleAtPoint(DomainError):
    """A 1/x-type node is evaluated exactly at its pole."""


class NoClosedForm(DeltaOpsError):
    """The expression has no antiderivative inside the supported family."""


class NotSmoothAtOrigin(DeltaOpsError):
    """A Taylor expansion was requested at a point where the expression is singular."""


class ZeroConstantTerm(DeltaOpsError):
    """Reciprocal of a power series whose constant term vanishes."""


class ComposeNonzeroConstant(DeltaOpsError):
    """Series composition a(b(x)) with b(0) != 0."""


class UnliftableExpression(DeltaOpsError):
    """Neither the exact shift form nor a fallback series exists."""


class HeatRuleViolation(DeltaOpsError):
    """A heat operator would produce a Gaussian of non-positive width."""


class NotExponentialPolynomial(DeltaOpsError):
    """Operand is not a finite sum of polynomial times exponential terms."""


class KernelWiderThanDomain(DeltaOpsError):
    """Blurring kernel support does not fit inside the sampled domain."""


class GridTooCoarse(DeltaOpsError):
    """Finite-difference stencils do not fit inside the signal."""


class PSeriesUnderResolved(DeltaOpsError):
    """Too few Maclaurin coefficients of P for the requested accuracy."""


class ParseError(DeltaOpsError):
    """Malformed expression text."""

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)
