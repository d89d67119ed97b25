"""Exceptions raised by the fitting, prediction and evaluation routines."""


class AlgserError(Exception):
    """Base class for all package errors."""


class InsufficientCoefficients(AlgserError, ValueError):
    """Fewer series coefficients than the degree spec consumes."""


class SingularSystem(AlgserError, ArithmeticError):
    """A linear system was numerically singular."""


class ZeroDenominator(AlgserError, ArithmeticError):
    """The prediction denominator vanishes (up to cancellation)."""


class CoefficientOverflow(AlgserError, OverflowError):
    """A predicted coefficient left the representable range."""


class SpecMismatch(AlgserError, ValueError):
    """A routine was called with a degree spec it does not handle."""


class DegreeCollapse(AlgserError, ArithmeticError):
    """The leading polynomial vanishes at the evaluation point."""


class BranchAmbiguity(AlgserError, ArithmeticError):
    """Two roots are equally close to the seed partial sum."""


class NoConvergence(AlgserError, ArithmeticError):
    """Root finding did not reach the residual target."""


class InvalidSpec(AlgserError, ValueError):
    """An oracle spec violates its parameter constraints."""


class ZeroTruthWarning(UserWarning):
    """A reference coefficient is zero, so its relative error is undefined."""
