"""Exception hierarchy shared by all modules."""


class BesselBoundsError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BesselBoundsError):
    """Argument outside the mathematical domain of the operation."""


class OrderOutOfRange(BesselBoundsError):
    """Bessel order outside the supported envelope |nu| <= 200."""


class NonConvergence(BesselBoundsError):
    """Series or iteration failed to reach the requested tolerance in budget."""


class NearPoleError(BesselBoundsError):
    """Quotient evaluated too close to a zero of its denominator."""


class BracketFailure(BesselBoundsError):
    """Root bracketing could not isolate a sign change."""


class NoRootInInterval(BesselBoundsError):
    """Characteristic equation has no root on the admissible interval."""


class HypothesisViolated(BesselBoundsError):
    """A checkable hypothesis of a bound is violated by the inputs."""


class DimensionError(BesselBoundsError):
    """Dimension below the minimum the formula is stated for."""


class DenominatorNonpositive(BesselBoundsError):
    """A required positive denominator is zero or negative."""


class StepUnderflow(BesselBoundsError):
    """ODE integration driven too close to the coefficient singularity."""


class ConvergenceFailure(BesselBoundsError):
    """Eigenvalue iteration failed to converge."""


class DegenerateGrid(BesselBoundsError):
    """Discretization grid too coarse to be meaningful."""
