"""Exception hierarchy.  Everything a caller can trigger with bad domain
input derives from :class:`DomainError` (itself a ``ValueError``)."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at the singular point ``z = z1``."""


class BoundaryError(DomainError):
    """Series evaluation requested on or outside the unit circle."""


class NonFiniteSample(DomainError):
    """A quadrature integrand returned inf or nan at some node."""


class ExtrapolationError(DomainError):
    """Radial extrapolation table is too short or not monotone."""


class UndefinedProduct(DomainError):
    """Product of two singular atoms sitting at the same point."""


class UnsupportedProduct(DomainError):
    """Product that is meaningful but deliberately not implemented."""


class SingularPointError(DomainError):
    """Piecewise function evaluated exactly at a section boundary."""
