"""Exception types shared across the package."""


class QnrnpError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(QnrnpError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NotInvertible(QnrnpError, ValueError):
    """Raised by ``mod_inverse`` when gcd(a, m) > 1."""


class ResourceError(QnrnpError):
    """A request exceeds the configured size limit."""


class PrecisionError(QnrnpError, ArithmeticError):
    """A floating-point sum could not be rounded within its error budget."""


class NoWitness(QnrnpError):
    """No QNRNP with the required coprimality exists for this prime."""
