"""
Exception hierarchy for the Sylvester-Kac spectral toolkit.

Every error is a ``ValueError`` so callers that only care about 'bad input'
can keep catching that, while the CLI maps the subclasses to exit statuses.
"""


class SpectralError(ValueError):
    """Base class for all toolkit errors."""


class DomainError(SpectralError):
    """An argument lies outside the domain of an operation (n < 1, tol <= 0, den = 0)."""


class SizeGuardError(SpectralError):
    """A request exceeds a documented cost guard."""


class StructureError(SpectralError):
    """A matrix lacks the structure an algorithm relies on."""


class SymmetrizationError(StructureError):
    """An off-diagonal pair has a nonpositive product, so no real diagonal similarity exists."""
