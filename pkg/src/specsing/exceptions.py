"""Exception and warning types shared across the package."""


class SpecsingError(Exception):
    """Base class for all package errors."""


class DegenerateWavenumber(SpecsingError, ValueError):
    """Raised when a transfer matrix is requested at k = 0."""


class InvalidParameters(SpecsingError, ValueError):
    """Raised for PT parameters outside their admissible set."""


class DomainError(SpecsingError, ValueError):
    """Raised for coalescence inputs outside Re(mu) <= 0, eps in [-1, 1]."""


class OriginError(SpecsingError, ValueError):
    """Raised when a spherical Hankel function is evaluated at z = 0."""


class NonConvergence(SpecsingError, ArithmeticError):
    """Raised when a series or an iteration exhausts its budget."""


# solver-facing alias
NoConvergence = NonConvergence


class SeedOutOfRegime(SpecsingError, ValueError):
    """Raised when the perturbative seed lies outside the x >> 1 regime."""


class PoleProximityWarning(RuntimeWarning):
    """Reflection amplitude evaluated next to a pole (a spectral singularity)."""
