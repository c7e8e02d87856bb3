"""Exception types shared across the package."""


class HammersteinError(Exception):
    """Base class for all package-specific errors."""


class DomainError(HammersteinError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InvalidMeasureError(HammersteinError, ValueError):
    """A Stieltjes measure violates positivity or support constraints."""


class SpecificationError(HammersteinError, ValueError):
    """A problem description is inconsistent or incomplete."""


class RegimeError(SpecificationError):
    """Derived coefficients fall outside the supported parameter regime."""


class DivergenceError(HammersteinError, RuntimeError):
    """The fixed-point iteration produced a non-finite iterate."""

    def __init__(self, message: str, iteration: int | None = None):
        super().__init__(message)
        self.iteration = iteration
