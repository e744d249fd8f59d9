"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateSpecError(DomainError):
    """The limit distribution degenerates for the requested parameters."""
