"""Exception types raised across the package."""


class SelectionError(Exception):
    """Base class for all package errors."""


class DomainError(SelectionError, ValueError):
    """An argument lies outside the domain of the operation."""


class StructuralError(SelectionError, ValueError):
    """Inputs have mismatched shapes or reference unknown names."""


class ValidationError(SelectionError, ValueError):
    """A value object violates one of its invariants."""


class NoCandidateError(SelectionError):
    """No reachable interface is left to rank."""
