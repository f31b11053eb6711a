"""Exception types raised across the package."""


class XbimodError(Exception):
    """Base class for all package errors."""


class BoundExceeded(XbimodError):
    """An exhaustive search would exceed the configured enumeration bound."""


class ShapeMismatch(XbimodError):
    """A table or matrix does not match the declared generator counts."""


class EndpointMismatch(XbimodError):
    pass


class MiddleMismatch(XbimodError):
    pass


class NotComposable(XbimodError):
    pass


class MismatchedParent(XbimodError):
    pass


class MismatchedCover(XbimodError):
    pass


class InvalidDGA(XbimodError):
    pass


class InvalidSimplicial(XbimodError):
    pass


class EmptyLiftSet(XbimodError):
    """No equivariant lift exists; impossible for a valid butterfly."""
