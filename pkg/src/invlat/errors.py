"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Input outside the documented domain (bad JSON, reducible group, ...)."""


class NotDiscreteError(InvalidInputError):
    """The integer span of the given vectors is not discrete, so not a lattice."""


class CapExceededError(RuntimeError):
    """Group closure exceeded the element cap; the group may be infinite."""


class OutOfScopeError(InvalidInputError):
    """The request is well posed but outside what this package computes."""


class InternalConsistencyError(AssertionError):
    """Two independent routes to the same value disagreed."""
