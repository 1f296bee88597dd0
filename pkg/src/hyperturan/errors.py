class InvalidInputError(ValueError):
    """Raised for malformed hypergraphs, patterns, or out-of-range parameters."""


class SearchCapError(RuntimeError):
    """Raised when an exhaustive search would exceed the configured edge cap."""
