"""Exception types shared across the package."""


class UnicomplexError(Exception):
    pass


class DimensionMismatchError(UnicomplexError, ValueError):
    """Vectors of different lengths or over different primes were mixed."""


class InvalidVertexError(UnicomplexError, ValueError):
    """A zero vector (or otherwise unusable label) was given as a vertex."""


class PreconditionError(UnicomplexError, ValueError):
    pass


class ConstructionError(UnicomplexError, ValueError):
    pass


class ResourceError(UnicomplexError, RuntimeError):
    """A configured size cap would be exceeded."""


class ConsistencyError(UnicomplexError, AssertionError):
    """An internal identity that must always hold was violated."""
