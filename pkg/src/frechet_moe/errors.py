"""Exception hierarchy shared across the package."""


class FrechetMoEError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(FrechetMoEError, ValueError):
    """An argument is outside the documented domain."""


class DomainError(FrechetMoEError, ValueError):
    """A scalar function was applied outside its domain (e.g. log of a nonpositive eigenvalue)."""


class NoUniqueGeodesicError(FrechetMoEError, ValueError):
    """Two points are not joined by a unique minimizing geodesic."""


class PreconditionError(FrechetMoEError):
    """A verifiable precondition of an algorithm does not hold."""


class UnsupportedSpaceError(FrechetMoEError):
    """The requested operation has no implementation for this space."""


class BlockEstimatorError(FrechetMoEError):
    """The base estimator failed on one block of data."""

    def __init__(self, block_index, cause):
        self.block_index = block_index
        super().__init__(f"base estimator failed on block {block_index}: {cause!r}")
