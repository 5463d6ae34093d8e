"""
Exception types for extreme-delaunay.

All domain failures derive from HypermetricError, itself a ValueError, so
callers that only care about "bad input" can keep catching ValueError.
"""

from typing import Optional


class HypermetricError(ValueError):
    """Base class for every domain error raised by the library."""


class DimensionMismatchError(HypermetricError):
    """Vector or matrix sizes do not agree."""


class SumNotOneError(HypermetricError):
    """A b-vector whose coordinates do not sum to 1."""

    def __init__(self, coords):
        self.coords = tuple(coords)
        super().__init__(f"b-vector {self.coords} sums to {sum(self.coords)}, expected 1")


class DegenerateGramError(HypermetricError):
    """The Gram matrix of a basis is singular or not positive definite."""

    def __init__(self, message: str, rank: Optional[int] = None):
        self.rank = rank
        if rank is not None:
            message = f"{message} (rank {rank})"
        super().__init__(message)


class CoincidentPointsError(HypermetricError):
    """A distance vector with a zero entry where distinct points are required."""


class NotPositiveDefiniteError(HypermetricError):
    """A CVP routine received a Gram matrix that is not positive definite."""


class NotPSDError(HypermetricError):
    """A rank reduction received a Gram matrix with a negative direction."""


class PSDIrreducibleError(HypermetricError):
    """No subfamily of the generators is an integral basis of their lattice."""


class UnboundedLPError(HypermetricError):
    """The objective of a linear program is unbounded on the feasible set."""


class PointNotInConeError(HypermetricError):
    """A point violates at least one inequality of the cone."""


class NotExtremeError(HypermetricError):
    """A ray or polytope expected to be extreme is not."""

    def __init__(self, message: str, rank: Optional[int] = None):
        self.rank = rank
        super().__init__(message)


class NotHypermetricError(HypermetricError):
    """A distance vector violates a hypermetric inequality."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class EnumerationBudgetExceeded(HypermetricError):
    """A lattice enumeration visited more nodes than its budget allows."""

    def __init__(self, node_limit: int):
        self.node_limit = node_limit
        super().__init__(f"lattice enumeration exceeded {node_limit} nodes")


class ParseError(HypermetricError):
    """An input file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, token: Optional[str] = None):
        self.line = line
        self.token = token
        where = ""
        if line is not None:
            where = f"line {line}"
            if token is not None:
                where += f", token {token!r}"
            where += ": "
        super().__init__(f"{where}{message}")
