"""
Distance vectors, b-vectors and the circumsphere of a simplex.

Pair order everywhere is d01, d02, ..., d0n, d12, ..., d(n-1)n. Entries are
squared Euclidean distances.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from typing import Iterable, Optional, Sequence

from extreme_delaunay.errors import DimensionMismatchError, SumNotOneError
from extreme_delaunay.models.enums import Definiteness
from extreme_delaunay.models.matrices import RatMatrix, RatVector, as_vector, to_fraction

# Gram matrices are plain RatMatrix values; the alias names the role.
GramMatrix = RatMatrix


# ============================================================================
# Pair indexing
# ============================================================================

def pair_count(n: int) -> int:
    """Number of pairs among n + 1 points."""
    return comb(n + 1, 2)


def pairs(n: int) -> list[tuple[int, int]]:
    """All pairs (i, j), i < j, among points 0..n in canonical order."""
    return [(i, j) for i in range(n + 1) for j in range(i + 1, n + 1)]


def pair_index(i: int, j: int, n: int) -> int:
    """Position of the pair {i, j} in the canonical order."""
    if i == j:
        raise ValueError("a pair needs two distinct points")
    if i > j:
        i, j = j, i
    # pairs before row i: n + (n-1) + ... + (n-i+1)
    return i * n - i * (i - 1) // 2 + (j - i - 1)


def points_for_length(length: int) -> int:
    """Inverse of pair_count: the n with C(n+1, 2) == length."""
    n = (isqrt(8 * length + 1) - 1) // 2
    if pair_count(n) != length or n < 1:
        raise DimensionMismatchError(f"{length} is not a pair count C(n+1, 2) with n >= 1")
    return n


# ============================================================================
# Distance vectors and b-vectors
# ============================================================================

@dataclass(frozen=True)
class DistanceVector:
    """Squared distances among points 0..n."""

    n: int
    entries: RatVector

    def __post_init__(self):
        if self.n < 1:
            raise DimensionMismatchError("a distance vector needs at least two points")
        if len(self.entries) != pair_count(self.n):
            raise DimensionMismatchError(
                f"n = {self.n} needs {pair_count(self.n)} entries, got {len(self.entries)}"
            )
        if any(e < 0 for e in self.entries):
            raise ValueError("squared distances must be nonnegative")

    @classmethod
    def from_entries(cls, entries: Iterable, n: Optional[int] = None) -> "DistanceVector":
        values = as_vector(entries)
        return cls(n=n if n is not None else points_for_length(len(values)), entries=values)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence]) -> "DistanceVector":
        """Read the upper triangle of a symmetric (n+1)x(n+1) distance matrix."""
        n = len(matrix) - 1
        return cls(n=n, entries=tuple(to_fraction(matrix[i][j]) for i, j in pairs(n)))

    def get(self, i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(0)
        return self.entries[pair_index(i, j, self.n)]

    def matrix(self) -> list[list[Fraction]]:
        return [[self.get(i, j) for j in range(self.n + 1)] for i in range(self.n + 1)]

    def scaled(self, factor) -> "DistanceVector":
        f = to_fraction(factor)
        return DistanceVector(n=self.n, entries=tuple(f * e for e in self.entries))

    def has_zero_entry(self) -> bool:
        return any(e == 0 for e in self.entries)

    def __str__(self) -> str:
        return " ".join(str(e) for e in self.entries)


@dataclass(frozen=True, order=True)
class BVector:
    """Integer vector b with Σ b_i = 1."""

    coords: tuple[int, ...]

    def __post_init__(self):
        if sum(self.coords) != 1:
            raise SumNotOneError(self.coords)

    @classmethod
    def of(cls, *coords: int) -> "BVector":
        return cls(coords=tuple(int(c) for c in coords))

    @classmethod
    def unit(cls, i: int, n: int) -> "BVector":
        return cls(coords=tuple(int(k == i) for k in range(n + 1)))

    @classmethod
    def from_w(cls, w: Sequence[int]) -> "BVector":
        """b = (1 - Σ w_j, w_1, ..., w_n)."""
        return cls(coords=(1 - sum(w),) + tuple(int(x) for x in w))

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    @property
    def w(self) -> tuple[int, ...]:
        return self.coords[1:]

    def is_unit(self) -> bool:
        return sorted(self.coords) == [0] * self.n + [1]

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Circumsphere:
    """Centre c = v0 + Σ alpha_i (v_i - v0) and squared radius r2."""

    alpha: RatVector
    r2: Fraction


@dataclass(frozen=True)
class HypermetricVerdict:
    """
    Result of a hypermetricity test.

    ``witness`` is the most violated b found (ties broken lexicographically)
    with ``value`` = H(b)d > 0; ``violations`` lists every violation the pass
    found, most violated first. For an indefinite Gram matrix, or a positive
    semidefinite one whose sphere equations are inconsistent, the pass builds a
    single violated b and that b is the witness. ``reduced_dim`` is the rank of the Gram matrix
    when the distance vector is rank-deficient.
    """

    valid: bool
    definiteness: Definiteness
    reduced_dim: int
    witness: Optional[BVector] = None
    value: Optional[Fraction] = None
    violations: tuple[tuple[BVector, Fraction], ...] = ()
