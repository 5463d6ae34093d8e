"""
Lattice models: a lattice presented by its Gram matrix, closest-vector
queries against it, and the results of rank reduction and norm dispatch.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from extreme_delaunay.errors import DimensionMismatchError
from extreme_delaunay.models.enums import Definiteness
from extreme_delaunay.models.matrices import RatMatrix, RatVector, as_matrix, as_vector, to_fraction

IntVector = tuple[int, ...]


@dataclass(frozen=True)
class QuadraticLattice:
    """
    Z^n with the quadratic form of a symmetric Gram matrix.

    G[i][j] is the inner product of generators u_i and u_j. Definiteness is
    computed by the CVP service, never assumed here.
    """

    gram: RatMatrix

    def __post_init__(self):
        if not self.gram.is_symmetric():
            raise ValueError("lattice Gram matrix must be symmetric")

    @classmethod
    def from_gram(cls, gram) -> "QuadraticLattice":
        return cls(gram=as_matrix(gram))

    @property
    def dim(self) -> int:
        return self.gram.rows

    def norm(self, v) -> Fraction:
        """Squared length of Σ v_i u_i."""
        return self.gram.quadratic_form(v)


@dataclass(frozen=True)
class CVPQuery:
    """A target x (over the generators) and a squared radius r2."""

    lattice: QuadraticLattice
    target: RatVector
    r2: Fraction

    def __post_init__(self):
        if len(self.target) != self.lattice.dim:
            raise DimensionMismatchError(
                f"target has length {len(self.target)}, lattice has dimension {self.lattice.dim}"
            )

    @classmethod
    def build(cls, gram, target, r2) -> "CVPQuery":
        return cls(
            lattice=QuadraticLattice.from_gram(gram),
            target=as_vector(target),
            r2=to_fraction(r2),
        )

    def distance2(self, w) -> Fraction:
        """(w - x)ᵀ G (w - x)."""
        return self.lattice.norm([wi - xi for wi, xi in zip(w, self.target)])


@dataclass(frozen=True)
class LatticeReduction:
    """
    An integral basis chosen among differences of the generating points.

    The points are the origin and the generators u_0..u_{n-1}. ``base`` is the
    generator index the differences are taken from (None for the origin) and
    ``indices`` the generators whose differences u_i - u_base form the basis.
    ``generator_coords[i]`` holds the integer coordinates of u_i in that basis;
    ``points`` holds the re-expressed query points.
    """

    base: Optional[int]
    indices: tuple[int, ...]
    gram: RatMatrix
    generator_coords: tuple[IntVector, ...]
    points: tuple[RatVector, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.indices)

    def reduce_point(self, x) -> RatVector:
        """Coordinates in the reduced basis of the point Σ x_i u_i."""
        r = self.rank
        out = [Fraction(0)] * r
        for xi, coords in zip(x, self.generator_coords):
            for k in range(r):
                out[k] += xi * coords[k]
        return tuple(out)

    def lift(self, w_reduced) -> IntVector:
        """An integer vector over the generators representing Σ w'_k (u_k - u_base)."""
        n = len(self.generator_coords)
        w = [0] * n
        for coeff, idx in zip(w_reduced, self.indices):
            w[idx] += coeff
            if self.base is not None:
                w[self.base] -= coeff
        return tuple(w)


@dataclass(frozen=True)
class NormQueryResult:
    """
    Answer of the dispatched norm query.

    ``witness`` is an integer w with (w - x)ᵀG(w - x) < r2, or None when no
    lattice vector lies strictly inside.
    """

    witness: Optional[IntVector]
    definiteness: Definiteness
    reduced_dim: int
    reduction: Optional[LatticeReduction] = None

    @property
    def found(self) -> bool:
        return self.witness is not None
