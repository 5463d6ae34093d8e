"""
Delaunay polytope model.

A polytope is stored intrinsically: the squared distances of an affine basis
plus every vertex as the b-vector of its integer affine coordinates in that
basis. Embedded coordinates are never stored.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from extreme_delaunay.models.hypermetric import BVector, Circumsphere, DistanceVector, GramMatrix


@dataclass(frozen=True)
class DelaunayPolytope:
    """
    Vertices as b-vectors over an affine basis of n + 1 vertices.

    ``ambient_n`` differs from ``n`` only for polytopes recovered from a
    rank-deficient ray: the ray lives on ambient_n + 1 points while the
    polytope has dimension n. ``source_ray`` keeps that ray when known.
    """

    n: int
    basis_d: DistanceVector
    vertices: tuple[BVector, ...]
    gram: GramMatrix
    sphere: Circumsphere
    ambient_n: Optional[int] = None
    source_ray: Optional[tuple[int, ...]] = field(default=None, compare=False)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def dimension(self) -> int:
        return self.n

    def is_reduced(self) -> bool:
        return self.ambient_n is not None and self.ambient_n != self.n

    def as_ray(self) -> tuple[Fraction, ...]:
        """The basis distance vector read as a point of pair-space."""
        return self.basis_d.entries

    def vertex_w(self, index: int) -> tuple[int, ...]:
        """Lattice coordinates (b_1..b_n) of a vertex."""
        return self.vertices[index].w
