"""
Pair-space vectors, polyhedral cones and hypermetric inequality systems.

A cone here is always {x : f·x <= 0 for every functional f}. The
hypermetric inequality H(b)d <= 0 is the functional with coordinate
(i, j) equal to b_i·b_j.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from extreme_delaunay.errors import DimensionMismatchError
from extreme_delaunay.models.hypermetric import BVector, pair_count, pairs
from extreme_delaunay.models.matrices import RatVector, as_vector

PairSpaceVector = RatVector
Ray = tuple[int, ...]


def functional_of(b: BVector) -> tuple[int, ...]:
    """Coefficients of H(b) in pair-space: (b_i b_j) over pairs i < j."""
    return tuple(b[i] * b[j] for i, j in pairs(b.n))


def evaluate(functional: Sequence, x: Sequence) -> Fraction:
    return sum((Fraction(f) * xi for f, xi in zip(functional, x)), Fraction(0))


@dataclass(frozen=True)
class PolyhedralCone:
    """A cone given by functionals f with f·x <= 0, zero functionals dropped."""

    dim: int
    functionals: tuple[RatVector, ...]

    @classmethod
    def from_functionals(cls, functionals: Iterable[Sequence], dim: int) -> "PolyhedralCone":
        seen = []
        for f in functionals:
            vec = as_vector(f)
            if len(vec) != dim:
                raise DimensionMismatchError(f"functional of length {len(vec)} in dimension {dim}")
            if any(x != 0 for x in vec) and vec not in seen:
                seen.append(vec)
        return cls(dim=dim, functionals=tuple(seen))

    def contains(self, x: Sequence) -> bool:
        return all(evaluate(f, x) <= 0 for f in self.functionals)


@dataclass(frozen=True)
class ConeSystem:
    """
    The cone C(F) cut out by H(b)d <= 0 for every b in F.

    F is deduplicated by functional; when two b-vectors share a functional the
    lexicographically smallest is kept. Instances are immutable: ``extended``
    returns a new system.
    """

    n: int
    bvectors: tuple[BVector, ...]
    functionals: tuple[tuple[int, ...], ...]

    @classmethod
    def from_bvectors(cls, n: int, bvectors: Iterable[BVector]) -> "ConeSystem":
        by_functional: dict[tuple[int, ...], BVector] = {}
        for b in bvectors:
            if b.n != n:
                raise DimensionMismatchError(f"b-vector {b} does not live on {n + 1} points")
            f = functional_of(b)
            kept = by_functional.get(f)
            if kept is None or b < kept:
                by_functional[f] = b
        ordered = sorted(by_functional.values())
        return cls(n=n, bvectors=tuple(ordered), functionals=tuple(functional_of(b) for b in ordered))

    def extended(self, bvectors: Iterable[BVector]) -> "ConeSystem":
        return ConeSystem.from_bvectors(self.n, list(self.bvectors) + list(bvectors))

    @property
    def dim(self) -> int:
        return pair_count(self.n)

    def __len__(self) -> int:
        return len(self.bvectors)

    def __contains__(self, b: BVector) -> bool:
        return b in self.bvectors

    def as_cone(self) -> PolyhedralCone:
        return PolyhedralCone.from_functionals(self.functionals, self.dim)


@dataclass(frozen=True)
class ExtremeRayCheck:
    """Extremeness verdict with the rank of the incident functionals."""

    extreme: bool
    rank: int
    incident: tuple[BVector, ...] = ()


@dataclass(frozen=True)
class RedundancyPartition:
    """Incident inequalities split into certified facets and redundant ones."""

    facets: tuple[BVector, ...]
    redundant: tuple[BVector, ...]


@dataclass(frozen=True)
class FacetOrbit:
    """A permutation orbit of facet b-vectors found at one extreme ray."""

    representative: BVector
    found: int
    orbit_size: int


@dataclass(frozen=True)
class FacetHarvest:
    """Facet orbits collected over one representative of every affine-basis orbit."""

    n: int
    bases: int
    basis_orbits: tuple[tuple[int, ...], ...]
    orbits: tuple[FacetOrbit, ...]

    @property
    def facets(self) -> int:
        return sum(o.found for o in self.orbits)
