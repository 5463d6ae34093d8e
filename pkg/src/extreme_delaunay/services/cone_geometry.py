"""
Cone geometry in pair-space: incidence, extremeness, ray adjacency, facet
redundancy and permutation orbits of b-vectors.
"""

import logging
from collections import Counter
from math import factorial, prod
from typing import Sequence, Union

from extreme_delaunay.errors import NotExtremeError, PointNotInConeError
from extreme_delaunay.models.cone import (
    ConeSystem,
    ExtremeRayCheck,
    FacetOrbit,
    PolyhedralCone,
    Ray,
    RedundancyPartition,
    evaluate,
    functional_of,
)
from extreme_delaunay.models.hypermetric import BVector, pair_count
from extreme_delaunay.models.matrices import as_vector
from extreme_delaunay.models.polytope import DelaunayPolytope
from extreme_delaunay.services.double_description import extreme_rays
from extreme_delaunay.services.linalg import primitive_vector, rank_of_vectors
from extreme_delaunay.services.lp_solver import conic_combination

logger = logging.getLogger(__name__)


def primitive_ray(x: Sequence) -> Ray:
    """Primitive integer representative of the ray through x (positive scaling only)."""
    return primitive_vector(x)


# ============================================================================
# Incidence and extremeness
# ============================================================================

def incident_subset(F: ConeSystem, d: Sequence) -> list[BVector]:
    """Every b in F with H(b)d = 0, zero functionals excluded."""
    point = as_vector(d)
    return [
        b
        for b, f in zip(F.bvectors, F.functionals)
        if any(f) and evaluate(f, point) == 0
    ]


def is_extreme_ray(F: ConeSystem, d: Sequence) -> ExtremeRayCheck:
    """
    Rank of the incident functionals at d; extreme iff it equals N - 1.

    Raises:
        PointNotInConeError: some inequality of F is violated at d.
    """
    point = as_vector(d)
    for b, f in zip(F.bvectors, F.functionals):
        if evaluate(f, point) > 0:
            raise PointNotInConeError(f"H({b})d = {evaluate(f, point)} > 0")
    incident = incident_subset(F, point)
    r = rank_of_vectors([functional_of(b) for b in incident])
    return ExtremeRayCheck(extreme=r == F.dim - 1, rank=r, incident=tuple(incident))


# ============================================================================
# Adjacency
# ============================================================================

def _cone_of(F: Union[ConeSystem, PolyhedralCone]) -> PolyhedralCone:
    return F.as_cone() if isinstance(F, ConeSystem) else F


def adjacent_rays(F: Union[ConeSystem, PolyhedralCone], e: Sequence) -> list[Ray]:
    """
    Extreme rays of the cone that span a 2-face with the extreme ray e.

    The local cone at e (incident functionals only) contains the line through
    e. Its quotient by that line, realized on the hyperplane x_k = 0 with k the
    first nonzero coordinate of e, is pointed; each of its extreme rays x
    spans with e a plane, in which the full cone is the 2-dimensional cone
    between e and e' = s*·e + x, s* = max over non-incident f of
    (f·x) / |f·e|.

    Raises:
        PointNotInConeError: e violates an inequality.
        NotExtremeError: e is not an extreme ray, or the cone is a line.
    """
    cone = _cone_of(F)
    N = cone.dim
    point = as_vector(e)
    if len(point) != N or all(x == 0 for x in point):
        raise NotExtremeError("base ray must be a nonzero point of the ambient space")
    values = [evaluate(f, point) for f in cone.functionals]
    if any(v > 0 for v in values):
        raise PointNotInConeError("base ray violates an inequality of the cone")
    incident = [f for f, v in zip(cone.functionals, values) if v == 0]
    outside = [(f, v) for f, v in zip(cone.functionals, values) if v < 0]
    r = rank_of_vectors(incident)
    if r != N - 1:
        raise NotExtremeError(f"not an extreme ray: incident rank {r}, need {N - 1}", rank=r)
    if N == 1:
        return []
    if not outside:
        raise NotExtremeError("cone contains the line through the base ray", rank=r)

    k = next(i for i, x in enumerate(point) if x != 0)
    projected = [tuple(x for i, x in enumerate(f) if i != k) for f in incident]
    quotient_rays = extreme_rays(projected, N - 1)

    neighbours = set()
    for q in quotient_rays:
        x = list(q[:k]) + [0] + list(q[k:])
        s_star = max(evaluate(f, x) / -v for f, v in outside)
        neighbours.add(primitive_vector([s_star * ei + xi for ei, xi in zip(point, x)]))
    result = sorted(neighbours)
    logger.debug(f"{len(result)} rays adjacent to {primitive_vector(point)}")
    return result


# ============================================================================
# Redundancy
# ============================================================================

def irredundancy_filter(incident: Sequence[BVector], n: int) -> RedundancyPartition:
    """
    Split inequalities into facet-certified and redundant.

    b is redundant iff its functional is a nonnegative combination of the
    functionals of the other b-vectors in the list. A zero functional is
    trivially redundant. Repeated entries are treated as one.
    """
    unique = sorted(set(incident))
    for b in unique:
        if b.n != n:
            raise ValueError(f"b-vector {b} does not live on {n + 1} points")
    functionals = {b: functional_of(b) for b in unique}
    facets, redundant = [], []
    for b in unique:
        f = functionals[b]
        if not any(f):
            redundant.append(b)
            continue
        others = [functionals[c] for c in unique if c != b and any(functionals[c])]
        if conic_combination(f, others) is None:
            facets.append(b)
        else:
            redundant.append(b)
    logger.info(f"irredundancy: {len(facets)} facets, {len(redundant)} redundant")
    return RedundancyPartition(facets=tuple(facets), redundant=tuple(redundant))


# ============================================================================
# Permutation orbits
# ============================================================================

def canonical_bvector(b: BVector) -> BVector:
    """Lexicographically largest permutation of b (coordinates sorted descending)."""
    return BVector(coords=tuple(sorted(b.coords, reverse=True)))


def orbit_size(b: BVector) -> int:
    """Number of distinct coordinate permutations of b."""
    counts = Counter(b.coords)
    return factorial(len(b)) // prod(factorial(c) for c in counts.values())


def extend_bvector(b: BVector) -> BVector:
    """The same inequality on one more point (a zero coordinate appended)."""
    return BVector(coords=b.coords + (0,))


def tight_facets(polytope: DelaunayPolytope) -> tuple[BVector, ...]:
    """
    Facets of the hypermetric cone tight at an extreme polytope, on its basis.

    The tight inequalities are the non-basis vertices; the irredundant ones
    are facets of the full hypermetric cone.

    Raises:
        NotExtremeError: the polytope's ray is not extreme.
    """
    incident = [b for b in polytope.vertices if not b.is_unit()]
    r = rank_of_vectors([functional_of(b) for b in incident])
    if r != pair_count(polytope.n) - 1:
        raise NotExtremeError(f"polytope is not extreme (rank {r})", rank=r)
    return irredundancy_filter(incident, polytope.n).facets


def group_facets(facets: Sequence[BVector]) -> list[FacetOrbit]:
    """Distinct facet b-vectors grouped by permutation orbit, largest representative first."""
    grouped: Counter = Counter(canonical_bvector(b) for b in set(facets))
    orbits = [
        FacetOrbit(representative=rep, found=count, orbit_size=orbit_size(rep))
        for rep, count in grouped.items()
    ]
    return sorted(orbits, key=lambda o: o.representative.coords, reverse=True)


def facet_orbits(polytope: DelaunayPolytope) -> list[FacetOrbit]:
    """
    Facets tight at an extreme polytope, by orbit.

    Raises:
        NotExtremeError: the polytope's ray is not extreme.
    """
    return group_facets(tight_facets(polytope))


def lift_orbits(orbits: Sequence[FacetOrbit], times: int = 1) -> list[FacetOrbit]:
    """
    Facet orbits on ``times`` more points, each representative zero-extended.

    A facet of the hypermetric cone stays a facet after adding a point with
    coefficient zero, so every lifted orbit is a facet orbit one level up.
    """
    if times < 0:
        raise ValueError("cannot lift a negative number of times")
    lifted = []
    for orbit in orbits:
        b = orbit.representative
        for _ in range(times):
            b = extend_bvector(b)
        rep = canonical_bvector(b)
        lifted.append(FacetOrbit(representative=rep, found=orbit.found, orbit_size=orbit_size(rep)))
    return sorted(lifted, key=lambda o: o.representative.coords, reverse=True)


def count_orbits(bvectors: Sequence[BVector]) -> int:
    """Number of permutation orbits met by a list of b-vectors."""
    return len({canonical_bvector(b) for b in bvectors})

