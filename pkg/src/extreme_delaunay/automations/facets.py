"""
Facet harvesting over every affine basis of an extreme polytope.

Each affine basis gives the same polytope a different distance vector, and
the vertices tight there are facets of the hypermetric cone on n + 1 points.
Bases related by an automorphism give permuted facets, so one basis per
orbit suffices. ``lift_orbits`` carries the harvest to more points by
zero-extension.
"""

import logging
from typing import Optional

from extreme_delaunay.models.cone import FacetHarvest
from extreme_delaunay.models.polytope import DelaunayPolytope
from extreme_delaunay.services.cone_geometry import group_facets, tight_facets
from extreme_delaunay.services.delaunay import find_affine_bases, rebase
from extreme_delaunay.services.isometry import automorphism_group

logger = logging.getLogger(__name__)


def harvest_facets(polytope: DelaunayPolytope, limit: Optional[int] = None) -> FacetHarvest:
    """
    Facet orbits tight at the polytope over every affine basis orbit.

    ``limit`` caps the number of bases enumerated; the harvest then covers
    only the orbits met among them.

    Raises:
        NotExtremeError: the polytope's ray is not extreme.
    """
    # fails fast on a non-extreme polytope
    found = list(tight_facets(polytope))
    bases = find_affine_bases(polytope, limit)
    groups = automorphism_group(polytope).set_orbits(bases)
    representatives = tuple(group[0] for group in groups)
    logger.info(f"{len(bases)} affine bases in {len(representatives)} orbits")

    for basis in representatives:
        facets = tight_facets(rebase(polytope, basis))
        logger.debug(f"basis {basis}: {len(facets)} facets")
        found.extend(facets)
    orbits = group_facets(found)
    logger.info(f"{len(orbits)} facet orbits from {len(representatives)} basis orbits")
    return FacetHarvest(
        n=polytope.n,
        bases=len(bases),
        basis_orbits=representatives,
        orbits=tuple(orbits),
    )
