"""
Service layer for extreme-delaunay.
"""

from extreme_delaunay.services.hypermetric import (
    ann,
    circumsphere,
    gram_of,
    hyp_value,
    is_hypermetric,
    triangle_bvectors,
)
from extreme_delaunay.services.lattice_cvp import (
    cvp_at_exact_radius,
    cvp_strictly_inside,
    dispatch_norm_query,
    psd_reduce,
)
from extreme_delaunay.services.cone_geometry import (
    adjacent_rays,
    facet_orbits,
    irredundancy_filter,
    is_extreme_ray,
)
from extreme_delaunay.services.delaunay import (
    find_affine_bases,
    is_extreme_polytope,
    polytope_from_basis,
    polytope_from_coordinates,
    polytope_from_ray,
)
from extreme_delaunay.services.isometry import (
    are_isomorphic,
    automorphism_group,
    classify_results,
    skeleton_graph,
)

__all__ = [
    # Hypermetric core
    "ann",
    "circumsphere",
    "gram_of",
    "hyp_value",
    "is_hypermetric",
    "triangle_bvectors",
    # Lattice CVP
    "cvp_at_exact_radius",
    "cvp_strictly_inside",
    "dispatch_norm_query",
    "psd_reduce",
    # Cone geometry
    "adjacent_rays",
    "facet_orbits",
    "irredundancy_filter",
    "is_extreme_ray",
    # Delaunay polytopes
    "find_affine_bases",
    "is_extreme_polytope",
    "polytope_from_basis",
    "polytope_from_coordinates",
    "polytope_from_ray",
    # Isometry
    "are_isomorphic",
    "automorphism_group",
    "classify_results",
    "skeleton_graph",
]
