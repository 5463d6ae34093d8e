"""
Data models for extreme-delaunay.

This module exports the value types shared by the services: matrices and
linear programs, distance vectors and b-vectors, cones, lattices, polytopes,
colored graphs and exploration records.
"""

# Enums
from extreme_delaunay.models.enums import (
    CandidateStatus,
    ConstraintSense,
    Definiteness,
    IsometryMode,
    LPStatus,
    SolutionKind,
    VarSign,
)

# Exact linear algebra
from extreme_delaunay.models.matrices import LPProblem, RatMatrix, Rational, RatVector

# Hypermetric data
from extreme_delaunay.models.hypermetric import (
    BVector,
    Circumsphere,
    DistanceVector,
    GramMatrix,
    HypermetricVerdict,
)

# Lattices
from extreme_delaunay.models.lattice import (
    CVPQuery,
    LatticeReduction,
    NormQueryResult,
    QuadraticLattice,
)

# Cones
from extreme_delaunay.models.cone import (
    ConeSystem,
    ExtremeRayCheck,
    FacetOrbit,
    PolyhedralCone,
    Ray,
    RedundancyPartition,
)

# Polytopes and isometry
from extreme_delaunay.models.polytope import DelaunayPolytope
from extreme_delaunay.models.graphs import ColoredGraph, PermGroup

# Exploration
from extreme_delaunay.models.exploration import (
    ClassSummary,
    ExplorationReport,
    ExplorationResult,
    ExplorationState,
    LogEntry,
    Neighbor,
)

__all__ = [
    # Enums
    "CandidateStatus",
    "ConstraintSense",
    "Definiteness",
    "IsometryMode",
    "LPStatus",
    "SolutionKind",
    "VarSign",
    # Exact linear algebra
    "LPProblem",
    "RatMatrix",
    "Rational",
    "RatVector",
    # Hypermetric data
    "BVector",
    "Circumsphere",
    "DistanceVector",
    "GramMatrix",
    "HypermetricVerdict",
    # Lattices
    "CVPQuery",
    "LatticeReduction",
    "NormQueryResult",
    "QuadraticLattice",
    # Cones
    "ConeSystem",
    "ExtremeRayCheck",
    "FacetOrbit",
    "PolyhedralCone",
    "Ray",
    "RedundancyPartition",
    # Polytopes and isometry
    "DelaunayPolytope",
    "ColoredGraph",
    "PermGroup",
    # Exploration
    "ClassSummary",
    "ExplorationReport",
    "ExplorationResult",
    "ExplorationState",
    "LogEntry",
    "Neighbor",
]
