"""
Enum definitions for extreme-delaunay.

This module centralizes the enum types shared by the kernel, the lattice
routines, the cone code and the explorer so status values stay consistent.
"""

import enum


class Definiteness(enum.Enum):
    """Definiteness class of a symmetric form."""

    POSITIVE_DEFINITE = "positive_definite"
    POSITIVE_SEMIDEFINITE = "positive_semidefinite"  # rank deficient, no negative direction
    INDEFINITE = "indefinite"  # at least one negative direction


class SolutionKind(enum.Enum):
    """Outcome of an exact linear solve."""

    UNIQUE = "unique"
    NONE = "none"  # certified inconsistent
    UNDERDETERMINED = "underdetermined"  # particular solution plus nullspace


class ConstraintSense(enum.Enum):
    """Relation of a linear-program row to its right-hand side."""

    LE = "<="
    EQ = "=="
    GE = ">="


class VarSign(enum.Enum):
    """Sign restriction of a linear-program variable."""

    FREE = "free"
    NONNEGATIVE = "nonnegative"


class LPStatus(enum.Enum):
    """Outcome of a linear program."""

    FEASIBLE = "feasible"  # optimal when an objective was given
    INFEASIBLE = "infeasible"


class CandidateStatus(enum.Enum):
    """Verdict on a candidate ray during exploration."""

    UNCHECKED = "unchecked"
    HYPERMETRIC = "hypermetric"
    VIOLATED = "violated"
    PSD_IRREDUCIBLE = "psd_irreducible"  # rank-deficient, no integral subfamily
    BUDGET_EXCEEDED = "budget_exceeded"  # enumeration node limit hit


class IsometryMode(enum.Enum):
    """How pairwise distances are compared when testing isometry."""

    STRICT = "strict"  # raw squared distances (isometry proper)
    PROJECTIVE = "projective"  # rescaled so the first basis distance is 1
