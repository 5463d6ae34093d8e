"""
Exploration state, log records and report models.

The in-memory state and results are plain dataclasses; the machine-readable
summary written next to the log is a pydantic model so it serializes to
stable JSON.
"""

from dataclasses import dataclass, field
from typing import Optional

from pydantic import BaseModel, Field

from extreme_delaunay.models.cone import ConeSystem, PairSpaceVector, Ray
from extreme_delaunay.models.enums import CandidateStatus
from extreme_delaunay.models.hypermetric import BVector, points_for_length
from extreme_delaunay.models.polytope import DelaunayPolytope


@dataclass(frozen=True)
class Candidate:
    ray: Ray
    status: CandidateStatus = CandidateStatus.UNCHECKED


@dataclass(frozen=True)
class LogEntry:
    """One candidate verdict; entries are ordered by (iteration, candidate index)."""

    iteration: int
    f_size: int
    candidate: Ray
    verdict: CandidateStatus
    added: tuple[BVector, ...] = ()

    def to_line(self) -> str:
        ray = ",".join(str(x) for x in self.candidate)
        added = " ".join(str(b) for b in self.added)
        line = f"iter={self.iteration} |F|={self.f_size} ray=({ray}) verdict={self.verdict.value}"
        return f"{line} added={len(self.added)}" + (f" {added}" if added else "")


@dataclass
class ExplorationState:
    """
    Working data of one adjacency exploration.

    F only grows; e never changes. ``frontier`` holds the candidates of the
    latest pass.
    """

    n: int
    F: ConeSystem
    e: PairSpaceVector
    frontier: list[Candidate] = field(default_factory=list)
    log: list[LogEntry] = field(default_factory=list)
    iteration: int = 0


@dataclass(frozen=True)
class Neighbor:
    """
    A hypermetric ray adjacent to the base ray, with its polytope.

    ``polytope`` is None when no affine basis could be found among the ray's
    points; ``dimension`` is then the rank of its Gram matrix.
    """

    ray: Ray
    polytope: Optional[DelaunayPolytope]
    dimension: int
    incident_rank: int
    meets_vertex_bound: bool

    @property
    def basis_found(self) -> bool:
        return self.polytope is not None

    @property
    def rank_deficient(self) -> bool:
        return self.dimension < points_for_length(len(self.ray))


@dataclass(frozen=True)
class ExplorationResult:
    neighbors: tuple[Neighbor, ...]
    log: tuple[LogEntry, ...]
    complete: bool
    iterations: int
    final_f_size: int
    incomplete_reasons: tuple[str, ...] = ()


# ============================================================================
# Report models
# ============================================================================

class ClassSummary(BaseModel):
    """One isometry class among the neighbors."""

    representative_ray: list[int]
    vertex_count: int
    dimension: int
    automorphism_order: int
    multiplicity: int
    member_rays: list[list[int]] = Field(default_factory=list)


class ExplorationReport(BaseModel):
    """Summary written to ``<out>.classes``."""

    status: str
    base_ray: list[str]
    n: int
    iterations: int
    final_inequalities: int
    neighbor_count: int
    neighbors_without_basis: list[list[int]] = Field(default_factory=list)
    incomplete_reasons: list[str] = Field(default_factory=list)
    classes: list[ClassSummary] = Field(default_factory=list)
