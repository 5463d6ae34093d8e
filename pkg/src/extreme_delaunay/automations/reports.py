"""
Exploration reports: the line-oriented ``<out>.log`` and the JSON
``<out>.classes`` summary. Both are deterministic for a given result.
"""

import logging
from pathlib import Path

from extreme_delaunay.models.enums import IsometryMode
from extreme_delaunay.models.exploration import ClassSummary, ExplorationReport, ExplorationResult
from extreme_delaunay.services.formats import format_rational, format_ray
from extreme_delaunay.services.isometry import automorphism_group, classify_results

logger = logging.getLogger(__name__)


def render_log(result: ExplorationResult) -> str:
    lines = [entry.to_line() for entry in result.log]
    lines.append(f"neighbors={len(result.neighbors)}")
    for neighbor in result.neighbors:
        vertices = neighbor.polytope.vertex_count if neighbor.polytope else "none"
        note = "" if neighbor.basis_found else " no-basis-found"
        if neighbor.rank_deficient:
            note += " rank-deficient"
        lines.append(
            f"neighbor ray={format_ray(neighbor.ray)} dim={neighbor.dimension} "
            f"vertices={vertices} incident_rank={neighbor.incident_rank}{note}"
        )
    if result.complete:
        lines.append("COMPLETE")
    else:
        lines.append("INCOMPLETE")
        lines.extend(f"reason: {reason}" for reason in result.incomplete_reasons)
    return "\n".join(lines) + "\n"


def build_report(
    result: ExplorationResult,
    base_ray,
    n: int,
    mode: IsometryMode = IsometryMode.STRICT,
) -> ExplorationReport:
    """Classify the neighbors with a basis and summarize the run."""
    with_basis = [nb for nb in result.neighbors if nb.polytope is not None]
    classes = classify_results([nb.polytope for nb in with_basis], mode)
    summaries = []
    for cls in classes:
        rep = cls.representative
        member_rays = sorted(list(with_basis[i].ray) for i in cls.members)
        summaries.append(
            ClassSummary(
                representative_ray=member_rays[0] if rep.source_ray is None else list(rep.source_ray),
                vertex_count=rep.vertex_count,
                dimension=rep.n,
                automorphism_order=automorphism_group(rep, mode).order,
                multiplicity=cls.multiplicity,
                member_rays=member_rays,
            )
        )
    return ExplorationReport(
        status="COMPLETE" if result.complete else "INCOMPLETE",
        base_ray=[format_rational(x) for x in base_ray],
        n=n,
        iterations=result.iterations,
        final_inequalities=result.final_f_size,
        neighbor_count=len(result.neighbors),
        neighbors_without_basis=[list(nb.ray) for nb in result.neighbors if nb.polytope is None],
        incomplete_reasons=list(result.incomplete_reasons),
        classes=summaries,
    )


def write_reports(
    result: ExplorationResult,
    report: ExplorationReport,
    log_path: Path,
    classes_path: Path,
) -> None:
    log_path.write_text(render_log(result), encoding="utf-8")
    classes_path.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info(f"wrote {log_path} and {classes_path}")
