"""
Long-running workflows for extreme-delaunay.
"""

from extreme_delaunay.automations.explorer import (
    AdjacencyExplorer,
    explore,
    initialize,
    initialize_from_ray,
)
from extreme_delaunay.automations.reports import build_report, render_log, write_reports

__all__ = [
    "AdjacencyExplorer",
    "explore",
    "initialize",
    "initialize_from_ray",
    "build_report",
    "render_log",
    "write_reports",
]
