#!/usr/bin/env python3
"""
Write the reference polytopes (segment, square, cube, Schläfli, Gosset and its
35-vertex neighbor) as polytope files.

Usage:
    python scripts/write_reference_polytopes.py --dir data/
    python scripts/write_reference_polytopes.py --dir data/ --only cube schlafli
    python scripts/write_reference_polytopes.py --dir data/ --coordinates
"""

import argparse
import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from extreme_delaunay.services.constructions import (
    REFERENCE_POLYTOPES,
    cube_coordinates,
    gosset_coordinates,
    schlafli_coordinates,
)
from extreme_delaunay.services.formats import format_vector, write_polytope

COORDINATE_LISTS = {
    "cube": cube_coordinates,
    "schlafli": schlafli_coordinates,
    "gosset": gosset_coordinates,
}


def coordinate_text(points) -> str:
    """Coordinate-block form of a point list."""
    lines = ["coordinates", str(len(points[0])), str(len(points))]
    lines.extend(format_vector(p) for p in points)
    return "\n".join(lines) + "\n"


def main():
    parser = argparse.ArgumentParser(description="Write reference polytope files")
    parser.add_argument("--dir", type=Path, default=Path("."), help="Output directory")
    parser.add_argument(
        "--only", nargs="+", choices=sorted(REFERENCE_POLYTOPES), help="Subset to write"
    )
    parser.add_argument(
        "--coordinates",
        action="store_true",
        help="Write explicit coordinates where available instead of the intrinsic form",
    )
    args = parser.parse_args()

    if not args.dir.is_dir():
        print(f"Error: Directory not found: {args.dir}")
        sys.exit(1)

    for name in args.only or sorted(REFERENCE_POLYTOPES):
        path = args.dir / f"{name}.poly"
        if args.coordinates and name in COORDINATE_LISTS:
            path.write_text(coordinate_text(COORDINATE_LISTS[name]()), encoding="utf-8")
            print(f"Wrote {path} (coordinates)")
            continue
        polytope = REFERENCE_POLYTOPES[name]()
        path.write_text(write_polytope(polytope), encoding="utf-8")
        print(f"Wrote {path}: dimension {polytope.n}, {polytope.vertex_count} vertices")


if __name__ == "__main__":
    main()
