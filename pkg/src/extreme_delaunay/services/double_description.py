"""
Extreme rays of a pointed polyhedral cone by the double-description method.

Rows are inserted in the given order; the initial cone comes from the first
dim linearly independent rows. New rays are formed only from pairs that pass
the algebraic adjacency test (the rows tight at both have rank dim - 2).
"""

import logging
from fractions import Fraction
from typing import Sequence

from extreme_delaunay.models.cone import Ray, evaluate
from extreme_delaunay.models.matrices import as_vector
from extreme_delaunay.services.linalg import inverse, primitive_vector, rank_of_vectors

logger = logging.getLogger(__name__)


def extreme_rays(functionals: Sequence[Sequence], dim: int) -> list[Ray]:
    """
    Extreme rays of {x in R^dim : f·x <= 0 for all f}.

    Returns primitive integer rays, sorted. The cone must be pointed.

    Raises:
        ValueError: the functionals have rank below dim (cone not pointed).
    """
    if dim == 0:
        return []
    rows = [as_vector(f) for f in functionals if any(x != 0 for x in f)]
    if rank_of_vectors(rows) < dim:
        raise ValueError(f"cone in dimension {dim} is not pointed")

    initial: list[int] = []
    for idx, row in enumerate(rows):
        if rank_of_vectors([rows[i] for i in initial] + [row]) > len(initial):
            initial.append(idx)
            if len(initial) == dim:
                break
    inv = inverse([rows[i] for i in initial])
    # column k of -A0^-1 is tight on every initial row except row k
    rays: list[tuple[Fraction, ...]] = [
        tuple(-inv[r, k] for r in range(dim)) for k in range(dim)
    ]
    processed = list(initial)

    for idx, row in enumerate(rows):
        if idx in initial:
            continue
        values = [evaluate(row, r) for r in rays]
        positive = [i for i, v in enumerate(values) if v > 0]
        if not positive:
            processed.append(idx)
            continue
        negative = [i for i, v in enumerate(values) if v < 0]
        kept = [r for r, v in zip(rays, values) if v <= 0]
        tight = [
            frozenset(j for j in processed if evaluate(rows[j], r) == 0) for r in rays
        ]
        for p in positive:
            for q in negative:
                common = tight[p] & tight[q]
                if len(common) < dim - 2:
                    continue
                if rank_of_vectors([rows[j] for j in common]) != dim - 2:
                    continue
                fp, fq = values[p], values[q]
                combined = tuple(fp * a - fq * b for a, b in zip(rays[q], rays[p]))
                kept.append(combined)
        rays = kept
        processed.append(idx)
        logger.debug(f"double description: row {idx} inserted, {len(rays)} rays")

    result = sorted({primitive_vector(r) for r in rays})
    return result
