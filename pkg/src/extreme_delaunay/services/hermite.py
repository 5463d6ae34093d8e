"""
Integer lattice helpers built on unimodular (extended-gcd) operations.

``hermite_basis`` brings integer vectors to echelon form by unimodular row
operations and returns a basis of the lattice they generate.
``PrimitiveExtender`` carries unimodular column operations along a growing
family of vectors: a family extends to a basis of Z^n exactly when each newly
added vector, after the operations accumulated so far, has gcd 1 over the
trailing coordinates (the Hermite diagonal stays ±1).
"""

import logging
from functools import reduce
from math import gcd
from typing import Optional, Sequence

logger = logging.getLogger(__name__)


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a·x + b·y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_basis(vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """
    Basis of the lattice generated by integer vectors (row echelon form).

    Rows are combined only by unimodular operations, so the nonzero rows of
    the echelon form generate the same lattice.
    """
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        for i in range(r + 1, len(rows)):
            if rows[i][c] == 0:
                continue
            a, b = rows[r][c], rows[i][c]
            g, x, y = extended_gcd(a, b)
            ag, bg = a // g, b // g
            top = [x * p + y * q for p, q in zip(rows[r], rows[i])]
            bottom = [-bg * p + ag * q for p, q in zip(rows[r], rows[i])]
            rows[r], rows[i] = top, bottom
        if rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-x for x in rows[r]]
            # reduce entries above the pivot
            for i in range(r):
                q = rows[i][c] // rows[r][c]
                if q:
                    rows[i] = [p - q * s for p, s in zip(rows[i], rows[r])]
            r += 1
    return [tuple(row) for row in rows[:r]]


def is_primitive_family(vectors: Sequence[Sequence[int]], n: int) -> bool:
    """Whether the vectors extend to a basis of Z^n."""
    extender = PrimitiveExtender(n)
    for v in vectors:
        extender = extender.extend(v)
        if extender is None:
            return False
    return True


class PrimitiveExtender:
    """
    Column-operation state for a family that extends to a basis of Z^n.

    ``U`` is unimodular and (family)·U is lower triangular with ±1 diagonal.
    """

    def __init__(self, n: int, U: Optional[list[list[int]]] = None, size: int = 0):
        self.n = n
        self.U = U if U is not None else [[int(i == j) for j in range(n)] for i in range(n)]
        self.size = size

    def transformed(self, v: Sequence[int]) -> list[int]:
        return [sum(v[i] * self.U[i][j] for i in range(self.n)) for j in range(self.n)]

    def extend(self, v: Sequence[int]) -> Optional["PrimitiveExtender"]:
        """New state with v appended, or None when the family stops being primitive."""
        k = self.size
        if k >= self.n:
            return None
        t = self.transformed(v)
        if reduce(gcd, (abs(x) for x in t[k:]), 0) != 1:
            return None
        U = [row[:] for row in self.U]
        for j in range(k + 1, self.n):
            if t[j] == 0:
                continue
            g, x, y = extended_gcd(t[k], t[j])
            a, b = t[k] // g, t[j] // g
            for row in U:
                ck, cj = row[k], row[j]
                row[k] = x * ck + y * cj
                row[j] = -b * ck + a * cj
            t[k], t[j] = g, 0
        return PrimitiveExtender(self.n, U, k + 1)

