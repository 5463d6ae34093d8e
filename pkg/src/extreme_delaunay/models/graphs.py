"""
Distance-colored complete graphs and permutation groups on their vertices.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Permutation = tuple[int, ...]


@dataclass(frozen=True)
class ColoredGraph:
    """
    Complete graph on m vertices with every pair colored by its distance.

    ``colors[i][j]`` indexes into ``table``, the sorted distinct distances, so
    the smallest distance has color 0. The diagonal holds -1.
    """

    table: tuple[Fraction, ...]
    colors: tuple[tuple[int, ...], ...]

    @classmethod
    def from_distances(cls, distances: Sequence[Sequence[Fraction]]) -> "ColoredGraph":
        m = len(distances)
        table = tuple(sorted({distances[i][j] for i in range(m) for j in range(i + 1, m)}))
        index = {value: k for k, value in enumerate(table)}
        colors = tuple(
            tuple(-1 if i == j else index[distances[i][j]] for j in range(m)) for i in range(m)
        )
        return cls(table=table, colors=colors)

    @property
    def m(self) -> int:
        return len(self.colors)

    def color(self, i: int, j: int) -> int:
        return self.colors[i][j]

    def color_multiplicities(self) -> tuple[int, ...]:
        """Number of vertex pairs of each color, in table order."""
        counts = Counter(
            self.colors[i][j] for i in range(self.m) for j in range(i + 1, self.m)
        )
        return tuple(counts[k] for k in range(len(self.table)))

    def preserves(self, perm: Permutation) -> bool:
        """Whether the vertex permutation keeps every edge color."""
        return all(
            self.colors[i][j] == self.colors[perm[i]][perm[j]]
            for i in range(self.m)
            for j in range(i + 1, self.m)
        )


@dataclass(frozen=True)
class PermGroup:
    """A permutation group given by generators, with its exact order."""

    degree: int
    generators: tuple[Permutation, ...]
    order: int

    def orbit(self, point: int) -> list[int]:
        """Sorted orbit of a point."""
        seen = {point}
        frontier = [point]
        while frontier:
            p = frontier.pop()
            for g in self.generators:
                q = g[p]
                if q not in seen:
                    seen.add(q)
                    frontier.append(q)
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        remaining = set(range(self.degree))
        result = []
        while remaining:
            orbit = self.orbit(min(remaining))
            remaining -= set(orbit)
            result.append(orbit)
        return result

    def set_orbits(self, subsets: Iterable[Sequence[int]]) -> list[list[tuple[int, ...]]]:
        """
        Partition the given subsets into orbits under the group.

        Only subsets present in the input are reported; each orbit is sorted
        and orbits are ordered by their first member.
        """
        pending = {tuple(sorted(s)) for s in subsets}
        result = []
        while pending:
            start = min(pending)
            seen = {start}
            frontier = [start]
            while frontier:
                s = frontier.pop()
                for g in self.generators:
                    image = tuple(sorted(g[i] for i in s))
                    if image not in seen:
                        seen.add(image)
                        frontier.append(image)
            members = sorted(seen & pending)
            pending -= seen
            result.append(members)
        return result
