"""Forbidden length-3 patterns and scanners that find them.

Two families live here:

* level triples (high-low-high charge patterns) over ``{0..q-1}``, in a
  full variant and a relaxed variant used by the 4-ary scheme;
* symbol patterns written on the coded page(s): ``{000, 010}`` over GF(2)
  and a ten-pattern set over GF(4).

Every set is exposed as a boolean lookup cube so that scanning a large grid
is one vectorised gather.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .mapping import GF4_ALPHA as A
from .mapping import GF4_ALPHA2 as A2
from .mapping import check_level_count

__all__ = [
    "Variant",
    "ForbiddenSet",
    "ViolationReport",
    "full_level_set",
    "relaxed_level_set",
    "R2",
    "R2_COMPLEMENTED",
    "R4",
    "forbidden_level_triples",
    "scan_sequence",
    "scan_grid",
    "count_violations",
    "is_admissible",
]


class Variant(str, Enum):
    FULL = "full"
    RELAXED = "relaxed"


@dataclass(frozen=True)
class ForbiddenSet:
    """A set of forbidden length-3 words over ``{0..size-1}``."""

    name: str
    size: int
    patterns: frozenset

    def __contains__(self, triple) -> bool:
        return tuple(int(t) for t in triple) in self.patterns

    def __len__(self):
        return len(self.patterns)

    def __iter__(self):
        return iter(sorted(self.patterns))

    @cached_property
    def cube(self) -> np.ndarray:
        cube = np.zeros((self.size,) * 3, dtype=bool)
        for x, y, z in self.patterns:
            cube[x, y, z] = True
        return cube


@dataclass(frozen=True)
class ViolationReport:
    direction: str  # "wordline" or "bitline"
    position: tuple[int, int]  # (row, column) of the first element of the triple
    triple: tuple[int, ...]


def full_level_set(q: int) -> ForbiddenSet:
    q = check_level_count(q)
    pats = frozenset(
        (x, y, z)
        for x in range(q // 2, q)
        for z in range(q // 2, q)
        for y in range(min(x, z))
    )
    return ForbiddenSet(f"L{q}", q, pats)


def relaxed_level_set(q: int) -> ForbiddenSet:
    q = check_level_count(q, minimum=8)
    k = q // 4
    top, mid, low = range(3 * k, q), range(2 * k, 3 * k), range(0, 2 * k)
    pats = set()
    for t1 in top:
        for t1b in top:
            pats.update((t1, e, t1b) for e in range(min(t1, t1b)))
    for t1 in top:
        for t2 in mid:
            for t3 in low:
                pats.add((t1, t3, t2))
                pats.add((t2, t3, t1))
    for t2 in mid:
        for t2b in mid:
            pats.update((t2, t3, t2b) for t3 in low)
    return ForbiddenSet(f"L'{q}", q, frozenset(pats))


def forbidden_level_triples(q: int, variant: Variant | str = Variant.FULL) -> list[tuple[int, int, int]]:
    """Sorted explicit enumeration of a level-triple set."""
    variant = Variant(variant)
    s = full_level_set(q) if variant is Variant.FULL else relaxed_level_set(q)
    return sorted(s.patterns)


R2 = ForbiddenSet("R2", 2, frozenset({(0, 0, 0), (0, 1, 0)}))
R2_COMPLEMENTED = ForbiddenSet("R2c", 2, frozenset({(1, 0, 1), (1, 1, 1)}))
R4 = ForbiddenSet(
    "R4",
    4,
    frozenset(
        {
            (A, 0, A), (A, 1, A), (A, 0, A2), (A, 1, A2),
            (A2, 0, A), (A2, 1, A), (A2, 0, A2), (A2, 1, A2),
            (A2, A, A2), (A2, A2, A2),
        }
    ),
)


def scan_sequence(seq: Sequence[int], fset: ForbiddenSet) -> list[ViolationReport]:
    """Every length-3 window of ``seq`` that lies in ``fset``, overlaps included."""
    out = []
    seq = [int(s) for s in seq]
    for j in range(len(seq) - 2):
        t = (seq[j], seq[j + 1], seq[j + 2])
        if t in fset.patterns:
            out.append(ViolationReport("wordline", (0, j), t))
    return out


def is_admissible(seq: Sequence[int], fset: ForbiddenSet) -> bool:
    seq = [int(s) for s in seq]
    return not any(
        (seq[j], seq[j + 1], seq[j + 2]) in fset.patterns for j in range(len(seq) - 2)
    )


def _directions(directions) -> tuple[str, ...]:
    if isinstance(directions, str):
        directions = (directions,)
    directions = tuple(directions)
    for d in directions:
        if d not in ("wordline", "bitline"):
            raise ValueError(f"unknown direction {d!r}")
    return directions


def _hits(grid: np.ndarray, cube: np.ndarray, direction: str) -> np.ndarray:
    if direction == "wordline":
        if grid.shape[1] < 3:
            return np.zeros((grid.shape[0], 0), dtype=bool)
        return cube[grid[:, :-2], grid[:, 1:-1], grid[:, 2:]]
    if grid.shape[0] < 3:
        return np.zeros((0, grid.shape[1]), dtype=bool)
    return cube[grid[:-2, :], grid[1:-1, :], grid[2:, :]]


def _as_grid(grid, fset: ForbiddenSet) -> np.ndarray:
    g = np.asarray(grid, dtype=np.int64)
    if g.ndim != 2:
        raise ValueError("grid must be two-dimensional")
    if g.size and (g.min() < 0 or g.max() >= fset.size):
        raise ValueError(f"grid entries must lie in [0, {fset.size - 1}]")
    return g


def scan_grid(
    grid, fset: ForbiddenSet, directions: Iterable[str] | str = ("wordline", "bitline")
) -> list[ViolationReport]:
    """Violations along rows (wordline) and/or columns (bitline), with positions."""
    g = _as_grid(grid, fset)
    cube = fset.cube
    out = []
    for d in _directions(directions):
        hits = _hits(g, cube, d)
        for r, c in zip(*np.nonzero(hits)):
            r, c = int(r), int(c)
            if d == "wordline":
                t = tuple(int(v) for v in g[r, c : c + 3])
            else:
                t = tuple(int(v) for v in g[r : r + 3, c])
            out.append(ViolationReport(d, (r, c), t))
    return out


def count_violations(grid, fset: ForbiddenSet, direction: str) -> tuple[int, int]:
    """(forbidden windows, total windows) in one direction; counts only."""
    g = _as_grid(grid, fset)
    (d,) = _directions(direction)
    hits = _hits(g, fset.cube, d)
    return int(hits.sum()), int(hits.size)
