"""Brute-force references used to check the closed-form machinery.

Nothing here uses cardinality tables or index rules: codebooks come from
depth-first enumeration, sequence counts from a dynamic programme over
(previous, current) pair states.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from math import log2

import numpy as np

from .constraints import ForbiddenSet

__all__ = [
    "Codebook",
    "enumerate_codebook",
    "count_level_sequences",
    "pair_state_matrix",
    "growth_rate",
    "ENUMERATION_GUARD",
]

ENUMERATION_GUARD = 1 << 24


@dataclass(frozen=True)
class Codebook:
    alphabet: int
    m: int
    words: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.words)

    def position(self, word) -> int:
        """Rank of ``word`` in the sorted codebook (binary search)."""
        w = tuple(int(x) for x in word)
        k = bisect.bisect_left(self.words, w)
        if k == len(self.words) or self.words[k] != w:
            raise KeyError(f"{w} is not in the codebook")
        return k


def enumerate_codebook(alphabet: int, m: int, forbidden: ForbiddenSet) -> Codebook:
    """All length-``m`` words avoiding ``forbidden``, ascending lexicographically."""
    if alphabet ** m > ENUMERATION_GUARD:
        raise ValueError(f"{alphabet}^{m} candidates exceeds the enumeration guard")
    pats = forbidden.patterns
    words = []
    word = []

    def dfs():
        if len(word) == m:
            words.append(tuple(word))
            return
        for s in range(alphabet):
            if len(word) >= 2 and (word[-2], word[-1], s) in pats:
                continue
            word.append(s)
            dfs()
            word.pop()

    dfs()
    return Codebook(alphabet, m, tuple(words))


def count_level_sequences(q: int, n: int, forbidden: ForbiddenSet) -> int:
    """Exact number of length-``n`` sequences over ``{0..q-1}`` avoiding ``forbidden``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return q
    pats = forbidden.patterns
    # counts[(x, y)] of sequences ending in x, y
    counts = {(x, y): 1 for x in range(q) for y in range(q)}
    for _ in range(n - 2):
        nxt = dict.fromkeys(counts, 0)
        for (x, y), c in counts.items():
            if c:
                for z in range(q):
                    if (x, y, z) not in pats:
                        nxt[(y, z)] += c
        counts = nxt
    return sum(counts.values())


def pair_state_matrix(size: int, forbidden: ForbiddenSet) -> np.ndarray:
    """Transfer matrix on ``size**2`` pair states; (x,y) -> (y,z) unless xyz is forbidden."""
    a = np.zeros((size * size, size * size))
    for x in range(size):
        for y in range(size):
            for z in range(size):
                if (x, y, z) not in forbidden.patterns:
                    a[x * size + y, y * size + z] = 1
    return a


def growth_rate(q: int, n: int, forbidden: ForbiddenSet) -> float:
    """log2 of count(n) / count(n-1)."""
    return log2(count_level_sequences(q, n, forbidden)) - log2(count_level_sequences(q, n - 1, forbidden))
