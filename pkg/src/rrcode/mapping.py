"""Charge-level <-> page-bit mapping.

The recursive alternate Gray map (RAGM) assigns every charge level of a
q-level cell a p = log2(q) bit word, one bit per page.  Bit ``i`` of a word
belongs to page ``i``; page ``p - 1`` is the left-most page.  Words are kept
as plain integers internally, so ``word >> i & 1`` is the bit of page ``i``.

The two left-most pages can also be read jointly as one GF(4) symbol, stored
as its integer equivalent ``0, 1, 2, 3`` for ``0, 1, alpha, alpha^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "GF4_ZERO",
    "GF4_ONE",
    "GF4_ALPHA",
    "GF4_ALPHA2",
    "GrayMap",
    "build_gray_map",
    "level_to_pages",
    "pages_to_level",
    "pair_to_gf4",
    "gf4_to_pair",
    "gf4_band",
    "binary_band",
    "check_level_count",
]

GF4_ZERO, GF4_ONE, GF4_ALPHA, GF4_ALPHA2 = 0, 1, 2, 3
GF4_NAMES = ("0", "1", "a", "a2")

# (left-most bit, next bit) -> symbol
_PAIR_TO_GF4 = {(1, 1): GF4_ZERO, (1, 0): GF4_ONE, (0, 0): GF4_ALPHA, (0, 1): GF4_ALPHA2}
_GF4_TO_PAIR = {v: k for k, v in _PAIR_TO_GF4.items()}


def check_level_count(q: int, minimum: int = 4) -> int:
    """Validate a level count: a power of two no smaller than ``minimum``."""
    if isinstance(q, bool) or not isinstance(q, (int, np.integer)):
        raise TypeError(f"level count must be an integer, got {type(q).__name__}")
    q = int(q)
    if q < minimum or q & (q - 1):
        raise ValueError(f"level count must be a power of 2 >= {minimum}, got {q}")
    return q


@dataclass(frozen=True)
class GrayMap:
    """Immutable level <-> word table produced by :func:`build_gray_map`."""

    q: int
    words: tuple[int, ...]
    _inverse: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_inverse", {w: lvl for lvl, w in enumerate(self.words)})

    @property
    def p(self) -> int:
        return self.q.bit_length() - 1

    @property
    def table(self) -> np.ndarray:
        """``q x p`` array; column 0 holds the left-most page bit (index p-1)."""
        p = self.p
        return np.array(
            [[(w >> (p - 1 - k)) & 1 for k in range(p)] for w in self.words], dtype=np.uint8
        )

    def word(self, level: int) -> int:
        if not 0 <= level < self.q:
            raise ValueError(f"level {level} outside [0, {self.q - 1}]")
        return self.words[level]

    def level(self, word: int) -> int:
        return self._inverse[word]

    def page_lookup(self) -> np.ndarray:
        """``p x q`` array; row ``i`` gives page ``i``'s bit for every level."""
        w = np.asarray(self.words)
        return np.stack([(w >> i) & 1 for i in range(self.p)]).astype(np.uint8)

    def __str__(self):
        p = self.p
        return "\n".join(f"{lvl}\t{w:0{p}b}" for lvl, w in enumerate(self.words))


def build_gray_map(q: int) -> GrayMap:
    """Build the RAGM table by repeated reflect-and-flip, starting from all ones."""
    q = check_level_count(q)
    p = q.bit_length() - 1
    words = [0] * q
    words[0] = (1 << p) - 1
    for i in range(p):
        half = 1 << i
        for j in range(half):
            words[half + j] = words[half - 1 - j] ^ (1 << i)
    return GrayMap(q, tuple(words))


def level_to_pages(level: int, gmap: GrayMap) -> tuple[int, ...]:
    """Page bits of ``level``, left-most page (index p-1) first."""
    w = gmap.word(level)
    return tuple((w >> i) & 1 for i in range(gmap.p - 1, -1, -1))


def pages_to_level(bits: Sequence[int], gmap: GrayMap) -> int:
    """Inverse of :func:`level_to_pages`; ``bits`` is left-most page first."""
    if len(bits) != gmap.p:
        raise ValueError(f"expected {gmap.p} page bits, got {len(bits)}")
    w = 0
    for b in bits:
        w = (w << 1) | (int(b) & 1)
    return gmap.level(w)


def pair_to_gf4(b_hi: int, b_lo: int) -> int:
    """Map the bits of pages p-1 and p-2 to a GF(4) symbol (11->0, 10->1, 00->a, 01->a^2)."""
    return _PAIR_TO_GF4[(int(b_hi), int(b_lo))]


def gf4_to_pair(s: int) -> tuple[int, int]:
    return _GF4_TO_PAIR[int(s)]


def binary_band(bit: int, q: int) -> range:
    """Levels whose left-most page bit equals ``bit`` (0 -> upper half, 1 -> lower half)."""
    q = check_level_count(q)
    return range(q // 2, q) if bit == 0 else range(0, q // 2)


def gf4_band(s: int, q: int) -> range:
    """Levels whose two left-most page bits map to symbol ``s``.

    0 -> lowest quarter, 1 -> second quarter, alpha -> third, alpha^2 -> top.
    """
    q = check_level_count(q, minimum=8)
    k = q // 4
    s = int(s)
    if s not in _GF4_TO_PAIR:
        raise ValueError(f"not a GF(4) symbol: {s}")
    return range(s * k, (s + 1) * k)
