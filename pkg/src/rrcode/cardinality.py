"""Exact code cardinalities N2(m) and N4(m).

Both sequences come from linear recursions started at a handful of seed
values, some of them at negative indices.  The 4-ary seeds are fractional
(every denominator divides 32), so entries are held as
:class:`fractions.Fraction` and, for the codecs, also as integers scaled by
``SCALE`` so that the hot loops never touch rationals.
"""

from __future__ import annotations

from fractions import Fraction
from threading import Lock

__all__ = ["CardinalityTable", "build_table", "cardinality", "adder_size", "BINARY", "QUATERNARY"]

BINARY = "binary"
QUATERNARY = "quaternary"

_SEEDS = {
    BINARY: {-3: Fraction(0), -2: Fraction(1), -1: Fraction(1), 0: Fraction(1), 1: Fraction(2)},
    QUATERNARY: {
        -5: Fraction(1, 32),
        -4: Fraction(-1, 16),
        -3: Fraction(0),
        -2: Fraction(1, 4),
        -1: Fraction(1, 2),
        0: Fraction(1),
        1: Fraction(4),
        2: Fraction(16),
    },
}
# coefficients of N(m-1), N(m-2), ...
_RECURSION = {BINARY: (1, 0, 1, 1), QUATERNARY: (3, -2, 9, 7, 6, 4)}
_SCALE = {BINARY: 1, QUATERNARY: 32}
# size of the removed reserved set: 1^m for binary, 0^m and 1^m for 4-ary
_RESERVED = {BINARY: 1, QUATERNARY: 2}


class CardinalityTable:
    """Cardinalities from the lowest seed index up to ``max_m``.

    The table only grows.  Reads are lock-free; :meth:`extend` takes a lock so
    that a shared table can be grown from several threads.
    """

    def __init__(self, kind: str, max_m: int = 1):
        if kind not in _SEEDS:
            raise ValueError(f"unknown cardinality kind {kind!r}")
        self.kind = kind
        self.scale = _SCALE[kind]
        seeds = _SEEDS[kind]
        self.min_m = min(seeds)
        self._values: list[Fraction] = [seeds[i] for i in range(self.min_m, max(seeds) + 1)]
        self._scaled: list[int] = [int(v * self.scale) for v in self._values]
        self._lock = Lock()
        self.extend(max_m)

    @property
    def max_m(self) -> int:
        return self.min_m + len(self._values) - 1

    def extend(self, max_m: int) -> "CardinalityTable":
        if max_m <= self.max_m:
            return self
        coeffs = _RECURSION[self.kind]
        with self._lock:
            vals = self._scaled
            while self.min_m + len(vals) - 1 < max_m:
                nxt = sum(c * vals[-1 - k] for k, c in enumerate(coeffs))
                vals.append(nxt)
                self._values.append(Fraction(nxt, self.scale))
        return self

    def _offset(self, m: int) -> int:
        if m < self.min_m:
            raise IndexError(f"N({m}) is undefined below index {self.min_m}")
        if m > self.max_m:
            self.extend(m)
        return m - self.min_m

    def __getitem__(self, m: int) -> Fraction:
        return self._values[self._offset(m)]

    def scaled(self, m: int) -> int:
        """``scale * N(m)``, an exact integer for every index."""
        return self._scaled[self._offset(m)]

    def count(self, m: int) -> int:
        """N(m) as an int; only valid for m >= 0."""
        if m < 0:
            raise ValueError("codebook sizes are defined for m >= 0")
        v = self[m]
        if v.denominator != 1:  # pragma: no cover - guarded by test_integrality
            raise ArithmeticError(f"N({m}) = {v} is not an integer")
        return int(v)

    def items(self):
        for k, v in enumerate(self._values):
            yield self.min_m + k, v

    def dump(self, start: int | None = None) -> str:
        """One ``m<TAB>N(m)`` line per index."""
        start = self.min_m if start is None else start
        return "\n".join(f"{m}\t{v}" for m, v in self.items() if m >= start)


def build_table(kind: str, max_m: int) -> CardinalityTable:
    if max_m < 1:
        raise ValueError("max_m must be >= 1")
    return CardinalityTable(kind, max_m)


def cardinality(table: CardinalityTable, m: int) -> Fraction:
    if m < table.min_m or m > table.max_m:
        raise IndexError(f"index {m} outside populated range [{table.min_m}, {table.max_m}]")
    return table[m]


def adder_size(kind: str, m: int, table: CardinalityTable | None = None) -> int:
    """floor(log2(N(m) - r)) with r = 1 (binary) or 2 (4-ary), on big integers."""
    table = table if table is not None else CardinalityTable(kind, max(m, 1))
    if table.kind != kind:
        raise ValueError("table kind does not match")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    n = table.count(m) - _RESERVED[kind]
    if n < 1:
        raise ValueError(f"N({m}) too small for a {kind} adder")
    return n.bit_length() - 1
