"""4-ary LOCO code over GF(4) = {0, 1, a, a^2} forbidding the ten R4 patterns.

Symbols are held as their integer equivalents 0..3 and ordered by value.  The
index rule is again a sum of per-symbol contributions; here a contribution
depends only on the symbol and its left neighbour, through five indicator
flags that select a combination of N4(i), N4(i-1), N4(i-2) and N4(i-3).
Those values are fractional for i < 3, so everything runs on the table's
32-scaled integers and the final sum is divided back.

A stream frame is ``m`` codeword symbols followed by two bridge symbols from
{0, 1}; the bridge itself carries two message bits.  The codewords 0^m and
1^m are never emitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_bits, check_positive_int, check_symbols, ints_to_rows, rows_to_ints
from .cardinality import QUATERNARY, CardinalityTable, adder_size
from .constraints import R4, is_admissible
from .exceptions import ConfigError, ConstraintViolationError, FramingError, IndexRangeError

__all__ = [
    "MergingFlags",
    "merging_flags",
    "QuaternaryFrameConfig",
    "index_of4",
    "codeword_of4",
    "encode_stream4",
    "decode_stream4",
    "decode_frames4",
    "QuaternaryRRLocoCodec",
]

_GAMMA = (None, 0, 1)  # out of bounds, 0, 1
_CHI = (2, 3)  # alpha, alpha^2
_FORBIDDEN_NEXT: dict[tuple, frozenset] = {}
for _x, _y, _z in R4.patterns:
    _FORBIDDEN_NEXT.setdefault((_x, _y), set()).add(_z)
_FORBIDDEN_NEXT = {k: frozenset(v) for k, v in _FORBIDDEN_NEXT.items()}


def _table(table: CardinalityTable | None, m: int) -> CardinalityTable:
    if table is None:
        return CardinalityTable(QUATERNARY, max(m, 2))
    if table.kind != QUATERNARY:
        raise ValueError("4-ary codec needs a quaternary cardinality table")
    return table.extend(m)


@dataclass(frozen=True)
class MergingFlags:
    y1: int
    y1p: int
    y2: int
    y3: int
    yd: int


def merging_flags(prev, a: int) -> MergingFlags:
    """Indicator flags for symbol ``a`` preceded by ``prev`` (``None`` = out of bounds)."""
    small = a in (1, 2)
    return MergingFlags(
        y1=int(prev in _GAMMA and small),
        y1p=int(prev in _GAMMA and a == 3),
        y2=int(prev in _CHI and small),
        y3=int(prev == 2 and a == 3),
        yd=int(prev == 3 and a == 3),
    )


def _weight(i: int, prev, a: int, table: CardinalityTable) -> int:
    """32-scaled contribution of symbol ``a`` at position ``i``."""
    if a == 0:
        return 0
    f = merging_flags(prev, a)
    f1 = (f.y1 + f.y1p) * a + f.y3
    f2 = 2 * (f.y2 * a + f.y3 - f.y1p) + 5 * f.yd
    f3 = 4 * (f.y1p + f.y3) + 2 * f.yd
    f4 = 4 * f.yd
    n = table.scaled
    return f1 * n(i) + f2 * n(i - 1) + f3 * n(i - 2) + f4 * n(i - 3)


@lru_cache(maxsize=512)
def _weight_rows(m: int) -> tuple[dict, ...]:
    """Per position ``i``: ``{prev: (w(0), w(1), w(2), w(3))}``, 32-scaled."""
    table = CardinalityTable(QUATERNARY, max(m, 2))
    return tuple(
        {prev: tuple(_weight(i, prev, a, table) for a in range(4)) for prev in (None, 0, 1, 2, 3)}
        for i in range(m)
    )


def index_of4(cw: Sequence[int], table: CardinalityTable | None = None, check: bool = True) -> int:
    """Lexicographic index of a 4-ary codeword given most-significant symbol first."""
    syms = [int(s) for s in cw]
    m = len(syms)
    if check:
        if any(s not in (0, 1, 2, 3) for s in syms):
            raise ValueError("codeword symbols must lie in 0..3")
        if not is_admissible(syms, R4):
            raise ConstraintViolationError(f"word {syms} contains a forbidden pattern")
    table = _table(table, m)
    rows = _weight_rows(m)
    total = 0
    prev = None
    for k, a in enumerate(syms):
        total += rows[m - 1 - k][prev][a]
        prev = a
    g, rem = divmod(total, table.scale)
    if rem and check:  # pragma: no cover - integrality is a tested invariant
        raise ArithmeticError("non-integral index sum")
    return g


def codeword_of4(g: int, m: int, table: CardinalityTable | None = None) -> list[int]:
    """Inverse of :func:`index_of4`: largest admissible symbol whose weight fits, left to right."""
    m = check_positive_int(m, "m")
    table = _table(table, m)
    n = table.count(m)
    if not 0 <= g < n:
        raise IndexRangeError(f"index {g} outside [0, {n - 1}] for m={m}")
    residual = int(g) * table.scale
    rows = _weight_rows(m)
    out: list[int] = []
    prev = prev2 = None
    for i in range(m - 1, -1, -1):
        banned = _FORBIDDEN_NEXT.get((prev2, prev), ())
        weights = rows[i][prev]
        for a in (3, 2, 1, 0):
            if a in banned:
                continue
            w = weights[a]
            if w <= residual:
                residual -= w
                break
        out.append(a)
        prev2, prev = prev, a
    assert residual == 0, "greedy inverse left a residual"
    return out


@dataclass(frozen=True)
class QuaternaryFrameConfig:
    m: int
    s4: int | None = None

    def __post_init__(self):
        m = check_positive_int(self.m, "m")
        table = CardinalityTable(QUATERNARY, max(m, 2))
        if table.count(m) < 3:  # pragma: no cover - N4(1) = 4
            raise ConfigError(f"m={m} is too short")
        s_max = adder_size(QUATERNARY, m, table)
        s4 = s_max if self.s4 is None else check_positive_int(self.s4, "s4", minimum=0)
        if (1 << s4) > table.count(m) - 2:
            raise ConfigError(f"2**{s4} exceeds N4({m}) - 2 = {table.count(m) - 2}")
        object.__setattr__(self, "s4", s4)
        object.__setattr__(self, "_ones_index", index_of4([1] * m, table))

    @property
    def frame_length(self) -> int:
        """Symbols per frame."""
        return self.m + 2

    @property
    def frame_bits(self) -> int:
        return self.s4 + 2

    @property
    def reserved(self) -> tuple[int, int]:
        """Indices of 0^m and 1^m."""
        return (0, self._ones_index)

    def message_to_index(self, u: int) -> int:
        """Order-preserving skip around the two reserved codewords."""
        return u + 1 if u + 1 < self._ones_index else u + 2

    def index_to_message(self, g: int) -> int:
        if g == 0 or g == self._ones_index:
            raise ConstraintViolationError(f"index {g} is a reserved codeword")
        return g - 1 if g < self._ones_index else g - 2


def encode_stream4(message, cfg: QuaternaryFrameConfig, table: CardinalityTable | None = None) -> np.ndarray:
    """Frames of ``s4 + 2`` bits become ``m + 2`` GF(4) symbols."""
    msg = check_bits(message, "message")
    fb, m = cfg.frame_bits, cfg.m
    if msg.size % fb:
        raise ConfigError(f"message length {msg.size} is not a multiple of s4+2={fb}")
    table = _table(table, m)
    nframes = msg.size // fb
    chunks = msg.reshape(nframes, fb)
    out = np.empty((nframes, m + 2), dtype=np.uint8)
    out[:, m:] = chunks[:, cfg.s4 :]
    for f, u in enumerate(rows_to_ints(chunks[:, : cfg.s4])):
        out[f, :m] = codeword_of4(cfg.message_to_index(u), m, table)
    return out.reshape(-1)


def decode_frames4(
    payload, cfg: QuaternaryFrameConfig, table: CardinalityTable | None = None, strict: bool = True
) -> tuple[list[int], np.ndarray]:
    """Per-frame message integers and the ``(frames, 2)`` bridge bits."""
    syms = check_symbols(payload, 4, "payload")
    m = cfg.m
    if syms.size % (m + 2):
        raise FramingError(f"payload length {syms.size} is not a multiple of {m + 2}")
    frames = syms.reshape(-1, m + 2)
    table = _table(table, m)
    limit = 1 << cfg.s4
    values = []
    for f, row in enumerate(frames):
        body = row[:m].tolist()
        if not strict:
            g = index_of4(body, table, check=False)
            u = g - 1 if g < cfg.reserved[1] else g - 2
            values.append(max(u, 0) % limit)
            continue
        if row[m] > 1 or row[m + 1] > 1:
            raise FramingError(f"frame {f}: bridge symbols {row[m:].tolist()} not in {{0, 1}}", frame=f)
        try:
            u = cfg.index_to_message(index_of4(body, table))
        except ConstraintViolationError as exc:
            raise ConstraintViolationError(f"frame {f}: {exc}", frame=f) from None
        if u >= limit:
            raise IndexRangeError(f"frame {f}: message index {u} >= 2**{cfg.s4}", frame=f)
        values.append(u)
    bridges = frames[:, m:] & 1
    return values, bridges


def decode_stream4(
    payload, cfg: QuaternaryFrameConfig, table: CardinalityTable | None = None, strict: bool = True
) -> np.ndarray:
    values, bridges = decode_frames4(payload, cfg, table, strict=strict)
    body = ints_to_rows(values, cfg.s4)
    return np.concatenate([body, bridges.astype(np.uint8)], axis=1).reshape(-1)


class QuaternaryRRLocoCodec(TransformerMixin, BaseEstimator):
    """Two-left-most-pages codec: bits in, GF(4) symbols (0..3) out.

    Parameters
    ----------
    m : int
        Codeword length in symbols; a frame is ``m + 2`` symbols and carries
        ``s4_ + 2`` message bits.
    strict : bool
        Raise on framing/constraint/range errors in ``inverse_transform``.
    """

    def __init__(self, m: int = 10, strict: bool = True):
        self.m = m
        self.strict = strict

    def fit(self, X=None, y=None):
        self.config_ = QuaternaryFrameConfig(self.m)
        self.table_ = CardinalityTable(QUATERNARY, max(self.m, 2))
        self.s4_ = self.config_.s4
        self.frame_length_ = self.config_.frame_length
        self.frame_bits_ = self.config_.frame_bits
        return self

    def transform(self, X):
        check_is_fitted(self, "config_")
        return encode_stream4(X, self.config_, self.table_)

    def inverse_transform(self, X):
        check_is_fitted(self, "config_")
        return decode_stream4(X, self.config_, self.table_, strict=self.strict)

    def rate(self) -> float:
        """Message bits per written symbol."""
        check_is_fitted(self, "config_")
        return self.frame_bits_ / self.frame_length_
