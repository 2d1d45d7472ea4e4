"""Binary LOCO code forbidding {000, 010} and its stream framing.

Codewords are written left to right as ``c[m-1] ... c[0]`` and ordered
lexicographically with 0 < 1.  The index of a codeword is a sum of per-bit
contributions, each a function of the bit, its two left neighbours and the
cardinality table; positions left of the word are "out of bounds" (``None``).

A stream frame is one codeword followed by the bridge ``11``.  Only the first
``2**s2`` indices are used, which keeps the all-ones word out of the stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_bits, check_positive_int, ints_to_rows, rows_to_ints
from .cardinality import BINARY, CardinalityTable, adder_size
from .constraints import R2, R2_COMPLEMENTED, is_admissible
from .exceptions import ConfigError, ConstraintViolationError, FramingError, IndexRangeError

__all__ = [
    "BinaryFrameConfig",
    "index_of",
    "codeword_of",
    "index_of_complemented",
    "encode_stream",
    "decode_stream",
    "decode_frames",
    "BinaryRRLocoCodec",
]

BRIDGE = (1, 1)


def _table(table: CardinalityTable | None, m: int) -> CardinalityTable:
    if table is None:
        return CardinalityTable(BINARY, max(m, 1))
    if table.kind != BINARY:
        raise ValueError("binary codec needs a binary cardinality table")
    return table.extend(m)


def _one_weight(i: int, prev1, prev2, table: CardinalityTable) -> int:
    """Contribution of ``c[i] = 1`` given ``c[i+1] = prev1`` and ``c[i+2] = prev2``."""
    y1 = prev2 == 0  # 001 / 011: a 0 here would complete a forbidden word
    y2 = prev1 == 0 and not y1  # 101 or (out-of-bounds)01
    return (1 - y1) * table.scaled(i - 2) + (1 - y1 - y2) * table.scaled(i - 3)


def index_of(cw: Sequence[int], table: CardinalityTable | None = None, check: bool = True) -> int:
    """Lexicographic index of a codeword given most-significant bit first.

    With ``check=False`` the rule is evaluated on any 0/1 word; the result is
    then meaningless as an index but is what a decoder fed garbage computes.
    """
    bits = [int(b) for b in cw]
    m = len(bits)
    if check:
        if any(b not in (0, 1) for b in bits):
            raise ValueError("codeword must be binary")
        if not is_admissible(bits, R2):
            raise ConstraintViolationError(f"word {''.join(map(str, bits))} contains 000 or 010")
    table = _table(table, m)
    g = 0
    prev1 = prev2 = None
    for k, b in enumerate(bits):
        if b:
            g += _one_weight(m - 1 - k, prev1, prev2, table)
        prev2, prev1 = prev1, b
    return g


def codeword_of(g: int, m: int, table: CardinalityTable | None = None) -> list[int]:
    """Inverse of :func:`index_of`, built greedily from the left."""
    m = check_positive_int(m, "m")
    table = _table(table, m)
    n = table.count(m)
    if not 0 <= g < n:
        raise IndexRangeError(f"index {g} outside [0, {n - 1}] for m={m}")
    out = []
    prev1 = prev2 = None
    residual = int(g)
    for i in range(m - 1, -1, -1):
        w = _one_weight(i, prev1, prev2, table)
        b = 1 if w <= residual else 0
        if b:
            residual -= w
        out.append(b)
        prev2, prev1 = prev1, b
    assert residual == 0, "greedy inverse left a residual"
    return out


def index_of_complemented(cw: Sequence[int], table: CardinalityTable | None = None) -> int:
    """Index within the complemented codebook (words avoiding 101 and 111).

    Uses the asymmetric-LOCO rule: bit ``c[i]`` contributes ``N(i - a[i+1])``,
    the out-of-bounds neighbour counting as 0.
    """
    bits = [int(b) for b in cw]
    if not is_admissible(bits, R2_COMPLEMENTED):
        raise ConstraintViolationError(f"word {''.join(map(str, bits))} contains 101 or 111")
    m = len(bits)
    table = _table(table, m)
    g = 0
    prev = 0
    for k, b in enumerate(bits):
        if b:
            g += table.scaled(m - 1 - k - prev)
        prev = b
    return g


@dataclass(frozen=True)
class BinaryFrameConfig:
    m: int
    s2: int | None = None
    complemented: bool = False

    def __post_init__(self):
        m = check_positive_int(self.m, "m")
        table = CardinalityTable(BINARY, m)
        if table.count(m) < 2:  # pragma: no cover - N2(1) = 2
            raise ConfigError(f"m={m} is too short")
        s_max = adder_size(BINARY, m, table)
        s2 = s_max if self.s2 is None else check_positive_int(self.s2, "s2", minimum=0)
        if (1 << s2) > table.count(m) - 1:
            raise ConfigError(f"2**{s2} exceeds N2({m}) - 1 = {table.count(m) - 1}")
        object.__setattr__(self, "s2", s2)

    @property
    def frame_length(self) -> int:
        return self.m + 2


def encode_stream(message, cfg: BinaryFrameConfig, table: CardinalityTable | None = None) -> np.ndarray:
    """Frame ``message`` into codeword + ``11`` blocks, ``s2`` message bits each."""
    msg = check_bits(message, "message")
    s2, m = cfg.s2, cfg.m
    if s2 == 0 or msg.size % s2:
        raise ConfigError(f"message length {msg.size} is not a multiple of s2={s2}")
    table = _table(table, m)
    nframes = msg.size // s2
    out = np.empty((nframes, m + 2), dtype=np.uint8)
    out[:, m:] = BRIDGE
    for f, g in enumerate(rows_to_ints(msg.reshape(nframes, s2))):
        out[f, :m] = codeword_of(g, m, table)
    out = out.reshape(-1)
    if cfg.complemented:
        out ^= 1
    return out


def decode_frames(
    payload, cfg: BinaryFrameConfig, table: CardinalityTable | None = None, strict: bool = True
) -> list[int]:
    """Per-frame message integers.

    ``strict=False`` skips all checks and keeps only the low ``s2`` bits of
    whatever index the rule produces; used to measure error propagation.
    """
    bits = check_bits(payload, "payload")
    m, s2 = cfg.m, cfg.s2
    if bits.size % (m + 2):
        raise FramingError(f"payload length {bits.size} is not a multiple of {m + 2}")
    frames = bits.reshape(-1, m + 2)
    if cfg.complemented:
        frames = frames ^ 1
    table = _table(table, m)
    limit = 1 << s2
    out = []
    for f, row in enumerate(frames):
        body = row[:m].tolist()
        if not strict:
            out.append(index_of(body, table, check=False) % limit)
            continue
        if tuple(row[m:]) != BRIDGE:
            raise FramingError(f"frame {f}: bridge is {row[m]}{row[m + 1]}, expected 11", frame=f)
        try:
            g = index_of(body, table)
        except ConstraintViolationError as exc:
            raise ConstraintViolationError(f"frame {f}: {exc}", frame=f) from None
        if g >= limit:
            raise IndexRangeError(f"frame {f}: index {g} >= 2**{s2}", frame=f)
        out.append(g)
    return out


def decode_stream(
    payload, cfg: BinaryFrameConfig, table: CardinalityTable | None = None, strict: bool = True
) -> np.ndarray:
    values = decode_frames(payload, cfg, table, strict=strict)
    return ints_to_rows(values, cfg.s2).reshape(-1)


class BinaryRRLocoCodec(TransformerMixin, BaseEstimator):
    """Left-most-page codec as a transformer: bits in, constrained bits out.

    Parameters
    ----------
    m : int
        Codeword length; each frame is ``m + 2`` coded bits.
    complemented : bool
        Flip every written bit, so the page avoids {101, 111} instead.
    strict : bool
        Raise on framing/constraint/range errors in ``inverse_transform``.

    Attributes
    ----------
    s2_ : int
        Message bits per frame (the adder size).
    frame_length_ : int
    table_ : CardinalityTable
    """

    def __init__(self, m: int = 11, complemented: bool = False, strict: bool = True):
        self.m = m
        self.complemented = complemented
        self.strict = strict

    def fit(self, X=None, y=None):
        self.config_ = BinaryFrameConfig(self.m, complemented=bool(self.complemented))
        self.table_ = CardinalityTable(BINARY, self.m)
        self.s2_ = self.config_.s2
        self.frame_length_ = self.config_.frame_length
        return self

    def transform(self, X):
        check_is_fitted(self, "config_")
        return encode_stream(X, self.config_, self.table_)

    def inverse_transform(self, X):
        check_is_fitted(self, "config_")
        return decode_stream(X, self.config_, self.table_, strict=self.strict)

    def rate(self) -> float:
        """Coded-page rate in message bits per written bit."""
        check_is_fitted(self, "config_")
        return self.s2_ / self.frame_length_
