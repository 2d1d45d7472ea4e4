"""2D positional scheme for the left-most page.

Positions are free or forced by their residues mod 4: wordlines 0,1 (mod 4)
are free at cell positions 0,1 (mod 4), wordlines 2,3 (mod 4) are free at
positions 2,3 (mod 4), and every other position holds a 1.  Any three
consecutive cells along a row or a column then have a forced 1 at one end,
so neither 000 nor 010 can appear in either direction.  Origin is the
top-left cell.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_bits, check_positive_int
from .exceptions import ConfigError, IntegrityError

__all__ = ["Mask2D", "free_mask", "encode_2d", "decode_2d", "TwoDimensionalRRCodec"]


def free_mask(rows: int, cols: int) -> np.ndarray:
    i = np.arange(rows)[:, None] % 4 < 2
    j = np.arange(cols)[None, :] % 4 < 2
    return i == j


@dataclass(frozen=True)
class Mask2D:
    rows: int
    cols: int

    def free(self, i: int, j: int) -> bool:
        return (i % 4 < 2) == (j % 4 < 2)

    @property
    def array(self) -> np.ndarray:
        return free_mask(self.rows, self.cols)

    @property
    def n_free(self) -> int:
        return int(self.array.sum())


def encode_2d(message, rows: int, cols: int) -> np.ndarray:
    """Place message bits row-major on free positions; forced positions get 1."""
    rows = check_positive_int(rows, "rows")
    cols = check_positive_int(cols, "cols")
    msg = check_bits(message, "message")
    mask = free_mask(rows, cols)
    if msg.size != mask.sum():
        raise ConfigError(f"a {rows}x{cols} plane takes {int(mask.sum())} message bits, got {msg.size}")
    plane = np.ones((rows, cols), dtype=np.uint8)
    plane[mask] = msg
    return plane


def decode_2d(plane, check: bool = True) -> np.ndarray:
    """Read free positions row-major.  A forced 0 raises IntegrityError unless ``check`` is off."""
    p = np.asarray(plane)
    if p.ndim != 2:
        raise ValueError("plane must be two-dimensional")
    p = p.astype(np.uint8)
    mask = free_mask(*p.shape)
    if check:
        bad = np.argwhere(~mask & (p == 0))
        if bad.size:
            i, j = (int(v) for v in bad[0])
            raise IntegrityError(f"forced position ({i}, {j}) holds 0", position=(i, j))
    return p[mask]


class TwoDimensionalRRCodec(TransformerMixin, BaseEstimator):
    """Transformer wrapper: message bits -> ``rows x cols`` page plane."""

    def __init__(self, rows: int = 4, cols: int = 4, check: bool = True):
        self.rows = rows
        self.cols = cols
        self.check = check

    def fit(self, X=None, y=None):
        self.mask_ = Mask2D(check_positive_int(self.rows, "rows"), check_positive_int(self.cols, "cols"))
        self.n_free_ = self.mask_.n_free
        return self

    def transform(self, X):
        check_is_fitted(self, "mask_")
        return encode_2d(X, self.rows, self.cols)

    def inverse_transform(self, X):
        check_is_fitted(self, "mask_")
        p = np.asarray(X)
        if p.shape != (self.rows, self.cols):
            raise ValueError(f"expected a {self.rows}x{self.cols} plane, got {p.shape}")
        return decode_2d(p, check=self.check)

    def rate(self) -> float:
        check_is_fitted(self, "mask_")
        return self.n_free_ / (self.rows * self.cols)
