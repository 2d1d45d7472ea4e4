"""Block assembly: payload bits -> per-page streams -> level grid, and back.

A block is ``rows`` wordlines by ``cols`` cells.  Only the left-most page
(or the two left-most pages for ``quat1d``) is constrained; every other page
carries raw payload bits.  Payload order is fixed:

* coded stream first, lane by lane (a lane is a row for ``wordline``, a
  column for ``bitline``);
* then each uncoded page, highest index first, row-major.

``rotate=k`` cyclically shifts which uncoded page receives which payload
segment.  Reading a page never looks at any other page's plane, apart from
the coded pair of ``quat1d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_bits, check_grid, check_positive_int
from .capacity import SCHEMES, level_probabilities
from .codec_binary import BinaryFrameConfig, decode_stream, encode_stream
from .codec_quaternary import QuaternaryFrameConfig, decode_stream4, encode_stream4
from .constraints import full_level_set, relaxed_level_set
from .exceptions import ConfigError, ConstraintViolationError, FramingError, IndexRangeError, IntegrityError
from .mapping import GF4_ALPHA, GF4_ALPHA2, GF4_ONE, GF4_ZERO, build_gray_map, check_level_count
from .scheme_2d import decode_2d, encode_2d, free_mask

__all__ = [
    "DIRECTIONS",
    "BlockConfig",
    "BlockReadout",
    "BlockStats",
    "IndirectProtection",
    "capacity_bits",
    "random_payload",
    "split_planes",
    "combine_planes",
    "write_block",
    "read_block",
    "measure_stats",
    "indirect_protection_report",
    "RRBlockCoder",
]

DIRECTIONS = ("wordline", "bitline")
_ORTHOGONAL = {"wordline": "bitline", "bitline": "wordline"}

# GF(4) symbol -> (page p-1 bit, page p-2 bit), as arrays for vectorised use
_SYM_HI = np.zeros(4, dtype=np.uint8)
_SYM_LO = np.zeros(4, dtype=np.uint8)
for _s, (_hi, _lo) in {GF4_ZERO: (1, 1), GF4_ONE: (1, 0), GF4_ALPHA: (0, 0), GF4_ALPHA2: (0, 1)}.items():
    _SYM_HI[_s], _SYM_LO[_s] = _hi, _lo
_PAIR_SYM = np.zeros((2, 2), dtype=np.uint8)
_PAIR_SYM[_SYM_HI, _SYM_LO] = np.arange(4)


@dataclass(frozen=True)
class BlockConfig:
    q: int = 8
    rows: int = 4
    cols: int = 36
    scheme: str = "bin1d"
    direction: str = "wordline"
    m: int | None = 34
    complemented: bool = False
    rotate: int = 0

    def __post_init__(self):
        try:
            check_level_count(self.q)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        check_positive_int(self.rows, "rows")
        check_positive_int(self.cols, "cols")
        check_positive_int(self.rotate, "rotate", minimum=0)
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}; expected one of {SCHEMES}")
        if self.direction not in DIRECTIONS:
            raise ConfigError(f"unknown direction {self.direction!r}")
        if self.complemented and self.scheme != "bin1d":
            raise ConfigError("the complemented variant applies to bin1d only")
        if self.scheme == "quat1d" and self.q < 8:
            raise ConfigError("quat1d needs q >= 8")
        if self.coded_1d:
            check_positive_int(self.m, "m")
            if self.lane_length % (self.m + 2):
                raise ConfigError(
                    f"{self.direction} lanes hold {self.lane_length} cells, not a multiple of m+2={self.m + 2}"
                )
            object.__setattr__(self, "_frame_cfg", self._make_frame_cfg())  # validates m

    def _make_frame_cfg(self):
        if self.scheme == "bin1d":
            return BinaryFrameConfig(self.m, complemented=self.complemented)
        return QuaternaryFrameConfig(self.m)

    @property
    def p(self) -> int:
        return self.q.bit_length() - 1

    @property
    def cells(self) -> int:
        return self.rows * self.cols

    @property
    def coded_1d(self) -> bool:
        return self.scheme in ("bin1d", "quat1d")

    @property
    def lane_length(self) -> int:
        return self.cols if self.direction == "wordline" else self.rows

    @property
    def n_lanes(self) -> int:
        return self.rows if self.direction == "wordline" else self.cols

    @property
    def frames_per_lane(self) -> int:
        return self.lane_length // (self.m + 2) if self.coded_1d else 0

    @property
    def frame_config(self):
        return getattr(self, "_frame_cfg", None)

    @property
    def coded_pages(self) -> tuple[int, ...]:
        p = self.p
        return {"uncoded": (), "bin1d": (p - 1,), "bin2d": (p - 1,), "quat1d": (p - 1, p - 2)}[self.scheme]

    @property
    def uncoded_pages(self) -> tuple[int, ...]:
        """Uncoded pages in payload-segment order, after rotation."""
        base = [k for k in range(self.p - 1, -1, -1) if k not in self.coded_pages]
        if not base:
            return ()
        r = self.rotate % len(base)
        return tuple(base[r:] + base[:r])

    @property
    def coded_bits(self) -> int:
        if self.scheme == "uncoded":
            return 0
        if self.scheme == "bin2d":
            return int(free_mask(self.rows, self.cols).sum())
        per_frame = self._frame_cfg.s2 if self.scheme == "bin1d" else self._frame_cfg.frame_bits
        return self.n_lanes * self.frames_per_lane * per_frame


def capacity_bits(cfg: BlockConfig) -> int:
    """Exact number of payload bits one block stores."""
    return cfg.coded_bits + len(cfg.uncoded_pages) * cfg.cells


def random_payload(cfg: BlockConfig, rng) -> np.ndarray:
    """Uniform payload of exactly one block; ``rng`` is a seed or a numpy Generator."""
    gen = np.random.default_rng(rng)
    return gen.integers(0, 2, capacity_bits(cfg), dtype=np.uint8)


def _lanes_to_plane(lanes: np.ndarray, cfg: BlockConfig) -> np.ndarray:
    """``(n_lanes, lane_length)`` -> ``(rows, cols)``."""
    return lanes if cfg.direction == "wordline" else lanes.T


def _plane_to_lanes(plane: np.ndarray, cfg: BlockConfig) -> np.ndarray:
    return plane if cfg.direction == "wordline" else plane.T


def combine_planes(planes: dict[int, np.ndarray], q: int) -> np.ndarray:
    """Per-page bit planes -> level grid through the Gray map."""
    gmap = build_gray_map(q)
    inverse = np.empty(q, dtype=np.int64)
    inverse[list(gmap.words)] = np.arange(q)
    word = np.zeros_like(next(iter(planes.values())), dtype=np.int64)
    for k in range(gmap.p):
        word |= planes[k].astype(np.int64) << k
    return inverse[word]


def split_planes(grid, q: int) -> dict[int, np.ndarray]:
    """Level grid -> ``{page: bit plane}``; each plane depends only on its own page bit."""
    g = check_grid(grid, q)
    lookup = build_gray_map(q).page_lookup()
    return {k: lookup[k][g] for k in range(lookup.shape[0])}


def write_block(payload, cfg: BlockConfig) -> np.ndarray:
    """Encode one block of payload bits into a ``rows x cols`` level grid."""
    bits = check_bits(payload, "payload")
    need = capacity_bits(cfg)
    if bits.size != need:
        raise ConfigError(f"block takes exactly {need} payload bits, got {bits.size}")
    planes: dict[int, np.ndarray] = {}
    coded, rest = bits[: cfg.coded_bits], bits[cfg.coded_bits :]
    top = cfg.p - 1
    if cfg.scheme == "bin2d":
        planes[top] = encode_2d(coded, cfg.rows, cfg.cols)
    elif cfg.coded_1d:
        lanes = coded.reshape(cfg.n_lanes, -1)
        if cfg.scheme == "bin1d":
            out = np.stack([encode_stream(lane, cfg.frame_config) for lane in lanes])
            planes[top] = _lanes_to_plane(out, cfg)
        else:
            syms = _lanes_to_plane(np.stack([encode_stream4(lane, cfg.frame_config) for lane in lanes]), cfg)
            planes[top], planes[top - 1] = _SYM_HI[syms], _SYM_LO[syms]
    for seg, k in enumerate(cfg.uncoded_pages):
        planes[k] = rest[seg * cfg.cells : (seg + 1) * cfg.cells].reshape(cfg.rows, cfg.cols)
    return combine_planes(planes, cfg.q)


def _locate(exc, page, lane):
    """Re-raise a codec error annotated with page and lane."""
    cls = type(exc)
    msg = f"page {page}, lane {lane}: {exc}"
    if cls in (FramingError, ConstraintViolationError, IndexRangeError):
        return cls(msg, frame=getattr(exc, "frame", None), lane=lane)
    return cls(msg)  # pragma: no cover


def _decode_lanes(decode, lanes, frame_cfg, strict, page):
    out = []
    for lane_no, lane in enumerate(lanes):
        try:
            out.append(decode(lane, frame_cfg, strict=strict))
        except (FramingError, ConstraintViolationError, IndexRangeError) as exc:
            raise _locate(exc, page, lane_no) from None
    return np.concatenate(out) if out else np.zeros(0, dtype=np.uint8)


@dataclass
class BlockReadout:
    """Decoded page streams keyed by page index (a tuple for the quat1d pair)."""

    pages: dict
    payload: np.ndarray | None = None


def _read_coded(planes, cfg: BlockConfig, strict: bool) -> np.ndarray:
    top = cfg.p - 1
    if cfg.scheme == "bin2d":
        try:
            return decode_2d(planes[top], check=strict)
        except IntegrityError as exc:
            raise IntegrityError(f"page {top}: {exc}", position=exc.position) from None
    if cfg.scheme == "bin1d":
        lanes = _plane_to_lanes(planes[top], cfg)
        return _decode_lanes(decode_stream, lanes, cfg.frame_config, strict, top)
    syms = _plane_to_lanes(_PAIR_SYM[planes[top], planes[top - 1]], cfg)
    return _decode_lanes(decode_stream4, syms, cfg.frame_config, strict, (top, top - 1))


def read_block(grid, cfg: BlockConfig, strict: bool = True, pages=None) -> BlockReadout:
    """Decode a level grid page by page.

    ``pages`` restricts decoding to the listed page keys; the reassembled
    payload is only returned when every page was decoded.
    """
    g = check_grid(grid, cfg.q)
    if g.shape != (cfg.rows, cfg.cols):
        raise ConfigError(f"grid is {g.shape[0]}x{g.shape[1]}, config expects {cfg.rows}x{cfg.cols}")
    planes = split_planes(g, cfg.q)
    coded_key = None
    if cfg.coded_pages:
        coded_key = cfg.coded_pages if len(cfg.coded_pages) > 1 else cfg.coded_pages[0]
    keys = ([coded_key] if coded_key is not None else []) + list(cfg.uncoded_pages)
    wanted = keys if pages is None else [k if not isinstance(k, list) else tuple(k) for k in pages]
    unknown = [k for k in wanted if k not in keys]
    if unknown:
        raise ConfigError(f"no such page keys {unknown}; available {keys}")
    out = {}
    for key in wanted:
        if key == coded_key:
            out[key] = _read_coded(planes, cfg, strict)
        else:
            out[key] = planes[key].reshape(-1).copy()
    payload = np.concatenate([out[k] for k in keys]) if len(out) == len(keys) else None
    return BlockReadout(out, payload)


@dataclass
class BlockStats:
    """Integer counts; :meth:`merge` is associative so shards combine exactly."""

    q: int
    scheme: str
    level_counts: np.ndarray
    triples: dict = field(default_factory=dict)  # (set name, direction) -> [hits, windows]
    payload_bits: int = 0
    raw_bits: int = 0

    @property
    def cells(self) -> int:
        return int(self.level_counts.sum())

    @property
    def level_frequencies(self) -> np.ndarray:
        return self.level_counts / max(self.cells, 1)

    @property
    def payload_ratio(self) -> Fraction:
        return Fraction(self.payload_bits, self.raw_bits) if self.raw_bits else Fraction(0)

    @property
    def deltas(self) -> np.ndarray | None:
        """Empirical minus model level probabilities (None where no model exists)."""
        try:
            model = level_probabilities(self.scheme, self.q)
        except ValueError:
            return None
        return self.level_frequencies - model

    def triple_rate(self, name: str, direction: str) -> float:
        hits, total = self.triples[(name, direction)]
        return hits / total if total else 0.0

    def merge(self, other: "BlockStats") -> "BlockStats":
        if (self.q, self.scheme) != (other.q, other.scheme):
            raise ValueError("can only merge statistics of the same q and scheme")
        triples = {k: [a + b for a, b in zip(v, other.triples.get(k, (0, 0)))] for k, v in self.triples.items()}
        for k, v in other.triples.items():
            triples.setdefault(k, list(v))
        return BlockStats(
            self.q,
            self.scheme,
            self.level_counts + other.level_counts,
            triples,
            self.payload_bits + other.payload_bits,
            self.raw_bits + other.raw_bits,
        )

    def as_record(self) -> dict:
        d = self.deltas
        return {
            "q": self.q,
            "scheme": self.scheme,
            "cells": self.cells,
            "level_frequencies": [round(float(v), 6) for v in self.level_frequencies],
            "deltas": None if d is None else [round(float(v), 6) for v in d],
            "triples": {f"{n}/{dr}": list(v) for (n, dr), v in sorted(self.triples.items())},
            "payload_ratio": str(self.payload_ratio),
        }


def _level_sets(q: int):
    sets = [full_level_set(q)]
    if q >= 8:
        sets.append(relaxed_level_set(q))
    return sets


def _count(g: np.ndarray, cube: np.ndarray, direction: str) -> list[int]:
    if direction == "wordline":
        if g.shape[1] < 3:
            return [0, 0]
        hits = cube[g[:, :-2], g[:, 1:-1], g[:, 2:]]
    else:
        if g.shape[0] < 3:
            return [0, 0]
        hits = cube[g[:-2], g[1:-1], g[2:]]
    return [int(hits.sum()), int(hits.size)]


def measure_stats(grid, cfg: BlockConfig) -> BlockStats:
    """Level counts and forbidden-triple counts for the full and relaxed sets."""
    g = check_grid(grid, cfg.q)
    counts = np.bincount(g.reshape(-1), minlength=cfg.q).astype(np.int64)
    triples = {}
    for fset in _level_sets(cfg.q):
        for d in DIRECTIONS:
            triples[(fset.name, d)] = _count(g, fset.cube, d)
    return BlockStats(cfg.q, cfg.scheme, counts, triples, capacity_bits(cfg), cfg.cells * cfg.p)


@dataclass(frozen=True)
class IndirectProtection:
    q: int
    direction: str
    hits: int
    windows: int
    uniform_expectation: float  # forbidden fraction under i.i.d. uniform levels
    baseline_hits: int | None = None
    baseline_windows: int | None = None

    @property
    def rate_per_million(self) -> float:
        return 1e6 * self.hits / self.windows if self.windows else 0.0

    @property
    def uniform_per_million(self) -> float:
        return 1e6 * self.uniform_expectation

    @property
    def baseline_per_million(self) -> float | None:
        if not self.baseline_windows:
            return None
        return 1e6 * self.baseline_hits / self.baseline_windows

    def as_record(self) -> dict:
        return {
            "q": self.q,
            "direction": self.direction,
            "hits": self.hits,
            "windows": self.windows,
            "rate_per_million": round(self.rate_per_million, 3),
            "uniform_per_million": round(self.uniform_per_million, 3),
            "baseline_per_million": None
            if self.baseline_per_million is None
            else round(self.baseline_per_million, 3),
        }


def indirect_protection_report(grid, cfg: BlockConfig, baseline=None) -> IndirectProtection:
    """Full-set triple rate across the lanes of a 1D-coded block.

    ``baseline`` may be an uncoded grid of the same ``q`` to compare against
    empirically; the i.i.d. uniform expectation is always reported.
    """
    if not cfg.coded_1d:
        raise ConfigError("indirect protection is defined for the 1D schemes")
    g = check_grid(grid, cfg.q)
    fset = full_level_set(cfg.q)
    direction = _ORTHOGONAL[cfg.direction]
    hits, windows = _count(g, fset.cube, direction)
    bh = bw = None
    if baseline is not None:
        bh, bw = _count(check_grid(baseline, cfg.q), fset.cube, direction)
    return IndirectProtection(cfg.q, direction, hits, windows, len(fset) / cfg.q**3, bh, bw)


class RRBlockCoder(TransformerMixin, BaseEstimator):
    """Whole-block coder: payload bits -> level grid and back.

    Parameters mirror :class:`BlockConfig`; ``strict=False`` makes
    ``inverse_transform`` decode without raising on damaged data.
    """

    def __init__(
        self,
        q: int = 8,
        rows: int = 4,
        cols: int = 36,
        scheme: str = "bin1d",
        direction: str = "wordline",
        m: int | None = 34,
        complemented: bool = False,
        rotate: int = 0,
        strict: bool = True,
    ):
        self.q = q
        self.rows = rows
        self.cols = cols
        self.scheme = scheme
        self.direction = direction
        self.m = m
        self.complemented = complemented
        self.rotate = rotate
        self.strict = strict

    def fit(self, X=None, y=None):
        self.config_ = BlockConfig(
            self.q, self.rows, self.cols, self.scheme, self.direction, self.m, bool(self.complemented), self.rotate
        )
        self.capacity_bits_ = capacity_bits(self.config_)
        return self

    def transform(self, X):
        check_is_fitted(self, "config_")
        return write_block(X, self.config_)

    def inverse_transform(self, X):
        check_is_fitted(self, "config_")
        return read_block(X, self.config_, strict=self.strict).payload

    def rate(self) -> Fraction:
        """Payload bits per raw page bit, exactly."""
        check_is_fitted(self, "config_")
        return Fraction(self.capacity_bits_, self.config_.cells * self.config_.p)
