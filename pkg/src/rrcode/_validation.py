"""Input checking and bit-array plumbing shared by the codecs."""

from __future__ import annotations

import numpy as np

from .exceptions import ConfigError


def check_bits(x, name: str = "bits") -> np.ndarray:
    """Coerce to a flat uint8 array of 0/1 values."""
    if isinstance(x, (bytes, bytearray, str)):
        raise TypeError(f"{name}: pass a sequence of 0/1 integers, not {type(x).__name__}")
    arr = np.asarray(x)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size and arr.dtype.kind not in "biu":
        raise TypeError(f"{name} must hold integers, got dtype {arr.dtype}")
    if arr.size and ((arr < 0) | (arr > 1)).any():
        raise ValueError(f"{name} must contain only 0 and 1")
    return arr.astype(np.uint8, copy=False)


def check_symbols(x, alphabet: int, name: str = "symbols") -> np.ndarray:
    arr = np.asarray(x)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size and arr.dtype.kind not in "biu":
        raise TypeError(f"{name} must hold integers, got dtype {arr.dtype}")
    if arr.size and ((arr < 0) | (arr >= alphabet)).any():
        raise ValueError(f"{name} must lie in [0, {alphabet - 1}]")
    return arr.astype(np.uint8, copy=False)


def check_grid(x, q: int, name: str = "grid") -> np.ndarray:
    arr = np.asarray(x)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be two-dimensional, got shape {arr.shape}")
    if arr.size and arr.dtype.kind not in "biu":
        raise TypeError(f"{name} must hold integers, got dtype {arr.dtype}")
    if arr.size and ((arr < 0) | (arr >= q)).any():
        raise ValueError(f"{name} entries must lie in [0, {q - 1}]")
    return arr.astype(np.int64, copy=False)


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def rows_to_ints(bits: np.ndarray) -> list[int]:
    """Interpret each row of a 2D 0/1 array as a big-endian unsigned integer."""
    n, width = bits.shape
    if width == 0:
        return [0] * n
    pad = (-width) % 8
    if pad:
        bits = np.concatenate([np.zeros((n, pad), dtype=np.uint8), bits], axis=1)
    packed = np.packbits(bits, axis=1)
    return [int.from_bytes(row.tobytes(), "big") for row in packed]


def ints_to_rows(values, width: int) -> np.ndarray:
    """Inverse of :func:`rows_to_ints`; values must fit in ``width`` bits."""
    values = list(values)
    if width == 0:
        return np.zeros((len(values), 0), dtype=np.uint8)
    nbytes = (width + 7) // 8
    buf = b"".join(int(v).to_bytes(nbytes, "big") for v in values)
    bits = np.unpackbits(np.frombuffer(buf, dtype=np.uint8)).reshape(len(values), nbytes * 8)
    return bits[:, nbytes * 8 - width :]


def pack_bits(bits) -> bytes:
    """MSB-first packing; a final partial byte is zero-padded."""
    return np.packbits(check_bits(bits)).tobytes()


def unpack_bits(data: bytes, nbits: int | None = None) -> np.ndarray:
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    if nbits is not None:
        if nbits > bits.size:
            raise ValueError(f"need {nbits} bits but only {bits.size} available")
        bits = bits[:nbits]
    return bits
