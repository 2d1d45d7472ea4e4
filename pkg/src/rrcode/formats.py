"""Text-headed file formats for level grids and payload containers.

Level grid (``RRLG``)::

    RRLG 1 q=8 rows=2 cols=3
    0 7 3
    1 1 4

Payload container (``RRPL``): one ASCII header line, then the packed bits,
most significant bit first, with ``pad`` zero bits at the end::

    RRPL 1 scheme=bin1d q=8 m=34 dir=wordline bits=1234 pad=6

Extra ``key=value`` fields after ``pad`` are kept verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import check_bits, check_grid, pack_bits, unpack_bits
from .exceptions import RRCodeError

__all__ = [
    "FORMAT_VERSION",
    "FormatError",
    "PayloadHeader",
    "dump_grid",
    "load_grid",
    "dump_payload",
    "load_payload",
]

FORMAT_VERSION = 1


class FormatError(RRCodeError):
    """Malformed grid or payload file."""


def _parse_fields(tokens, magic: str, required) -> dict:
    if not tokens or tokens[0] != magic:
        raise FormatError(f"missing {magic} magic")
    if len(tokens) < 2 or tokens[1] != str(FORMAT_VERSION):
        raise FormatError(f"unsupported {magic} version {tokens[1] if len(tokens) > 1 else '?'}")
    fields = {}
    for tok in tokens[2:]:
        key, sep, val = tok.partition("=")
        if not sep:
            raise FormatError(f"bad header field {tok!r}")
        fields[key] = val
    missing = [k for k in required if k not in fields]
    if missing:
        raise FormatError(f"{magic} header lacks {', '.join(missing)}")
    return fields


def _int_field(fields, key) -> int:
    try:
        return int(fields[key])
    except ValueError:
        raise FormatError(f"header field {key}={fields[key]!r} is not an integer") from None


def dump_grid(grid, q: int) -> str:
    g = check_grid(grid, q)
    lines = [f"RRLG {FORMAT_VERSION} q={q} rows={g.shape[0]} cols={g.shape[1]}"]
    lines += [" ".join(map(str, row)) for row in g.tolist()]
    return "\n".join(lines) + "\n"


def load_grid(text: str) -> tuple[np.ndarray, int]:
    """Parse an ``RRLG`` document; returns ``(grid, q)``."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty grid file")
    fields = _parse_fields(lines[0].split(), "RRLG", ("q", "rows", "cols"))
    q, rows, cols = (_int_field(fields, k) for k in ("q", "rows", "cols"))
    body = lines[1:]
    if len(body) != rows:
        raise FormatError(f"header says {rows} rows, found {len(body)}")
    try:
        grid = np.array([[int(v) for v in ln.split()] for ln in body], dtype=np.int64).reshape(rows, cols)
    except ValueError as exc:
        raise FormatError(f"bad grid body: {exc}") from None
    try:
        return check_grid(grid, q), q
    except ValueError as exc:
        raise FormatError(str(exc)) from None


@dataclass(frozen=True)
class PayloadHeader:
    scheme: str
    q: int
    m: int | None
    direction: str
    bits: int
    extra: tuple[tuple[str, str], ...] = ()

    @property
    def pad(self) -> int:
        return (-self.bits) % 8

    def line(self) -> str:
        m = "-" if self.m is None else self.m
        return (
            f"RRPL {FORMAT_VERSION} scheme={self.scheme} q={self.q} m={m} "
            f"dir={self.direction} bits={self.bits} pad={self.pad}"
            + "".join(f" {k}={v}" for k, v in self.extra)
        )


def dump_payload(bits, header: PayloadHeader) -> bytes:
    b = check_bits(bits, "payload")
    if b.size != header.bits:
        raise ValueError(f"header declares {header.bits} bits, got {b.size}")
    return header.line().encode("ascii") + b"\n" + pack_bits(b)


def load_payload(data: bytes) -> tuple[np.ndarray, PayloadHeader]:
    head, sep, body = data.partition(b"\n")
    if not sep:
        raise FormatError("payload container has no header line")
    try:
        tokens = head.decode("ascii").split()
    except UnicodeDecodeError:
        raise FormatError("payload header is not ASCII") from None
    fields = _parse_fields(tokens, "RRPL", ("scheme", "q", "m", "dir", "bits", "pad"))
    nbits, pad = _int_field(fields, "bits"), _int_field(fields, "pad")
    if pad != (-nbits) % 8 or len(body) * 8 != nbits + pad:
        raise FormatError(f"body holds {len(body) * 8} bits, header says bits={nbits} pad={pad}")
    m = None if fields["m"] == "-" else _int_field(fields, "m")
    known = ("scheme", "q", "m", "dir", "bits", "pad")
    extra = tuple((k, v) for k, v in fields.items() if k not in known)
    header = PayloadHeader(fields["scheme"], _int_field(fields, "q"), m, fields["dir"], nbits, extra)
    return unpack_bits(body, nbits), header
