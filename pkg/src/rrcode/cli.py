"""``rrcode`` command line.

Exit status: 0 success, 1 usage error, 2 data or constraint error.
``--format records`` prints one ``key=value`` line per item.
Random payloads use numpy's PCG64 generator seeded with ``--seed``; the seed
is echoed in the output.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .capacity import (
    SCHEMES,
    capacities,
    format_table,
    level_probabilities,
    min_length_for_rate,
    render_table,
    scheme_metrics,
)
from .cardinality import BINARY, QUATERNARY, CardinalityTable
from .codec_binary import BinaryFrameConfig, decode_stream, encode_stream
from .codec_quaternary import QuaternaryFrameConfig, decode_stream4, encode_stream4
from .exceptions import RRCodeError
from .formats import PayloadHeader, dump_grid, dump_payload, load_grid, load_payload
from .mapping import build_gray_map
from .pipeline import BlockConfig, measure_stats, random_payload, read_block, write_block
from .verification import run_checks

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(rows, fmt, out):
    out.write(format_table(rows, fmt) + "\n")


def _records(items: dict, fmt, out):
    if fmt == "records":
        out.write(" ".join(f"{k}={v}" for k, v in items.items()) + "\n")
    else:
        width = max(len(k) for k in items)
        out.write("".join(f"{k.ljust(width)}  {v}\n" for k, v in items.items()))


def _read_bytes(path):
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write_bytes(path, data: bytes):
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _read_text(path):
    return _read_bytes(path).decode("ascii")


# stream codec -----------------------------------------------------------------


def _stream_cfg(scheme, m, complemented):
    if scheme == "bin1d":
        return BinaryFrameConfig(m, complemented=complemented)
    if complemented:
        raise UsageError("--complemented applies to bin1d only")
    return QuaternaryFrameConfig(m)


def cmd_encode(a, out):
    cfg = _stream_cfg(a.scheme, a.m, a.complemented)
    data = _read_bytes(a.input)
    msg = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    chunk = cfg.s2 if a.scheme == "bin1d" else cfg.frame_bits
    msg = np.concatenate([msg, np.zeros((-msg.size) % chunk, dtype=np.uint8)])
    if a.scheme == "bin1d":
        coded = encode_stream(msg, cfg)
    else:
        syms = encode_stream4(msg, cfg)
        coded = np.stack([syms >> 1, syms & 1], axis=1).reshape(-1)  # symbol value as 2 bits
    extra = (("msg", str(len(data) * 8)),) + ((("complemented", "1"),) if a.complemented else ())
    header = PayloadHeader(a.scheme, 2 if a.scheme == "bin1d" else 4, a.m, "stream", coded.size, extra)
    _write_bytes(a.output, dump_payload(coded, header))
    return EXIT_OK


def cmd_decode(a, out):
    bits, header = load_payload(_read_bytes(a.input))
    extra = dict(header.extra)
    if header.scheme not in ("bin1d", "quat1d") or header.m is None:
        raise RRCodeError(f"container holds scheme {header.scheme!r}, not a stream code")
    cfg = _stream_cfg(header.scheme, header.m, extra.get("complemented") == "1")
    strict = not a.lenient
    if header.scheme == "bin1d":
        msg = decode_stream(bits, cfg, strict=strict)
    else:
        if bits.size % 2:
            raise RRCodeError("4-ary stream must hold an even number of bits")
        pairs = bits.reshape(-1, 2)
        msg = decode_stream4((pairs[:, 0] << 1) | pairs[:, 1], cfg, strict=strict)
    n = int(extra.get("msg", msg.size - msg.size % 8))
    _write_bytes(a.output, np.packbits(msg[:n]).tobytes())
    return EXIT_OK


# block pipeline ---------------------------------------------------------------


def _block_cfg(a) -> BlockConfig:
    return BlockConfig(a.q, a.rows, a.cols, a.scheme, a.direction, a.m, a.complemented, a.rotate)


def cmd_block_write(a, out):
    cfg = _block_cfg(a)
    if a.input is not None:
        bits, _ = load_payload(_read_bytes(a.input))
    else:
        bits = random_payload(cfg, a.seed)
        if a.payload_out:
            header = PayloadHeader(cfg.scheme, cfg.q, cfg.m, cfg.direction, bits.size, (("seed", str(a.seed)),))
            _write_bytes(a.payload_out, dump_payload(bits, header))
    grid = write_block(bits, cfg)
    _write_bytes(a.output, dump_grid(grid, cfg.q).encode("ascii"))
    return EXIT_OK


def cmd_block_read(a, out):
    grid, q = load_grid(_read_text(a.grid))
    if q != a.q:
        raise RRCodeError(f"grid file has q={q}, --q is {a.q}")
    cfg = _block_cfg(a)
    payload = read_block(grid, cfg, strict=not a.lenient).payload
    header = PayloadHeader(cfg.scheme, cfg.q, cfg.m, cfg.direction, payload.size)
    _write_bytes(a.output, dump_payload(payload, header))
    return EXIT_OK


def cmd_stats(a, out):
    if a.grid is not None:
        grid, q = load_grid(_read_text(a.grid))
        if q != a.q:
            raise RRCodeError(f"grid file has q={q}, --q is {a.q}")
        a.rows = grid.shape[0] if a.rows is None else a.rows
        a.cols = grid.shape[1] if a.cols is None else a.cols
        cfg = _block_cfg(a)
        source = f"file:{a.grid}"
    else:
        if a.rows is None or a.cols is None:
            raise UsageError("stats without --grid needs --rows and --cols")
        cfg = _block_cfg(a)
        grid = write_block(random_payload(cfg, a.seed), cfg)
        source = f"pcg64 seed={a.seed}"
    st = measure_stats(grid, cfg)
    deltas = st.deltas
    if a.format == "records":
        rec = st.as_record()
        out.write(f"source={source.replace(' ', ',')} cells={st.cells} payload_ratio={rec['payload_ratio']}\n")
        for lvl, f in enumerate(st.level_frequencies):
            d = "-" if deltas is None else f"{deltas[lvl]:+.6f}"
            out.write(f"level={lvl} count={int(st.level_counts[lvl])} frequency={f:.6f} delta={d}\n")
        for (name, direction), (hits, total) in sorted(st.triples.items()):
            out.write(f"set={name} direction={direction} hits={hits} windows={total}\n")
        return EXIT_OK
    out.write(f"source         {source}\ncells          {st.cells}\npayload/raw    {st.payload_ratio}"
              f" = {float(st.payload_ratio):.6f}\n")
    out.write("level  count  frequency  delta\n")
    for lvl, f in enumerate(st.level_frequencies):
        d = "-" if deltas is None else f"{deltas[lvl]:+.4f}"
        out.write(f"{lvl:5d}  {int(st.level_counts[lvl]):5d}  {f:9.4f}  {d}\n")
    for (name, direction), (hits, total) in sorted(st.triples.items()):
        out.write(f"{name:<4} {direction:<8}  {hits} / {total}\n")
    return EXIT_OK


# tables and metrics -----------------------------------------------------------


def cmd_capacity(a, out):
    c = capacities(a.q)
    _records(
        {
            "q": c.q,
            "C1D_Lq": f"{c.C1D_Lq:.6f}",
            "C2D_RR2": f"{c.C2D_RR2:.6f}",
            "C1D_RR2": f"{c.C1D_RR2:.6f}",
            "C1D_RR4": f"{c.C1D_RR4:.6f}",
            "gap_percent": f"{c.gap_percent:.3f}",
        },
        a.format,
        out,
    )
    return EXIT_OK


def cmd_table(a, out):
    _emit(render_table(a.which), a.format, out)
    return EXIT_OK


def _metric_items(met):
    return {
        "scheme": met.scheme,
        "q": met.q,
        "m": "-" if met.m is None else met.m,
        "rate": f"{met.rate} = {float(met.rate):.6f}",
        "adder_size": met.adder_size,
        "error_propagation": f"{met.error_propagation} = {float(met.error_propagation):.6f}",
        "coded_data": "-" if met.coded_data is None else met.coded_data,
    }


def cmd_metrics(a, out):
    items = _metric_items(scheme_metrics(a.scheme, a.q, a.m))
    if a.format == "records":
        items = {k: str(v).split(" = ")[0] if k in ("rate", "error_propagation") else v for k, v in items.items()}
    _records(items, a.format, out)
    return EXIT_OK


def cmd_minlen(a, out):
    res = min_length_for_rate(a.scheme, a.q, a.rate)
    if res is None:
        _records({"scheme": a.scheme, "q": a.q, "rate": a.rate, "result": "unachievable"}, a.format, out)
        return EXIT_OK
    m, met = res
    _records(
        {
            "scheme": a.scheme,
            "q": a.q,
            "rate": a.rate,
            "m": m,
            "D": met.coded_data,
            "s": met.adder_size,
            "E": f"{float(met.error_propagation):.3f}",
            "achieved": f"{float(met.rate):.6f}",
        },
        a.format,
        out,
    )
    return EXIT_OK


def cmd_probs(a, out):
    probs = level_probabilities(a.scheme, a.q)
    _emit([{"level": i, "probability": f"{v:.4f}"} for i, v in enumerate(probs)], a.format, out)
    return EXIT_OK


def cmd_graymap(a, out):
    g = build_gray_map(a.q)
    rows = [{"level": lvl, "pages": f"{w:0{g.p}b}"} for lvl, w in enumerate(g.words)]
    _emit(rows, a.format, out)
    return EXIT_OK


def cmd_cardinality(a, out):
    kind = BINARY if a.kind == "binary" else QUATERNARY
    t = CardinalityTable(kind, a.max_m)
    rows = [{"m": m, "N": str(v)} for m, v in t.items() if m >= a.min_m]
    _emit(rows, a.format, out)
    return EXIT_OK


def cmd_verify(a, out):
    results = run_checks(deep=a.deep)
    for r in results:
        status = "ok" if r.ok else "FAIL"
        if a.format == "records":
            out.write(f"check={r.name.replace(' ', '_')} status={status} detail={r.detail!r}\n")
        else:
            out.write(f"{status:4}  {r.name:<20} {r.detail}\n")
    return EXIT_OK if all(r.ok for r in results) else EXIT_DATA


# parser -----------------------------------------------------------------------


def _rate(text):
    try:
        Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rate: {text!r}") from None
    return text


def _block_args(p, shape_required=True):
    p.add_argument("--q", type=int, default=8)
    p.add_argument("--rows", type=int, required=shape_required)
    p.add_argument("--cols", type=int, required=shape_required)
    p.add_argument("--scheme", choices=SCHEMES, required=True)
    p.add_argument("--direction", choices=("wordline", "bitline"), default="wordline")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--complemented", action="store_true")
    p.add_argument("--rotate", type=int, default=0, help="cyclic shift of uncoded page streams")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "records"), default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="rrcode", description="Read-and-run constrained coding for multi-level flash.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.set_defaults(func=fn)
        return p

    p = add("encode", cmd_encode, "frame a byte file with a stream code")
    p.add_argument("--scheme", choices=("bin1d", "quat1d"), default="bin1d")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--complemented", action="store_true")
    p.add_argument("input")
    p.add_argument("output")

    p = add("decode", cmd_decode, "invert encode")
    p.add_argument("--lenient", action="store_true", help="decode damaged frames without raising")
    p.add_argument("input")
    p.add_argument("output")

    p = add("block-write", cmd_block_write, "payload container -> level grid file")
    _block_args(p)
    p.add_argument("--input", help="RRPL payload; omit to draw a random one from --seed")
    p.add_argument("--payload-out", help="save the random payload here")
    p.add_argument("--output", required=True)

    p = add("block-read", cmd_block_read, "level grid file -> payload container")
    _block_args(p)
    p.add_argument("--grid", required=True)
    p.add_argument("--lenient", action="store_true")
    p.add_argument("--output", required=True)

    p = add("stats", cmd_stats, "level and pattern statistics of a grid")
    _block_args(p, shape_required=False)
    p.add_argument("--grid", help="RRLG file; omit to write a random block from --seed")

    p = add("capacity", cmd_capacity, "normalised capacities for q levels")
    p.add_argument("--q", type=int, required=True)

    p = add("table", cmd_table, "regenerate a comparison table")
    p.add_argument("--which", type=int, choices=(1, 2, 3), required=True)

    p = add("metrics", cmd_metrics, "rate, adder size and error propagation of one scheme")
    p.add_argument("--scheme", choices=SCHEMES, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, default=None)

    p = add("minlen", cmd_minlen, "shortest codeword reaching a target rate")
    p.add_argument("--scheme", choices=("bin1d", "quat1d"), required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--rate", type=_rate, required=True)

    p = add("probs", cmd_probs, "model level probabilities")
    p.add_argument("--scheme", choices=("uncoded", "bin1d", "quat1d"), required=True)
    p.add_argument("--q", type=int, required=True)

    p = add("graymap", cmd_graymap, "print the level -> page-bit table")
    p.add_argument("--q", type=int, required=True)

    p = add("cardinality", cmd_cardinality, "print a cardinality table")
    p.add_argument("--kind", choices=("binary", "quaternary"), default="binary")
    p.add_argument("--max-m", type=int, default=20)
    p.add_argument("--min-m", type=int, default=1)

    p = add("verify", cmd_verify, "check closed forms against brute force")
    p.add_argument("--deep", action="store_true", help="wider exhaustive ranges")
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (RRCodeError, ValueError, OSError) as exc:
        print(f"rrcode: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
