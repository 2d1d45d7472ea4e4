"""Self-check suite: closed-form machinery against brute-force references."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .capacity import build_A1, build_A2, characteristic_polynomial, spectral_radius
from .cardinality import BINARY, QUATERNARY, CardinalityTable
from .codec_binary import codeword_of, index_of
from .codec_quaternary import codeword_of4, index_of4
from .constraints import R2, R4, full_level_set
from .mapping import build_gray_map, gf4_to_pair, pair_to_gf4
from .oracle import enumerate_codebook, pair_state_matrix

__all__ = ["CheckResult", "run_checks"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float


def _cardinality(kind, alphabet, fset, max_m):
    table = CardinalityTable(kind, max_m)
    bad = [m for m in range(1, max_m + 1) if table.count(m) != len(enumerate_codebook(alphabet, m, fset))]
    return not bad, f"m=1..{max_m}" + (f", mismatch at {bad}" if bad else "")


def _index_rule(alphabet, fset, max_m, index, inverse, kind):
    table = CardinalityTable(kind, max_m)
    checked = 0
    for m in range(1, max_m + 1):
        for pos, w in enumerate(enumerate_codebook(alphabet, m, fset).words):
            if index(w, table) != pos or tuple(inverse(pos, m, table)) != w:
                return False, f"m={m}, word {w}"
            checked += 1
    return True, f"{checked} codewords, m=1..{max_m}"


def _gray(q):
    g = build_gray_map(q)
    ws = g.words
    steps = all(bin(a ^ b).count("1") == 1 for a, b in zip(ws, ws[1:]))
    return steps and len(set(ws)) == q and ws[0] == q - 1, f"q={q}"


def _gf4():
    ok = all(pair_to_gf4(*gf4_to_pair(s)) == s for s in range(4))
    return ok, "pair <-> symbol"


def _spectral(qs):
    poly_ok = characteristic_polynomial(build_A2().matrix) == [1, -3, 2, -9, -7, -6, -4]
    lam = spectral_radius(build_A2().matrix)
    worst = 0.0
    for q in qs:
        a1 = spectral_radius(build_A1(q).matrix)
        ref = max(abs(np.linalg.eigvals(pair_state_matrix(q, full_level_set(q)))))
        worst = max(worst, abs(a1 - ref))
    ok = poly_ok and abs(lam - 3.4147) < 1e-4 and worst < 1e-9
    return ok, f"lambda(A2)={lam:.8f}, char poly {'ok' if poly_ok else 'BAD'}, A1 vs pair-state {worst:.1e}"


def run_checks(deep: bool = False) -> list[CheckResult]:
    """Run the suite; ``deep`` widens every exhaustive range."""
    b_m, q_m = (12, 9) if deep else (10, 7)
    bi_m, qi_m = (12, 8) if deep else (10, 6)
    qs = (4, 8, 16) if deep else (4, 8)
    checks = [
        ("gray map q=8", lambda: _gray(8)),
        ("gray map q=16", lambda: _gray(16)),
        ("gf4 pairing", _gf4),
        ("binary cardinality", lambda: _cardinality(BINARY, 2, R2, b_m)),
        ("4-ary cardinality", lambda: _cardinality(QUATERNARY, 4, R4, q_m)),
        ("binary index rule", lambda: _index_rule(2, R2, bi_m, index_of, codeword_of, BINARY)),
        ("4-ary index rule", lambda: _index_rule(4, R4, qi_m, index_of4, codeword_of4, QUATERNARY)),
        ("spectral", lambda: _spectral(qs)),
    ]
    out = []
    for name, fn in checks:
        t = time.perf_counter()
        ok, detail = fn()
        out.append(CheckResult(name, bool(ok), detail, time.perf_counter() - t))
    return out
