"""Capacities, finite-length rates, complexity and error-propagation figures.

Rates and error-propagation factors of the finite-length schemes are exact
rationals (``Fraction``); only capacities, which involve logarithms of
spectral radii, are floats.  Exact values are rounded half-up for display;
capacities are rounded as floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cardinality import BINARY, QUATERNARY, CardinalityTable, adder_size
from .constraints import R2, R4, ForbiddenSet
from .mapping import check_level_count

__all__ = [
    "RLL01_2D_CAPACITY",
    "RLL01_1D_REDUNDANCY",
    "GOLDEN_RATIO",
    "SCHEMES",
    "AdjacencyMatrix",
    "build_A1",
    "build_A2",
    "spectral_radius",
    "perron_vectors",
    "characteristic_polynomial",
    "constraint_graph",
    "CapacityRecord",
    "capacities",
    "SchemeMetrics",
    "scheme_metrics",
    "min_length_for_rate",
    "maxentropic_symbol_probabilities",
    "level_probabilities",
    "round_half_up",
    "render_table",
    "format_table",
]

# Known capacity of the 2D (0,1)-RLL constraint; taken as a constant, not computed here.
RLL01_2D_CAPACITY = 0.5879
GOLDEN_RATIO = (1 + math.sqrt(5)) / 2
# 1 - log2(golden ratio), as printed to 4 decimals
RLL01_1D_REDUNDANCY = 0.3058

SCHEMES = ("bin2d", "bin1d", "quat1d", "uncoded")


@dataclass(frozen=True)
class AdjacencyMatrix:
    matrix: np.ndarray
    labels: tuple[str, ...] = field(default=())

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


def build_A1(q: int) -> AdjacencyMatrix:
    """FSTD adjacency matrix for sequences avoiding the full level set, block by block.

    States, in order: ``low`` (last level in the lower half, no pending
    peak), ``h`` for each upper-half level with nothing pending, ``low*``
    (lower-half level right after a higher upper-half one: the next level
    must stay low), and ``h*`` for upper-half levels ``q/2 .. q-2`` reached
    by stepping down from a higher upper-half level.
    """
    q = check_level_count(q)
    h = q // 2
    n = q + 1
    a = np.zeros((n, n), dtype=np.int64)
    r_low, r_hi, r_lowb, r_hib = 0, 1, 1 + h, 2 + h  # block offsets
    # row block 1
    a[r_low, r_low] = h
    a[r_low, r_hi : r_hi + h] = 1
    # row block 2: upper-triangular ones, q/2 to low*, lower-triangular ones into h*
    a[r_hi : r_hi + h, r_hi : r_hi + h] = np.triu(np.ones((h, h), dtype=np.int64))
    a[r_hi : r_hi + h, r_lowb] = h
    if h > 1:
        a[r_hi + 1 : r_hi + h, r_hib : r_hib + h - 1] = np.tril(np.ones((h - 1, h - 1), dtype=np.int64))
    # row block 3
    a[r_lowb, r_low] = h
    # row block 4: identity into h, q/2 to low*, shifted lower-triangular ones into h*
    if h > 1:
        a[r_hib : r_hib + h - 1, r_hi : r_hi + h - 1] = np.eye(h - 1, dtype=np.int64)
        a[r_hib : r_hib + h - 1, r_lowb] = h
        if h > 2:
            a[r_hib + 1 : r_hib + h - 1, r_hib : r_hib + h - 2] = np.tril(
                np.ones((h - 2, h - 2), dtype=np.int64)
            )
    labels = (
        ("low",)
        + tuple(str(v) for v in range(h, q))
        + ("low*",)
        + tuple(f"{v}*" for v in range(h, q - 1))
    )
    return AdjacencyMatrix(a, labels)


_A2 = np.array(
    [
        [2, 1, 1, 0, 0, 0],
        [0, 1, 1, 2, 0, 0],
        [0, 0, 0, 2, 1, 1],
        [2, 0, 0, 0, 0, 0],
        [0, 1, 0, 2, 0, 0],
        [0, 0, 0, 2, 1, 0],
    ],
    dtype=np.int64,
)


def build_A2() -> AdjacencyMatrix:
    """The fixed 6-state adjacency matrix of the 4-ary constraint."""
    return AdjacencyMatrix(_A2.copy(), tuple(f"s{k}" for k in range(6)))


def _as_matrix(a) -> np.ndarray:
    m = a.matrix if isinstance(a, AdjacencyMatrix) else np.asarray(a)
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("adjacency matrix must be square")
    if (m < 0).any():
        raise ValueError("adjacency matrix must be nonnegative")
    return m


def _power_iteration(m: np.ndarray, tol: float, max_iter: int) -> tuple[float, np.ndarray]:
    v = np.ones(m.shape[0]) / m.shape[0]
    lam = 0.0
    for _ in range(max_iter):
        w = m @ v
        s = w.sum()
        if s == 0:
            return 0.0, v
        new = s / v.sum()
        w /= s
        if abs(new - lam) <= tol * new and np.abs(w - v).max() <= tol:
            return new, w
        lam, v = new, w
    raise ArithmeticError(f"power iteration did not converge in {max_iter} iterations")


def spectral_radius(a, tol: float = 1e-12, max_iter: int = 100_000) -> float:
    """Dominant eigenvalue by power iteration from the all-ones vector."""
    return _power_iteration(_as_matrix(a), tol, max_iter)[0]


def perron_vectors(a, tol: float = 1e-12, max_iter: int = 100_000):
    """(lambda, right vector, left vector), vectors normalised to unit sum."""
    m = _as_matrix(a)
    lam, r = _power_iteration(m, tol, max_iter)
    _, l = _power_iteration(m.T, tol, max_iter)
    return lam, r, l


def characteristic_polynomial(a) -> list[int]:
    """Exact integer coefficients of det(xI - A), leading first (Faddeev-LeVerrier)."""
    m = a.matrix if isinstance(a, AdjacencyMatrix) else a
    rows = [[int(v) for v in row] for row in np.asarray(m)]
    n = len(rows)
    coeffs = [1]
    mk = [[0] * n for _ in range(n)]  # M_0 = 0
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        am = [[sum(rows[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c_prev = coeffs[-1]
        mk = [[am[i][j] + (c_prev if i == j else 0) for j in range(n)] for i in range(n)]
        amk = [[sum(rows[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        trace = sum(amk[i][i] for i in range(n))
        ck, rem = divmod(-trace, k)
        assert rem == 0
        coeffs.append(ck)
    return coeffs


def constraint_graph(alphabet: int, forbidden: ForbiddenSet) -> np.ndarray:
    """Adjacency matrix on (previous, current) symbol states for a length-3 constraint."""
    n = alphabet * alphabet
    a = np.zeros((n, n))
    for x in range(alphabet):
        for y in range(alphabet):
            for z in range(alphabet):
                if (x, y, z) not in forbidden.patterns:
                    a[x * alphabet + y, y * alphabet + z] = 1
    return a


@dataclass(frozen=True)
class CapacityRecord:
    q: int
    C1D_Lq: float
    C2D_RR2: float
    C1D_RR2: float
    C1D_RR4: float
    gap_percent: float


def capacities(q: int, tabulated: bool = False) -> CapacityRecord:
    """Normalised capacities of the unconstrained-page schemes and the 1D ceiling.

    ``tabulated=True`` follows the 4-decimal conventions of the capacity
    comparison table: the binary RR capacity comes from the redundancy
    constant ``0.3058`` and the gap from capacities already rounded to 4
    decimals.  The default uses the golden ratio and unrounded values.
    """
    q = check_level_count(q)
    p = math.log2(q)
    c_lq = math.log2(spectral_radius(build_A1(q))) / p
    c_2d = (RLL01_2D_CAPACITY + p - 1) / p
    c_rr4 = (math.log2(spectral_radius(build_A2())) + p - 2) / p
    if tabulated:
        c_rr2 = (p - RLL01_1D_REDUNDANCY) / p
        lq, rr2 = Fraction(f"{c_lq:.4f}"), Fraction(f"{c_rr2:.4f}")
        gap = float((lq - rr2) / lq * 100)
    else:
        c_rr2 = (math.log2(GOLDEN_RATIO) + p - 1) / p
        gap = (c_lq - c_rr2) / c_lq * 100
    return CapacityRecord(q, c_lq, c_2d, c_rr2, c_rr4, gap)


@dataclass(frozen=True)
class SchemeMetrics:
    scheme: str
    q: int
    m: int | None
    rate: Fraction
    adder_size: int
    error_propagation: Fraction
    coded_data: int | None

    @property
    def rate_float(self) -> float:
        return float(self.rate)

    def as_record(self) -> dict:
        return {
            "scheme": self.scheme,
            "q": self.q,
            "m": self.m,
            "rate": float(self.rate),
            "adder_size": self.adder_size,
            "error_propagation": float(self.error_propagation),
            "coded_data": self.coded_data,
        }


def _log2q(q: int) -> int:
    return check_level_count(q).bit_length() - 1


def scheme_metrics(scheme: str, q: int, m: int | None = None, table: CardinalityTable | None = None) -> SchemeMetrics:
    """Normalised rate, adder size, error propagation and coded-data amount."""
    p = _log2q(q)
    if scheme == "uncoded":
        return SchemeMetrics(scheme, q, None, Fraction(1), 0, Fraction(1), None)
    if scheme == "bin2d":
        return SchemeMetrics(scheme, q, m, Fraction(2 * p - 1, 2 * p), 0, Fraction(1), None)
    if m is None or m < 1:
        raise ValueError(f"scheme {scheme} needs a codeword length m >= 1")
    if scheme == "bin1d":
        s = adder_size(BINARY, m, table if table is not None and table.kind == BINARY else None)
        rate = (Fraction(s, m + 2) + p - 1) / p
        err = (Fraction(s, 2) + p - 1) / p
    elif scheme == "quat1d":
        if q < 8:
            raise ValueError("the 4-ary scheme needs q >= 8")
        s = adder_size(QUATERNARY, m, table if table is not None and table.kind == QUATERNARY else None)
        rate = (Fraction(s + 2, m + 2) + p - 2) / p
        err = (Fraction(s * m + 4, m + 2) + p - 2) / p
    else:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    return SchemeMetrics(scheme, q, m, rate, s, err, (m + 2) * p)


def _asymptotic_capacity(scheme: str, q: int) -> float:
    c = capacities(q)
    return {"bin1d": c.C1D_RR2, "quat1d": c.C1D_RR4}[scheme]


def min_length_for_rate(scheme: str, q: int, target_rate, max_m: int = 100_000):
    """Smallest m whose normalised rate reaches ``target_rate``; None if unachievable.

    ``target_rate`` is converted through its decimal string, so 0.875 means
    exactly 7/8.
    """
    if scheme not in ("bin1d", "quat1d"):
        raise ValueError("minimum length is defined for the 1D LOCO schemes only")
    target = Fraction(str(target_rate)) if not isinstance(target_rate, Fraction) else target_rate
    if not 0 < target < 1:
        raise ValueError("target rate must lie in (0, 1)")
    if float(target) >= _asymptotic_capacity(scheme, q):
        return None
    kind = BINARY if scheme == "bin1d" else QUATERNARY
    table = CardinalityTable(kind, 64)
    for m in range(1, max_m + 1):
        met = scheme_metrics(scheme, q, m, table)
        if met.rate >= target:
            return m, met
    return None  # pragma: no cover - only reachable with a target a hair below capacity


def maxentropic_symbol_probabilities(alphabet: int, forbidden: ForbiddenSet) -> np.ndarray:
    """Symbol frequencies of the maximum-entropy Markov chain on the constraint graph."""
    a = constraint_graph(alphabet, forbidden)
    _, r, l = perron_vectors(a)
    pi = l * r
    pi /= pi.sum()
    return pi.reshape(alphabet, alphabet).sum(axis=0)


def level_probabilities(scheme: str, q: int) -> np.ndarray:
    """Per-level probabilities: band probability spread evenly over the band's levels."""
    q = check_level_count(q)
    if scheme == "uncoded":
        return np.full(q, 1.0 / q)
    if scheme in ("bin1d", "bin2d"):
        if scheme == "bin2d":
            raise ValueError("level probabilities are modelled for the 1D schemes and uncoded data")
        p0, p1 = maxentropic_symbol_probabilities(2, R2)
        h = q // 2
        return np.concatenate([np.full(h, p1 / h), np.full(h, p0 / h)])
    if scheme == "quat1d":
        if q < 8:
            raise ValueError("the 4-ary scheme needs q >= 8")
        ps = maxentropic_symbol_probabilities(4, R4)
        k = q // 4
        return np.concatenate([np.full(k, ps[s] / k) for s in range(4)])
    raise ValueError(f"unknown scheme {scheme!r}")


def round_half_up(x, places: int) -> float:
    """Round an exact or float value half-up to ``places`` decimals."""
    fx = x if isinstance(x, Fraction) else Fraction(x)
    scale = 10 ** places
    return math.floor(fx * scale + Fraction(1, 2)) / scale


TABLE2_ROWS = [(q, m) for q in (4, 8, 16) for m in (7, 11, 21)]
TABLE3_ROWS = [
    (8, "0.8500"), (8, "0.8750"), (8, "0.8900"), (8, "0.9000"),
    (16, "0.8900"), (16, "0.9050"), (16, "0.9150"), (16, "0.9200"), (16, "0.9300"),
]


def _table1() -> list[dict]:
    rows = []
    for q in (4, 8, 16, 32):
        c = capacities(q, tabulated=True)
        rows.append(
            {
                "q": q,
                "C1D_Lq": round(c.C1D_Lq, 4),
                "C1D_RR2": round(c.C1D_RR2, 4),
                "gap_percent": round_half_up(Fraction(str(c.gap_percent)), 3),
                "C1D_RR4": round(c.C1D_RR4, 4),
            }
        )
    return rows


def _table2() -> list[dict]:
    rows = []
    for q, m in TABLE2_ROWS:
        two = scheme_metrics("bin2d", q, m)
        one = scheme_metrics("bin1d", q, m)
        rows.append(
            {
                "q": q,
                "m": m,
                "R2D_RR2": round_half_up(two.rate, 4),
                "R1D_RR2": round_half_up(one.rate, 4),
                "s2": one.adder_size,
                "E2D_RR2": round_half_up(two.error_propagation, 3),
                "E1D_RR2": round_half_up(one.error_propagation, 3),
            }
        )
    return rows


def _table3() -> list[dict]:
    rows = []
    for q, rate in TABLE3_ROWS:
        b = min_length_for_rate("bin1d", q, rate)
        f = min_length_for_rate("quat1d", q, rate)
        bm = b[1] if b else None
        fm = f[1] if f else None
        rows.append(
            {
                "q": q,
                "rate": float(rate),
                "D1D_RR2": bm.coded_data if bm else None,
                "D1D_RR4": fm.coded_data if fm else None,
                "s2": bm.adder_size if bm else None,
                "s4": fm.adder_size if fm else None,
                "E1D_RR2": round_half_up(bm.error_propagation, 3) if bm else None,
                "E1D_RR4": round_half_up(fm.error_propagation, 3) if fm else None,
            }
        )
    return rows


_PRECISION = {
    "C1D_Lq": 4, "C1D_RR2": 4, "C1D_RR4": 4, "gap_percent": 3,
    "R2D_RR2": 4, "R1D_RR2": 4, "E2D_RR2": 3, "E1D_RR2": 3, "E1D_RR4": 3, "rate": 4,
}


def render_table(which: int) -> list[dict]:
    """Regenerate one of the three comparison tables as a list of row dicts."""
    builders = {1: _table1, 2: _table2, 3: _table3}
    if which not in builders:
        raise ValueError("table must be 1, 2 or 3")
    return builders[which]()


def _cell(key: str, value) -> str:
    if value is None:
        return "-"
    if key in _PRECISION:
        s = f"{value:.{_PRECISION[key]}f}"
        return s + "%" if key == "gap_percent" else s
    return str(value)


def format_table(rows: Sequence[dict], fmt: str = "text") -> str:
    """Aligned text, or ``records``: one ``key=value`` line per row."""
    if not rows:
        return ""
    keys = list(rows[0])
    if fmt == "records":
        return "\n".join(" ".join(f"{k}={_cell(k, r[k])}" for k in keys) for r in rows)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    cells = [[_cell(k, r[k]) for k in keys] for r in rows]
    widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
    lines = ["  ".join(k.rjust(w) for k, w in zip(keys, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)
