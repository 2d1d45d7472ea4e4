from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rrcode.cardinality import BINARY, QUATERNARY, CardinalityTable, adder_size, build_table, cardinality
from rrcode.constraints import R2, R4
from rrcode.oracle import count_level_sequences, enumerate_codebook


@pytest.mark.parametrize("m", range(1, 13))
def test_binary_matches_enumeration(m):
    assert CardinalityTable(BINARY, 12).count(m) == len(enumerate_codebook(2, m, R2))


@pytest.mark.parametrize("m", range(1, 9))
def test_quaternary_matches_enumeration(m):
    assert CardinalityTable(QUATERNARY, 9).count(m) == len(enumerate_codebook(4, m, R4))


@pytest.mark.parametrize("m", range(1, 30))
def test_binary_matches_pair_state_count(m):
    assert CardinalityTable(BINARY, 30).count(m) == count_level_sequences(2, m, R2)


@pytest.mark.parametrize("m", range(1, 20))
def test_quaternary_matches_pair_state_count(m):
    assert CardinalityTable(QUATERNARY, 20).count(m) == count_level_sequences(4, m, R4)


def test_known_values():
    b = build_table(BINARY, 40)
    assert [b.count(m) for m in range(1, 8)] == [2, 4, 6, 9, 15, 25, 40]
    assert b.count(11) == 273
    q = build_table(QUATERNARY, 10)
    assert [q.count(m) for m in range(1, 5)] == [4, 16, 54, 177]


def test_seeds_exact():
    q = CardinalityTable(QUATERNARY, 2)
    assert [q[m] for m in range(-5, 3)] == [
        Fraction(1, 32), Fraction(-1, 16), 0, Fraction(1, 4), Fraction(1, 2), 1, 4, 16
    ]
    b = CardinalityTable(BINARY, 1)
    assert [b[m] for m in range(-3, 2)] == [0, 1, 1, 1, 2]


def test_big_values_exact():
    t = CardinalityTable(BINARY, 400)
    a, b, c, d = t.count(399), t.count(397), t.count(396), t.count(400)
    assert d == a + b + c and d.bit_length() > 100


@given(st.integers(3, 300))
def test_quaternary_integral_and_increasing(m):
    t = CardinalityTable(QUATERNARY, m)
    assert t[m].denominator == 1
    assert t.count(m) > t.count(m - 1)


@pytest.mark.parametrize(
    "kind,m,s", [(BINARY, 7, 5), (BINARY, 11, 8), (BINARY, 21, 15), (BINARY, 34, 24), (QUATERNARY, 10, 18)]
)
def test_adder_size(kind, m, s):
    assert adder_size(kind, m) == s


def test_out_of_range():
    t = build_table(BINARY, 5)
    with pytest.raises(IndexError):
        t[-4]
    with pytest.raises(IndexError):
        cardinality(t, 9)
    with pytest.raises(ValueError):
        CardinalityTable("ternary")


def test_auto_extend_and_dump():
    t = CardinalityTable(BINARY, 3)
    assert t[10] == 169 and t.max_m == 10
    assert t.dump(start=1).splitlines()[:3] == ["1\t2", "2\t4", "3\t6"]
