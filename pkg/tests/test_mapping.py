import pytest
from hypothesis import given
from hypothesis import strategies as st

from rrcode.mapping import (
    binary_band,
    build_gray_map,
    check_level_count,
    gf4_band,
    gf4_to_pair,
    level_to_pages,
    pages_to_level,
    pair_to_gf4,
)

QS = [4, 8, 16, 32, 64]


def test_q8_table():
    words = build_gray_map(8).words
    assert [f"{w:03b}" for w in words] == ["111", "110", "100", "101", "001", "000", "010", "011"]


@pytest.mark.parametrize("q", QS)
def test_gray_structure(q):
    g = build_gray_map(q)
    assert g.words[0] == q - 1
    assert sorted(g.words) == list(range(q))
    for a, b in zip(g.words, g.words[1:]):
        assert bin(a ^ b).count("1") == 1


@pytest.mark.parametrize("q", QS)
def test_left_page_splits_halves(q):
    g = build_gray_map(q)
    top = g.p - 1
    for lvl, w in enumerate(g.words):
        assert (w >> top) & 1 == (1 if lvl < q // 2 else 0)
    assert list(binary_band(1, q)) == list(range(q // 2))
    assert list(binary_band(0, q)) == list(range(q // 2, q))


@pytest.mark.parametrize("q", [8, 16, 32])
def test_gf4_bands_follow_two_left_bits(q):
    g = build_gray_map(q)
    for s in range(4):
        for lvl in gf4_band(s, q):
            bits = level_to_pages(lvl, g)
            assert pair_to_gf4(bits[0], bits[1]) == s


def test_gf4_pairs():
    assert [gf4_to_pair(s) for s in range(4)] == [(1, 1), (1, 0), (0, 0), (0, 1)]
    assert all(pair_to_gf4(*gf4_to_pair(s)) == s for s in range(4))


@given(st.sampled_from(QS), st.data())
def test_pages_roundtrip(q, data):
    g = build_gray_map(q)
    lvl = data.draw(st.integers(0, q - 1))
    assert pages_to_level(level_to_pages(lvl, g), g) == lvl


def test_table_and_lookup_agree():
    g = build_gray_map(16)
    tab = g.table
    lut = g.page_lookup()
    for lvl in range(16):
        for k in range(g.p):
            assert tab[lvl, g.p - 1 - k] == lut[k, lvl]


@pytest.mark.parametrize("bad", [0, 1, 2, 3, 6, 12, -4])
def test_rejects_bad_q(bad):
    with pytest.raises(ValueError):
        check_level_count(bad)


def test_pages_to_level_length():
    with pytest.raises(ValueError):
        pages_to_level([1, 1], build_gray_map(8))
