from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rrcode.constraints import R2, count_violations
from rrcode.exceptions import ConfigError, IntegrityError
from rrcode.scheme_2d import Mask2D, TwoDimensionalRRCodec, decode_2d, encode_2d, free_mask


def test_mask_pattern():
    m = free_mask(4, 8).astype(int)
    assert m.tolist() == [
        [1, 1, 0, 0, 1, 1, 0, 0],
        [1, 1, 0, 0, 1, 1, 0, 0],
        [0, 0, 1, 1, 0, 0, 1, 1],
        [0, 0, 1, 1, 0, 0, 1, 1],
    ]
    mk = Mask2D(4, 8)
    assert mk.n_free == 16
    assert all(mk.free(i, j) == bool(m[i, j]) for i, j in product(range(4), range(8)))


def test_every_window_has_forced_end():
    m = free_mask(12, 12)
    for i in range(12):
        for j in range(10):
            assert not m[i, j] or not m[i, j + 2]
            assert not m[j, i] or not m[j + 2, i]


@given(st.integers(1, 20), st.integers(1, 20), st.integers(0, 2**32 - 1))
def test_roundtrip_and_constraint(rows, cols, seed):
    n = int(free_mask(rows, cols).sum())
    msg = np.random.default_rng(seed).integers(0, 2, n)
    plane = encode_2d(msg, rows, cols)
    assert (decode_2d(plane) == msg).all()
    for d in ("wordline", "bitline"):
        assert count_violations(plane, R2, d)[0] == 0


def test_forced_zero_reported():
    plane = encode_2d(np.zeros(8, dtype=np.uint8), 4, 4)
    plane[1, 2] = 0
    with pytest.raises(IntegrityError) as ei:
        decode_2d(plane)
    assert ei.value.position == (1, 2)
    assert decode_2d(plane, check=False).size == 8


def test_size_mismatch():
    with pytest.raises(ConfigError):
        encode_2d([1, 0], 4, 4)


def test_estimator():
    est = TwoDimensionalRRCodec(rows=8, cols=8).fit()
    assert est.rate() == 0.5
    msg = np.arange(32) % 2
    assert (est.inverse_transform(est.transform(msg)) == msg).all()
    with pytest.raises(ValueError):
        est.inverse_transform(np.ones((4, 4)))
