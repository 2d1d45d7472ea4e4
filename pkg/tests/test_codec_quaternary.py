import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sklearn.base import clone

from rrcode.cardinality import QUATERNARY, CardinalityTable
from rrcode.codec_quaternary import (
    QuaternaryFrameConfig,
    QuaternaryRRLocoCodec,
    codeword_of4,
    decode_frames4,
    decode_stream4,
    encode_stream4,
    index_of4,
    merging_flags,
)
from rrcode.constraints import R4, is_admissible
from rrcode.exceptions import ConfigError, ConstraintViolationError, FramingError
from rrcode.oracle import enumerate_codebook

TABLE = CardinalityTable(QUATERNARY, 128)


@pytest.mark.parametrize("m", range(1, 8))
def test_index_is_codebook_rank(m):
    for pos, w in enumerate(enumerate_codebook(4, m, R4).words):
        assert index_of4(w, TABLE) == pos
        assert tuple(codeword_of4(pos, m, TABLE)) == w


def test_small_examples():
    assert index_of4([2, 3]) == 11
    assert index_of4([3, 3, 2]) == 53
    assert index_of4([0] * 5) == 0
    assert index_of4([3] * 2) == 15


def test_flags_exclusive():
    for prev in (None, 0, 1, 2, 3):
        for a in range(1, 4):
            f = merging_flags(prev, a)
            assert f.y1 + f.y1p + f.y2 + f.y3 + f.yd == 1


@pytest.mark.parametrize("m", [34, 64, 100])
def test_long_roundtrip(m):
    rng = np.random.default_rng(m)
    n = TABLE.count(m)
    for _ in range(100):
        g = int(rng.integers(0, 2**62)) * n // 2**62
        cw = codeword_of4(g, m, TABLE)
        assert is_admissible(cw, R4)
        assert index_of4(cw, TABLE) == g


def test_frame_parameters():
    cfg = QuaternaryFrameConfig(10)
    assert cfg.s4 == 18 and cfg.frame_bits == 20 and cfg.frame_length == 12
    assert cfg.reserved == (0, 117052)
    assert cfg.reserved[1] == index_of4([1] * 10)


def test_reserved_skip_is_bijective():
    cfg = QuaternaryFrameConfig(6)
    used = [cfg.message_to_index(u) for u in range(1 << cfg.s4)]
    assert len(set(used)) == len(used)
    assert not set(used) & set(cfg.reserved)
    assert used == sorted(used)
    assert [cfg.index_to_message(g) for g in used] == list(range(1 << cfg.s4))
    with pytest.raises(ConstraintViolationError):
        cfg.index_to_message(cfg.reserved[1])


@given(st.integers(3, 24), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_stream_roundtrip_and_constraint(m, frames, seed):
    cfg = QuaternaryFrameConfig(m)
    msg = np.random.default_rng(seed).integers(0, 2, cfg.frame_bits * frames)
    out = encode_stream4(msg, cfg)
    assert out.size == frames * (m + 2) and out.max() <= 3
    assert is_admissible(out.tolist(), R4)
    body = out.reshape(frames, m + 2)[:, :m]
    assert not any(list(r) in ([0] * m, [1] * m) for r in body.tolist())
    assert (decode_stream4(out, cfg) == msg).all()


def test_decoder_errors():
    cfg = QuaternaryFrameConfig(10)
    out = encode_stream4(np.zeros(40, dtype=np.uint8), cfg)
    bad = out.copy()
    bad[12 + 10] = 2
    with pytest.raises(FramingError) as ei:
        decode_stream4(bad, cfg)
    assert ei.value.frame == 1
    bad = out.copy()
    bad[:10] = 1
    with pytest.raises(ConstraintViolationError):
        decode_stream4(bad, cfg)
    bad = out.copy()
    bad[:3] = [2, 0, 2]
    with pytest.raises(ConstraintViolationError):
        decode_stream4(bad, cfg)
    vals, bridges = decode_frames4(np.full(24, 3, dtype=np.uint8), cfg, strict=False)
    assert len(vals) == 2 and bridges.shape == (2, 2)


def test_config_validation():
    with pytest.raises(ConfigError):
        QuaternaryFrameConfig(10, s4=19)
    with pytest.raises(ConfigError):
        encode_stream4([0] * 19, QuaternaryFrameConfig(10))


def test_estimator_api():
    est = clone(QuaternaryRRLocoCodec(m=10)).fit()
    assert est.s4_ == 18 and est.rate() == 20 / 12
    msg = np.random.default_rng(1).integers(0, 2, 60)
    assert (est.inverse_transform(est.transform(msg)) == msg).all()
