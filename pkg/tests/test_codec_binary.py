import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from rrcode.cardinality import BINARY, CardinalityTable
from rrcode.codec_binary import (
    BinaryFrameConfig,
    BinaryRRLocoCodec,
    codeword_of,
    decode_frames,
    decode_stream,
    encode_stream,
    index_of,
    index_of_complemented,
)
from rrcode.constraints import R2, R2_COMPLEMENTED, is_admissible
from rrcode.exceptions import ConfigError, ConstraintViolationError, FramingError, IndexRangeError
from rrcode.oracle import enumerate_codebook

TABLE = CardinalityTable(BINARY, 128)


@pytest.mark.parametrize("m", range(1, 12))
def test_index_is_codebook_rank(m):
    for pos, w in enumerate(enumerate_codebook(2, m, R2).words):
        assert index_of(w, TABLE) == pos
        assert tuple(codeword_of(pos, m, TABLE)) == w


def test_m4_examples():
    assert index_of([0, 0, 1, 1]) == 0
    assert index_of([1, 1, 1, 1]) == 8
    cfg = BinaryFrameConfig(4)
    assert cfg.s2 == 3
    assert encode_stream([1, 0, 1], cfg).tolist() == [1, 1, 0, 0, 1, 1]


@pytest.mark.parametrize("m", range(2, 11))
def test_complemented_rule(m):
    n = TABLE.count(m)
    words = enumerate_codebook(2, m, R2_COMPLEMENTED).words
    for pos, w in enumerate(words):
        assert index_of_complemented(w, TABLE) == pos
        flipped = [1 - b for b in w]
        assert index_of_complemented(w, TABLE) == n - 1 - index_of(flipped, TABLE)


@pytest.mark.parametrize("m", [34, 64, 100])
def test_long_roundtrip(m):
    rng = np.random.default_rng(m)
    n = TABLE.count(m)
    for _ in range(200):
        g = int(rng.integers(0, 2**62)) * n // 2**62
        cw = codeword_of(g, m, TABLE)
        assert is_admissible(cw, R2)
        assert index_of(cw, TABLE) == g
    assert index_of(codeword_of(n - 1, m, TABLE), TABLE) == n - 1


@given(st.integers(4, 40), st.data())
def test_stream_roundtrip_and_constraint(m, data):
    cfg = BinaryFrameConfig(m)
    frames = data.draw(st.integers(1, 6))
    msg = np.array(data.draw(st.lists(st.integers(0, 1), min_size=cfg.s2 * frames, max_size=cfg.s2 * frames)))
    out = encode_stream(msg, cfg)
    assert out.size == frames * (m + 2)
    assert is_admissible(out.tolist(), R2)
    assert (decode_stream(out, cfg) == msg).all()


@given(st.integers(4, 30), st.integers(0, 2**32 - 1))
def test_complemented_stream(m, seed):
    cfg = BinaryFrameConfig(m, complemented=True)
    msg = np.random.default_rng(seed).integers(0, 2, cfg.s2 * 3)
    out = encode_stream(msg, cfg)
    assert is_admissible(out.tolist(), R2_COMPLEMENTED)
    assert (decode_stream(out, cfg) == msg).all()


def test_all_ones_never_emitted():
    cfg = BinaryFrameConfig(11)
    top = codeword_of((1 << cfg.s2) - 1, 11)
    assert top != [1] * 11


def test_decoder_errors_locate_frame():
    cfg = BinaryFrameConfig(11)
    out = encode_stream(np.zeros(cfg.s2 * 3, dtype=np.uint8), cfg)
    bad = out.copy()
    bad[13 + 12] = 0  # bridge of frame 1
    with pytest.raises(FramingError) as ei:
        decode_stream(bad, cfg)
    assert ei.value.frame == 1
    bad = out.copy()
    bad[26:29] = 0  # 000 at the start of frame 2
    with pytest.raises(ConstraintViolationError) as ei:
        decode_stream(bad, cfg)
    assert ei.value.frame == 2
    big = np.array(codeword_of(TABLE.count(11) - 1, 11) + [1, 1])
    with pytest.raises(IndexRangeError):
        decode_stream(big, cfg)
    with pytest.raises(FramingError):
        decode_stream(out[:-1], cfg)


def test_lenient_decoding_never_raises():
    cfg = BinaryFrameConfig(11)
    junk = np.zeros(26, dtype=np.uint8)
    vals = decode_frames(junk, cfg, strict=False)
    assert len(vals) == 2 and all(0 <= v < 2**cfg.s2 for v in vals)


def test_config_validation():
    with pytest.raises(ConfigError):
        BinaryFrameConfig(0)
    with pytest.raises(ConfigError):
        BinaryFrameConfig(4, s2=4)
    with pytest.raises(ConfigError):
        encode_stream([1, 0], BinaryFrameConfig(4))
    with pytest.raises(ValueError):
        encode_stream([2, 0, 1], BinaryFrameConfig(4))


def test_estimator_api():
    est = BinaryRRLocoCodec(m=34)
    assert est.get_params() == {"m": 34, "complemented": False, "strict": True}
    with pytest.raises(NotFittedError):
        est.transform([0] * 24)
    twin = clone(est).set_params(complemented=True)
    est.fit()
    assert est.s2_ == 24 and est.frame_length_ == 36 and est.rate() == 24 / 36
    msg = np.random.default_rng(0).integers(0, 2, 48)
    assert (est.inverse_transform(est.fit_transform(msg)) == msg).all()
    assert (twin.fit(msg).inverse_transform(twin.transform(msg)) == msg).all()
