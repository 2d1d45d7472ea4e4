import numpy as np
import pytest

from rrcode.constraints import R2, R4, full_level_set
from rrcode.oracle import (
    Codebook,
    count_level_sequences,
    enumerate_codebook,
    growth_rate,
    pair_state_matrix,
)


def test_codebook_sorted_and_admissible():
    cb = enumerate_codebook(2, 5, R2)
    assert list(cb.words) == sorted(cb.words)
    assert all((w[i], w[i + 1], w[i + 2]) not in R2 for w in cb.words for i in range(3))
    assert len(cb) == 15


def test_position_lookup():
    cb = enumerate_codebook(2, 4, R2)
    assert cb.words[0] == (0, 0, 1, 1)
    assert cb.position((1, 1, 1, 1)) == len(cb) - 1
    with pytest.raises(KeyError):
        cb.position((0, 0, 0, 0))


def test_guard():
    with pytest.raises(ValueError):
        enumerate_codebook(4, 13, R4)


def test_counts_agree_with_enumeration():
    fset = full_level_set(4)
    cb = enumerate_codebook(4, 5, fset)
    assert count_level_sequences(4, 5, fset) == len(cb)


def test_pair_state_powers_count():
    a = pair_state_matrix(2, R2)
    n = 9
    total = int(np.ones(4) @ np.linalg.matrix_power(a.astype(np.int64), n - 2) @ np.ones(4))
    assert total == count_level_sequences(2, n, R2)


def test_growth_rate_approaches_golden_ratio():
    assert growth_rate(2, 60, R2) == pytest.approx(np.log2((1 + 5**0.5) / 2), abs=1e-9)


def test_codebook_type():
    assert isinstance(enumerate_codebook(4, 2, R4), Codebook)
    assert len(enumerate_codebook(4, 2, R4)) == 16


def test_self_check_suite():
    from rrcode.verification import run_checks

    results = run_checks(deep=True)
    assert results and all(r.ok for r in results), [r for r in results if not r.ok]
