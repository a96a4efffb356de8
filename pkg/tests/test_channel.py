import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pairlp.channel import ChannelParams, cost_table, indicator, log_likelihood, transmit
from pairlp.pair_metric import pair_index, pi

P_VALUES = st.floats(0.001, 0.74)


@pytest.mark.parametrize("p", [0.0, 0.75, 0.9, -0.1])
def test_params_reject_out_of_range(p):
    with pytest.raises(ValueError):
        ChannelParams(p)


def test_log_likelihood_examples():
    x = np.array([1, 0, 1])
    y = pi(x)
    params = ChannelParams(0.3)
    assert log_likelihood(y, x, params) == pytest.approx(3 * math.log(0.7), abs=1e-12)
    assert log_likelihood(y, x, params) == pytest.approx(-1.07002, abs=1e-5)
    y1 = y.copy()
    y1[1] = [1, 1]
    assert log_likelihood(y1, x, params) == pytest.approx(2 * math.log(0.7) + math.log(0.1), abs=1e-12)
    assert log_likelihood(y1, x, params) == pytest.approx(-3.01593, abs=1e-5)


def test_cost_table_example():
    lam = cost_table(np.array([[1, 0], [0, 0]]), ChannelParams(0.3))
    assert lam[0, 2] == pytest.approx(0.35667, abs=1e-5)
    assert lam[0, [0, 1, 3]] == pytest.approx([2.30259] * 3, abs=1e-5)
    half = ChannelParams(0.5)
    assert half.correct_cost == pytest.approx(math.log(2))
    assert half.wrong_cost == pytest.approx(math.log(6))
    assert half.correct_cost < half.wrong_cost


@given(st.lists(st.integers(0, 1), min_size=2, max_size=12), st.lists(st.integers(0, 3), min_size=12, max_size=12), P_VALUES)
def test_cost_of_indicator_is_negative_loglik(x, yidx, p):
    x = np.array(x)
    y = np.stack([np.array(yidx[:x.size]) >> 1, np.array(yidx[:x.size]) & 1], axis=1)
    params = ChannelParams(p)
    lhs = float((cost_table(y, params) * indicator(x)).sum())
    assert lhs == pytest.approx(-log_likelihood(y, x, params), rel=1e-12, abs=1e-12)


def test_indicator_rows():
    T = indicator([1, 0, 0])
    assert T.tolist() == [[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0]]


def test_noiseless_limit():
    x = np.array([1, 0, 1, 1, 0, 0, 1])
    y = transmit(x, ChannelParams(1e-12), seed=3)
    assert np.array_equal(y, pi(x))


def test_transmit_error_statistics():
    n, trials = 100, 1000
    params = ChannelParams(0.3)
    rng = np.random.Generator(np.random.PCG64(2024))
    idx = np.concatenate([pair_index(transmit(np.zeros(n, dtype=np.uint8), params, rng))
                          for _ in range(trials)])
    wrong = idx[idx != 0]
    assert wrong.size / idx.size == pytest.approx(0.3, abs=0.01)
    freq = np.bincount(wrong, minlength=4)[1:] / wrong.size
    assert freq == pytest.approx([1 / 3] * 3, abs=0.02)


def test_transmit_wrong_pairs_from_nonzero_codeword():
    x = np.array([1, 1, 0, 1])
    sent = pair_index(pi(x))
    rng = np.random.Generator(np.random.PCG64(5))
    counts = np.zeros((4, 4))
    for _ in range(4000):
        got = pair_index(transmit(x, ChannelParams(0.6), rng))
        counts[sent, got] += 1
    for s in np.unique(sent):
        row = counts[s] / counts[s].sum()
        assert row[s] == pytest.approx(0.4, abs=0.03)
        assert np.delete(row, s) == pytest.approx([0.2] * 3, abs=0.03)


def test_transmit_is_deterministic():
    x = np.zeros(30, dtype=np.uint8)
    params = ChannelParams(0.2)
    assert np.array_equal(transmit(x, params, 11), transmit(x, params, 11))
