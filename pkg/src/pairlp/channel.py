"""The memoryless symbol-pair read channel and its LP cost table."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pair_metric import pair_index, pairs_from_index, pi

# other three pair indices for each sent index, ascending
_WRONG = np.array([[j for j in range(4) if j != i] for i in range(4)], dtype=np.int64)


@dataclass(frozen=True)
class ChannelParams:
    """Pair-error probability p, restricted to the open interval (0, 3/4)."""

    p: float

    def __post_init__(self):
        if not (0.0 < self.p < 0.75):
            raise ValueError(f"pair-error probability must be in (0, 0.75), got {self.p}")

    @property
    def correct_cost(self) -> float:
        return -math.log1p(-self.p)

    @property
    def wrong_cost(self) -> float:
        return -math.log(self.p / 3.0)


def make_rng(seed) -> np.random.Generator:
    """PCG64 stream; a Generator passes through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def transmit(x, params: ChannelParams, seed) -> np.ndarray:
    """Send codeword bits x through the channel and return the read pairs.

    One uniform draw per position, positions in order 0..n-1. A draw below
    1-p keeps the pair; otherwise the remaining mass is split evenly over the
    three wrong pairs in ascending index order.
    """
    sent = pair_index(pi(x))
    u = make_rng(seed).random(sent.size)
    received = sent.copy()
    hit = u >= 1.0 - params.p
    k = np.minimum(((u[hit] - (1.0 - params.p)) / (params.p / 3.0)).astype(np.int64), 2)
    received[hit] = _WRONG[sent[hit], k]
    return pairs_from_index(received)


def cost_table(y, params: ChannelParams) -> np.ndarray:
    """lambda[i, (a,b)] = -ln p(y_i | (a,b)) as an (n, 4) array."""
    idx = pair_index(y)
    lam = np.full((idx.size, 4), params.wrong_cost)
    lam[np.arange(idx.size), idx] = params.correct_cost
    lam.setflags(write=False)
    return lam


def indicator(x) -> np.ndarray:
    """T(x): the (n, 4) 0/1 indicator of the pairs of pi(x)."""
    idx = pair_index(pi(x))
    tau = np.zeros((idx.size, 4))
    tau[np.arange(idx.size), idx] = 1.0
    return tau


def log_likelihood(y, x, params: ChannelParams) -> float:
    y_idx = pair_index(y)
    x_idx = pair_index(pi(x))
    if y_idx.size != x_idx.size:
        raise ValueError(f"length mismatch: {y_idx.size} vs {x_idx.size}")
    errors = int((y_idx != x_idx).sum())
    return (y_idx.size - errors) * math.log1p(-params.p) + errors * math.log(params.p / 3.0)
