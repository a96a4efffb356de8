"""Symbol-pair read vectors and the distances defined on them.

A pair vector is stored as an ``(n, 2)`` uint8 array. Pairs are also
addressed by a small integer index ``2*a + b``, so (0,0)->0, (0,1)->1,
(1,0)->2, (1,1)->3; cost tables and tau assignments use that column order.
"""
from __future__ import annotations

import numpy as np

PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))


def _bits(x) -> np.ndarray:
    x = np.asarray(x)
    if x.ndim != 1:
        raise ValueError("expected a 1-D bit vector")
    if x.size < 2:
        raise ValueError(f"pair vectors need length >= 2, got {x.size}")
    if ((x != 0) & (x != 1)).any():
        raise ValueError("bit vectors may only contain 0 and 1")
    return x.astype(np.uint8)


def pi(x) -> np.ndarray:
    """Cyclic symbol-pair read vector: row i is (x_i, x_{i+1 mod n})."""
    x = _bits(x)
    return np.stack([x, np.roll(x, -1)], axis=1)


def pair_index(pairs) -> np.ndarray:
    """Map an (n, 2) pair vector to indices 0..3."""
    pairs = np.asarray(pairs, dtype=np.int64)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise ValueError("pair vector must have shape (n, 2)")
    if ((pairs < 0) | (pairs > 1)).any():
        raise ValueError("pair components must be bits")
    return 2 * pairs[:, 0] + pairs[:, 1]


def pairs_from_index(idx) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64)
    return np.stack([idx >> 1, idx & 1], axis=1).astype(np.uint8)


def is_consistent(pairs) -> bool:
    """True when consecutive pairs overlap, i.e. the vector is pi(x) for some x."""
    pairs = np.asarray(pairs)
    return bool(np.array_equal(pairs[:, 1], np.roll(pairs[:, 0], -1)))


def pair_distance(x, y) -> int:
    x, y = _bits(x), _bits(y)
    if x.size != y.size:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    return int((pi(x) != pi(y)).any(axis=1).sum())


def pair_weight(x) -> int:
    return int(pi(x).any(axis=1).sum())


def pair_xor(p, q) -> np.ndarray:
    """Componentwise XOR of pairs; works on single pairs or whole pair vectors."""
    return (np.asarray(p, dtype=np.uint8) ^ np.asarray(q, dtype=np.uint8)) & 1


def w_fp(pair) -> float:
    """Fractional pair weight of one (possibly fractional) pair: max of its entries."""
    a, b = (float(v) for v in pair)
    if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
        raise ValueError(f"pair components must lie in [0, 1], got ({a}, {b})")
    return max(a, b)


def W_fp(x, tol: float = 1e-9) -> float:
    """Sum of w_fp over the cyclic pairs of a real vector in [0, 1]^n.

    Components within ``tol`` outside the box are clipped (solver round-off).
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("expected a 1-D vector of length >= 2")
    if (x < -tol).any() or (x > 1 + tol).any():
        raise ValueError("components must lie in [0, 1]")
    x = np.clip(x, 0.0, 1.0)
    return float(np.maximum(x, np.roll(x, -1)).sum())


def format_pairs(pairs) -> str:
    """One line of ``ab`` tokens."""
    return " ".join(f"{a}{b}" for a, b in np.asarray(pairs, dtype=int))


def parse_pairs(text: str) -> np.ndarray:
    toks = text.split()
    if len(toks) < 2:
        raise ValueError("a pair vector needs at least two tokens")
    bad = [t for t in toks if len(t) != 2 or set(t) - {"0", "1"}]
    if bad:
        raise ValueError(f"malformed pair tokens: {bad[:3]}")
    return np.array([[int(t[0]), int(t[1])] for t in toks], dtype=np.uint8)
