# Decoding one received word on a symbol-pair read channel.
#
# A pair read channel sees each adjacent pair (x_i, x_{i+1}) of the stored
# word, with wraparound. Every pair is read correctly with probability 1 - p
# and otherwise turns into one of the three other pairs uniformly.

import numpy as np

from pairlp import decoder
from pairlp.channel import ChannelParams, cost_table, transmit
from pairlp.linear_code import gallager_ensemble, repetition_code
from pairlp.pair_metric import format_pairs, pair_distance, parse_pairs, pi
from pairlp.polytope import build

# %% The pair vector of a word

x = np.array([1, 0, 1, 1, 0])
print("x     =", x)
print("pi(x) =", format_pairs(pi(x)))

# A single bit flip changes two adjacent pairs.
x2 = x.copy()
x2[2] ^= 1
print("pair distance after one flip:", pair_distance(x, x2))

# %% Costs
#
# The decoder works with one cost per position and per pair value.
# A matching pair is cheap and the other three share the same larger cost.

params = ChannelParams(0.2)
y = parse_pairs("10 00 00")
print(np.round(cost_table(y, params), 3))

# %% LP decoding on the length-3 repetition code

rep3 = repetition_code(3)
poly = build(rep3)
out = decoder.lp_decode(poly, y, params)
print(out.kind, out.codeword, "ML certificate:", out.ml_certificate)

# Two pair errors out of three: the relaxation lands on the centre of the cube
# and no codeword is claimed.
out = decoder.lp_decode(poly, parse_pairs("10 00 01"), params)
print(out.kind, out.x)

# %% A random (3,4)-regular code

code = gallager_ensemble(20, 3, 4, seed=0)
poly = build(code)
rng = np.random.Generator(np.random.PCG64(5))
sent = np.zeros(code.n, dtype=np.uint8)
for trial in range(5):
    y = transmit(sent, params, rng)
    out = decoder.lp_decode(poly, y, params)
    ml = decoder.ml_decode(code, y, params)
    errs = int((pi(sent) != y).any(axis=1).sum())
    print(f"trial {trial}: {errs} pair errors, LP {out.kind}, "
          f"LP obj {out.objective:.3f}, ML obj {ml.objective:.3f}")
