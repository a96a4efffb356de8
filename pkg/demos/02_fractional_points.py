# Fractional vertices of the fundamental polytope, and what the pair LP adds.

from fractions import Fraction

import numpy as np

from pairlp import decoder, lp_core
from pairlp.linear_code import BinaryCode, repetition_code
from pairlp.pair_metric import W_fp
from pairlp.polytope import build, contains, enumerate_vertices, is_vertex

# %% Codes without Tanner cycles only have integral vertices

tree = BinaryCode(5, ((0, 1, 2), (2, 3, 4)))
verts = enumerate_vertices(build(tree))
print(len(verts), "vertices, all integral:", all(decoder.is_integral(v) for v in verts))

# %% Three weight-3 checks in a ring

ring = BinaryCode(6, ((0, 1, 2), (2, 3, 4), (4, 5, 0)))
poly = build(ring)
verts = enumerate_vertices(poly)
frac = [v for v in verts if not decoder.is_integral(v)]
print(len(verts), "vertices,", len(frac), "fractional")
for v in frac:
    print(v, "pair weight", round(W_fp(v), 3))

# %% Lifted vertices need not project to vertices
#
# The decoding LP lives in 5n dimensions. Here is one of its vertices
# whose x-part lies in the relative interior of an edge of the polytope.
# In block 4 both bits are fractional but x_4 + x_5 = 1, so that block has
# two zero pair weights and one more tight constraint than usual.

t, tt = 1 / 3, 2 / 3
x = np.array([t, 1, tt, 0, tt, t])
tau = np.array([[0, tt, 0, t], [0, 0, t, tt], [t, 0, tt, 0],
                [t, tt, 0, 0], [0, t, tt, 0], [tt, 0, 0, t]])
lp = decoder.build_decoding_lp(poly, np.zeros((6, 4)))
z = decoder.stack_point(x, tau)
print("feasible:", lp_core.is_feasible(lp, z, tol=1e-9))
print("lifted active rank:", lp_core.active_rank(lp, z), "of", lp.num_vars)
print("x is a vertex of the polytope:", is_vertex(poly, x))
a, b = np.array([0, 1, 1, 0, 1, 1]), np.array([0.5, 1, 0.5, 0, 0.5, 0])
print("x = a/3 + 2b/3:", np.allclose(x, a / 3 + 2 * b / 3), contains(poly, b))

# %% The same effect on the repetition code
#
# With pairs 10 00 01 received, the LP prefers (1/2, 1/2, 1/2), the middle of
# the segment between the two codewords.

from pairlp.channel import ChannelParams
from pairlp.pair_metric import parse_pairs

out = decoder.lp_decode(build(repetition_code(3)), parse_pairs("10 00 01"), ChannelParams(0.1))
print(out.kind, out.x, "objective", round(out.objective, 4))
exact = lp_core.solve_exact(decoder.build_decoding_lp(build(repetition_code(3)),
                                                     decoder.cost_table(parse_pairs("10 00 01"),
                                                                        ChannelParams(0.1))))
print("exact solver agrees:", [Fraction(v) for v in exact.point[:3]])
