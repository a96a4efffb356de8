# Distance bounds from the facet sweep.
#
# Each facet of the polytope that does not contain the origin gives two LPs,
# one minimising the Hamming weight and one the pair weight. The smallest
# optimum over all facets bounds the corresponding fractional distance.

from pairlp.distance import distance_report
from pairlp.harness import ExperimentConfig, run_distance_sweep
from pairlp.linear_code import BinaryCode, gallager_ensemble, repetition_code
from pairlp.polytope import build

# %% Tiny codes, where exact values are available by enumeration

codes = {
    "rep3": repetition_code(3),
    "ring6": BinaryCode(6, ((0, 1, 2), (2, 3, 4), (4, 5, 0))),
    "g8": gallager_ensemble(8, 3, 4, seed=3),
}
for name, code in codes.items():
    r = distance_report(build(code), exact=True)
    print(f"{name:6s} d_f >= {r.d_f_lower:.3f}  d_fp >= {r.d_fp_lower:.3f}  "
          f"d_fp = {r.d_fp_exact:.3f}  d_p = {r.d_p_exact}")

# %% Growth with length (a small version; the acceptance suite uses 20 samples)

cfg = ExperimentConfig(kind="distance-sweep", lengths=(20, 40), samples=3, seed=0)
for row in run_distance_sweep(cfg):
    print(f"n={row.length}: mean d_f >= {row.mean_d_f:.2f}, mean d_fp >= {row.mean_d_fp:.2f}, "
          f"ratio {row.ratio:.2f}")
