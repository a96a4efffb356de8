# Word error rates of LP and exhaustive ML decoding on a short code.

from pairlp.harness import ExperimentConfig, format_wer_csv, run_wer
from pairlp.linear_code import gallager_ensemble

code = gallager_ensemble(24, 3, 4, seed=0)
print("n =", code.n, "k =", code.dimension)

# %% A quick sweep; raise the trial count for tighter error bars

cfg = ExperimentConfig(p_grid=(0.05, 0.15, 0.25), trials=200, seed=0)
records = run_wer(cfg, code)
print(format_wer_csv(records, "demo"))

# %% Ties
#
# Every cost is one of two values, so exact ties among codewords or LP vertices
# are frequent at moderate p. With detect_ties the harness also counts correct
# decodes where another point is equally good.

cfg = ExperimentConfig(p_grid=(0.2,), trials=200, seed=1, decoders=("lp",), detect_ties=True)
lp = run_wer(cfg, code)[0]
print(f"LP errors {lp.errors}, tied correct decodes {lp.ties}, out of {lp.trials}")
