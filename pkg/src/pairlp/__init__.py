"""Linear-programming decoding of binary linear codes over symbol-pair read channels."""
from .channel import ChannelParams, cost_table, log_likelihood, transmit
from .decoder import DecodeOutcome, build_decoding_lp, lp_decode, ml_decode
from .distance import (
    DistanceReport,
    exact_distances,
    fractional_distance_lb,
    fractional_pair_distance_lb,
)
from .linear_code import BinaryCode, enumerate_codewords, gallager_ensemble, read_alist, syndrome
from .lp_core import LpProblem, LpSolution, active_rank, solve, solve_exact
from .pair_metric import pair_distance, pair_weight, pair_xor, pi, w_fp
from .polytope import FundamentalPolytope, build, contains, enumerate_vertices, is_vertex

__version__ = "0.1.0"
