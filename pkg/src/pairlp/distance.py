"""Fractional distance, fractional pair distance, and exact pair distance.

The lower bounds come from a sweep over the constraints of Q(H) that are
slack at the origin: each one is held at equality in turn and the weight is
minimised over the resulting face. The pair weight sum_i max(x_i, x_{i+1}) is
linearised with epigraph variables w_i >= x_i, w_i >= x_{i+1}.
"""
from __future__ import annotations

import io
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import lp_core
from .linear_code import BinaryCode, enumerate_codewords
from .pair_metric import W_fp, pair_weight
from .polytope import FundamentalPolytope, build, enumerate_vertices, facet_candidates

CSV_VERSION = "pairlp-distance/1"


@dataclass(frozen=True)
class FacetResult:
    index: int
    source: tuple
    d_f_min: float | None
    d_fp_min: float | None
    minimizer: np.ndarray | None = field(default=None, compare=False)


@dataclass
class DistanceReport:
    d_f_lower: float
    d_fp_lower: float
    d_p_exact: int | None = None
    d_fp_exact: float | None = None
    per_facet: list[FacetResult] = field(default_factory=list)


def _weight_problems(poly: FundamentalPolytope):
    """Base LPs for the two weights; facet equality is toggled per call."""
    n = poly.n
    C = poly.num_constraints
    hamming = lp_core.LpProblem(np.ones(n), poly.A, poly.b, np.zeros(C, dtype=bool),
                                np.zeros(n), np.ones(n))
    ii = np.arange(n)
    epi = np.zeros((2 * n, 2 * n))
    epi[ii, ii] = 1.0
    epi[ii, n + ii] = -1.0
    epi[n + ii, (ii + 1) % n] = 1.0
    epi[n + ii, n + ii] = -1.0
    A = np.vstack([np.hstack([poly.A, np.zeros((C, n))]), epi])
    pair = lp_core.LpProblem(np.concatenate([np.zeros(n), np.ones(n)]), A,
                             np.concatenate([poly.b, np.zeros(2 * n)]),
                             np.zeros(C + 2 * n, dtype=bool),
                             np.zeros(2 * n), np.ones(2 * n))
    return hamming, pair


def _on_facet(problem: lp_core.LpProblem, k: int) -> lp_core.LpProblem:
    is_eq = problem.is_eq.copy()
    is_eq[k] = True
    return lp_core.LpProblem(problem.objective, problem.A, problem.rhs, is_eq,
                             problem.lower, problem.upper)


@lru_cache(maxsize=16)
def _problems(code: BinaryCode):
    return _weight_problems(build(code))


@lru_cache(maxsize=None)
def _facet_minima(code: BinaryCode, k: int) -> tuple:
    """(d_f min, d_fp min, minimizer of the pair weight) on facet k, None if empty."""
    hamming, pair = _problems(code)
    s_f = lp_core.solve(_on_facet(hamming, k))
    s_fp = lp_core.solve(_on_facet(pair, k))
    f = float(s_f.objective_value) if s_f.optimal else None
    fp = float(s_fp.objective_value) if s_fp.optimal else None
    return f, fp, (s_fp.point if s_fp.optimal else None)


def facet_sweep(poly: FundamentalPolytope) -> list[FacetResult]:
    results = []
    for cand in facet_candidates(poly):
        f, fp, arg = _facet_minima(poly.code, cand.index)
        if f is None or fp is None:
            warnings.warn(f"constraint {cand.index} {cand.source} cannot be tight in Q(H); skipped",
                          stacklevel=2)
        results.append(FacetResult(cand.index, cand.source, f, fp, arg))
    if not results:
        raise ValueError("polytope has no constraints slack at the origin")
    return results


def _min_over(results, attr) -> float:
    vals = [getattr(r, attr) for r in results if getattr(r, attr) is not None]
    if not vals:
        raise ValueError("every facet LP was infeasible")
    return min(vals)


def fractional_distance_lb(poly: FundamentalPolytope) -> float:
    """Lower bound on the fractional distance (minimum Hamming weight over facets)."""
    return _min_over(facet_sweep(poly), "d_f_min")


def fractional_pair_distance_lb(poly: FundamentalPolytope) -> DistanceReport:
    results = facet_sweep(poly)
    return DistanceReport(_min_over(results, "d_f_min"), _min_over(results, "d_fp_min"),
                          per_facet=results)


def exact_distances(code: BinaryCode, poly: FundamentalPolytope | None = None) -> tuple[int, float]:
    """(d_p, d_fp) by enumerating codewords and the vertices of Q(H)."""
    poly = poly if poly is not None else build(code)
    words = enumerate_codewords(code, max_dimension=20)
    nonzero = [w for w in words if w.any()]
    if not nonzero:
        raise ValueError("code has no nonzero codeword")
    d_p = min(pair_weight(w) for w in nonzero)
    verts = enumerate_vertices(poly)
    d_fp = min(W_fp(v) for v in verts if np.abs(v).max() > 1e-9)
    return d_p, float(d_fp)


def distance_report(poly: FundamentalPolytope, exact: bool = False) -> DistanceReport:
    report = fractional_pair_distance_lb(poly)
    if exact:
        report.d_p_exact, report.d_fp_exact = exact_distances(poly.code, poly)
    return report


def format_report_csv(report: DistanceReport) -> str:
    buf = io.StringIO()
    buf.write(f"# {CSV_VERSION}\n")
    buf.write("facet_id,source,d_f_min,d_fp_min\n")
    fmt = lambda v: "" if v is None else f"{v:.10g}"  # noqa: E731
    for r in report.per_facet:
        src = ":".join(str(s) if not isinstance(s, tuple) else "-".join(map(str, s)) for s in r.source)
        buf.write(f"{r.index},{src},{fmt(r.d_f_min)},{fmt(r.d_fp_min)}\n")
    buf.write(
        f"# summary d_f_lower={fmt(report.d_f_lower)} d_fp_lower={fmt(report.d_fp_lower)}"
        f" d_fp_exact={fmt(report.d_fp_exact)} d_p_exact={fmt(report.d_p_exact)}\n"
    )
    return buf.getvalue()
