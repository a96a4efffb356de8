"""LP decoding for the symbol-pair channel and the exhaustive ML reference.

Decoding LP variable layout (5n variables): x_0..x_{n-1}, then
tau[i][k] at position ``n + 4*i + k`` with pair index k = 2a + b.
Constraint layout: n sum-to-one rows, n rows coupling x_i to tau[i],
n rows coupling x_{i+1 mod n} to tau[i], then the rows of Q(H) on x.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import lp_core
from .channel import ChannelParams, cost_table, indicator
from .linear_code import BinaryCode, enumerate_codewords, syndrome
from .pair_metric import pair_index, pi
from .polytope import FundamentalPolytope

INTEGRAL = "integral"
FRACTIONAL = "fractional"
SOLVER_ERROR = "solver_error"

TAU_TOL = 1e-7


@dataclass(frozen=True)
class DecodeOutcome:
    kind: str
    x: np.ndarray | None
    tau: np.ndarray | None
    objective: float | None
    codeword: np.ndarray | None = None
    solution: lp_core.LpSolution | None = None
    message: str = ""

    @property
    def ml_certificate(self) -> bool:
        return self.kind == INTEGRAL


def build_decoding_lp(poly: FundamentalPolytope, lam) -> lp_core.LpProblem:
    lam = np.asarray(lam, dtype=float)
    n = poly.n
    if lam.shape != (n, 4):
        raise ValueError(f"cost table shape {lam.shape} does not match code length {n}")
    V = 5 * n
    C = 3 * n + poly.num_constraints
    A = np.zeros((C, V))
    rhs = np.zeros(C)
    is_eq = np.zeros(C, dtype=bool)
    is_eq[:3 * n] = True
    ii = np.arange(n)
    t0 = n + 4 * ii
    A[ii[:, None], t0[:, None] + np.arange(4)] = 1.0
    rhs[:n] = 1.0
    A[n + ii, ii] = 1.0
    A[n + ii, t0 + 2] = -1.0
    A[n + ii, t0 + 3] = -1.0
    A[2 * n + ii, (ii + 1) % n] = 1.0
    A[2 * n + ii, t0 + 1] = -1.0
    A[2 * n + ii, t0 + 3] = -1.0
    A[3 * n:, :n] = poly.A
    rhs[3 * n:] = poly.b
    objective = np.concatenate([np.zeros(n), lam.ravel()])
    return lp_core.LpProblem(objective, A, rhs, is_eq, np.zeros(V), np.ones(V))


def stack_point(x, tau) -> np.ndarray:
    return np.concatenate([np.asarray(x, dtype=float), np.asarray(tau, dtype=float).ravel()])


def is_integral(x, tol: float = lp_core.INT_TOL) -> bool:
    x = np.asarray(x, dtype=float)
    return bool(np.abs(x - np.round(x)).max() <= tol)


def lp_decode(poly: FundamentalPolytope, y, params: ChannelParams,
              method: str = "highs") -> DecodeOutcome:
    """Compute costs, solve the relaxation, and report integral/fractional."""
    lam = cost_table(y, params)
    if lam.shape[0] != poly.n:
        raise ValueError(f"received vector has length {lam.shape[0]}, code has {poly.n}")
    problem = build_decoding_lp(poly, lam)
    try:
        sol = lp_core.solve(problem, method=method)
    except lp_core.LpSolverError as exc:
        return DecodeOutcome(SOLVER_ERROR, None, None, None, message=str(exc))
    if not sol.optimal:
        return DecodeOutcome(SOLVER_ERROR, None, None, None, solution=sol,
                             message=f"LP status {sol.status}")
    n = poly.n
    x = sol.point[:n]
    tau = sol.point[n:].reshape(n, 4)
    if not is_integral(x):
        return DecodeOutcome(FRACTIONAL, x, tau, sol.objective_value, solution=sol)
    word = np.round(x).astype(np.uint8)
    if syndrome(poly.code, word).any():
        return DecodeOutcome(SOLVER_ERROR, x, tau, sol.objective_value, solution=sol,
                             message="rounded optimum is not a codeword")
    return DecodeOutcome(INTEGRAL, x, tau, sol.objective_value, codeword=word, solution=sol)


class Codebook:
    """All codewords of a small code with their pair indices, for exhaustive ML."""

    def __init__(self, code: BinaryCode):
        self.code = code
        self.words = enumerate_codewords(code)
        w = self.words.astype(np.uint8)
        self.pairs = (2 * w + np.roll(w, -1, axis=1)).astype(np.uint8)

    def __len__(self):
        return len(self.words)

    def costs(self, y, params: ChannelParams) -> np.ndarray:
        """-ln p(y | c) for every codeword c."""
        y_idx = pair_index(y).astype(np.uint8)
        errors = (self.pairs != y_idx).sum(axis=1)
        n = self.code.n
        return (n - errors) * params.correct_cost + errors * params.wrong_cost


@lru_cache(maxsize=8)
def codebook(code: BinaryCode) -> Codebook:
    return Codebook(code)


@dataclass(frozen=True)
class MLResult:
    codeword: np.ndarray
    objective: float
    num_optimal: int


def ml_decode(code: BinaryCode, y, params: ChannelParams) -> MLResult:
    """Exhaustive ML over all codewords; ties go to the lexicographically smallest."""
    book = codebook(code)
    costs = book.costs(y, params)
    best = int(np.argmin(costs))
    ties = int(np.count_nonzero(costs <= costs[best] + 1e-9))
    return MLResult(book.words[best].copy(), float(costs[best]), ties)


# -- codeword-relative transforms -------------------------------------------------

def _check_feasible_pair(xf, tauf):
    xf = np.asarray(xf, dtype=float)
    tauf = np.asarray(tauf, dtype=float)
    n = xf.size
    if tauf.shape != (n, 4):
        raise ValueError("tau must have shape (n, 4)")
    if (tauf < -TAU_TOL).any() or (tauf > 1 + TAU_TOL).any():
        raise ValueError("tau entries must lie in [0, 1]")
    if np.abs(tauf.sum(axis=1) - 1).max() > TAU_TOL:
        raise ValueError("tau rows must sum to one")
    if np.abs(xf - tauf[:, 2] - tauf[:, 3]).max() > TAU_TOL:
        raise ValueError("x_i does not match tau[i] on its first component")
    if np.abs(np.roll(xf, -1) - tauf[:, 1] - tauf[:, 3]).max() > TAU_TOL:
        raise ValueError("x_{i+1} does not match tau[i] on its second component")
    return xf, tauf


def relative_solution(xf, tauf, x):
    """Re-centre a feasible (xf, tauf) around codeword x.

    taur[i][k] = tauf[i][k XOR idx(pi(x)_i)]; for pair indices the XOR of
    indices is the componentwise pair XOR.
    """
    xf, tauf = _check_feasible_pair(xf, tauf)
    shift = pair_index(pi(x))
    if shift.size != xf.size:
        raise ValueError("codeword length does not match the solution")
    k = np.arange(4)
    taur = tauf[np.arange(xf.size)[:, None], k[None, :] ^ shift[:, None]]
    xr = taur[:, 2] + taur[:, 3]
    return xr, taur


def relative_received(y, x) -> np.ndarray:
    """y_0 = y XOR_p pi(x), the received vector seen from the zero codeword."""
    return (np.asarray(y, dtype=np.uint8) ^ pi(x)) & 1


def cost_identity_check(y, x, xf, tauf, params: ChannelParams) -> tuple[float, float]:
    """Both sides of <lam, tauf - T(x)> = <lam0, taur - T(0)>."""
    xf, tauf = _check_feasible_pair(xf, tauf)
    lam = cost_table(y, params)
    lam0 = cost_table(relative_received(y, x), params)
    _, taur = relative_solution(xf, tauf, x)
    lhs = float((lam * (tauf - indicator(x))).sum())
    rhs = float((lam0 * (taur - indicator(np.zeros(xf.size, dtype=np.uint8)))).sum())
    return lhs, rhs


def optimal_gap(poly: FundamentalPolytope, y, x, params: ChannelParams,
                method: str = "highs") -> float:
    """LP optimum minus the cost of the point (x, T(x))."""
    lam = cost_table(y, params)
    sol = lp_core.solve(build_decoding_lp(poly, lam), method=method)
    if not sol.optimal:
        raise lp_core.LpSolverError(f"decoding LP status {sol.status}")
    return float(sol.objective_value) - float((lam * indicator(x)).sum())


def in_failure_set(poly: FundamentalPolytope, y, x, params: ChannelParams,
                   tol: float = 1e-9) -> bool:
    """Whether some feasible (x', tau') with x' != x costs no more than (x, T(x)).

    Exact ties count as failures. When the LP optimum equals the cost of x, a
    second LP maximises the L1 distance from x over the optimal face.
    """
    x = np.asarray(x, dtype=np.uint8)
    lam = cost_table(y, params)
    problem = build_decoding_lp(poly, lam)
    sol = lp_core.solve(problem)
    if not sol.optimal:
        raise lp_core.LpSolverError(f"decoding LP status {sol.status}")
    cost_x = float((lam * indicator(x)).sum())
    if sol.objective_value < cost_x - tol:
        return True
    n = poly.n
    # maximise sum |x'_i - x_i|, i.e. minimise sum (2 x_i - 1) x'_i
    obj = np.zeros(problem.num_vars)
    obj[:n] = 2.0 * x - 1.0
    face = lp_core.LpProblem(
        obj,
        np.vstack([problem.A, problem.objective]),
        np.append(problem.rhs, cost_x + tol),
        np.append(problem.is_eq, False),
        problem.lower, problem.upper,
    )
    far = lp_core.solve(face)
    if not far.optimal:
        return False
    dist = float(np.abs(far.point[:n] - x).sum())
    return dist > lp_core.INT_TOL
