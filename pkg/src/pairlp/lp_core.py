"""Linear programs in the form used throughout the package, and their solvers.

A problem is ``minimize c.x  s.t.  A x (<= | =) b,  lo <= x <= hi`` with
finite bounds. Three solvers share that contract:

* ``solve(problem)`` uses the HiGHS dual simplex (via scipy) by default and
  returns a basic optimal solution; ``method="tableau"`` runs the dense
  two-phase tableau simplex below in floating point.
* ``solve_exact(problem)`` runs the same tableau algorithm over
  ``fractions.Fraction``.

Both tableau variants use Bland's rule, so they terminate on degenerate
problems and are deterministic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy import optimize

FEAS_TOL = 1e-9
TIGHT_TOL = 1e-7
INT_TOL = 1e-6
EXACT_MAX_VARS = 200

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class LpSolverError(RuntimeError):
    """Raised when a solver fails numerically or exceeds its iteration cap."""


@dataclass(frozen=True)
class LpProblem:
    """A bounded linear program.

    ``is_eq[k]`` marks constraint k as an equality; otherwise it is ``<=``.
    Arrays may hold ``Fraction`` objects (dtype=object) for exact-only use.
    """

    objective: np.ndarray
    A: np.ndarray
    rhs: np.ndarray
    is_eq: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        nv = len(self.objective)
        A = self.A
        if A.ndim != 2 or (A.shape[0] > 0 and A.shape[1] != nv):
            raise ValueError(f"constraint matrix shape {A.shape} does not match {nv} variables")
        if not (len(self.rhs) == len(self.is_eq) == A.shape[0]):
            raise ValueError("rhs / sense arrays do not match the number of constraints")
        if len(self.lower) != nv or len(self.upper) != nv:
            raise ValueError("bounds do not match the number of variables")
        for lo, hi in zip(self.lower, self.upper):
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError("variable bounds must be finite")
            if lo > hi:
                raise ValueError(f"empty bound interval [{lo}, {hi}]")

    @classmethod
    def from_rows(cls, objective, rows, lower, upper, names=None) -> "LpProblem":
        """Build from ``rows = [(coeffs, sense, rhs), ...]`` with sense ``"<="`` or ``"="``.

        ``coeffs`` is either a dense sequence or a ``{var: coeff}`` mapping.
        """
        nv = len(objective)
        A = np.zeros((len(rows), nv))
        rhs = np.zeros(len(rows))
        is_eq = np.zeros(len(rows), dtype=bool)
        for k, (coeffs, sense, b) in enumerate(rows):
            if sense not in ("<=", "="):
                raise ValueError(f"unknown constraint sense {sense!r}")
            if isinstance(coeffs, dict):
                for j, v in coeffs.items():
                    if not 0 <= j < nv:
                        raise ValueError(f"coefficient index {j} out of range")
                    A[k, j] = v
            else:
                A[k] = coeffs
            rhs[k] = b
            is_eq[k] = sense == "="
        return cls(
            np.asarray(objective, dtype=float), A, rhs, is_eq,
            np.asarray(lower, dtype=float), np.asarray(upper, dtype=float), names,
        )

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    @property
    def num_constraints(self) -> int:
        return self.A.shape[0]

    def float_view(self) -> "LpProblem":
        if self.A.dtype == float and self.objective.dtype == float:
            return self
        f = lambda a: np.asarray(a, dtype=float)  # noqa: E731
        return LpProblem(f(self.objective), f(self.A), f(self.rhs), self.is_eq,
                         f(self.lower), f(self.upper), self.names)


@dataclass(frozen=True)
class LpSolution:
    status: str
    point: np.ndarray | None = None
    objective_value: float | Fraction | None = None
    active_set: tuple[int, ...] = ()
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


# -- active constraints --------------------------------------------------------

def _residuals(problem: LpProblem, x: np.ndarray):
    p = problem.float_view()
    return p.A @ x - p.rhs, x - p.lower, p.upper - x


def is_feasible(problem: LpProblem, point, tol: float = FEAS_TOL) -> bool:
    x = np.asarray(point, dtype=float)
    r, lo, hi = _residuals(problem, x)
    scale = 1.0 + np.abs(problem.float_view().rhs)
    ok_rows = np.where(problem.is_eq, np.abs(r) <= tol * scale, r <= tol * scale)
    return bool(ok_rows.all() and (lo >= -tol).all() and (hi >= -tol).all())


def active_set(problem: LpProblem, point, tol: float = TIGHT_TOL) -> tuple[int, ...]:
    """Indices of tight rows.

    Constraint k is index k; the lower bound of variable j is
    ``num_constraints + j`` and its upper bound ``num_constraints + num_vars + j``.
    Equalities are always active.
    """
    x = np.asarray(point, dtype=float)
    r, lo, hi = _residuals(problem, x)
    C, V = problem.num_constraints, problem.num_vars
    tight = list(np.flatnonzero(problem.is_eq | (np.abs(r) <= tol)))
    tight += [C + j for j in np.flatnonzero(lo <= tol)]
    tight += [C + V + j for j in np.flatnonzero(hi <= tol)]
    return tuple(int(t) for t in tight)


def active_matrix(problem: LpProblem, active: tuple[int, ...]) -> np.ndarray:
    p = problem.float_view()
    C, V = p.num_constraints, p.num_vars
    rows = []
    for t in active:
        if t < C:
            rows.append(p.A[t])
        else:
            e = np.zeros(V)
            e[(t - C) % V] = 1.0
            rows.append(e)
    return np.array(rows).reshape(len(rows), V)


def active_rank(problem: LpProblem, point, tol: float = TIGHT_TOL,
                feas_tol: float = FEAS_TOL) -> int:
    """Rank of the rows (constraints and bounds) tight at ``point``."""
    if not is_feasible(problem, point, feas_tol):
        raise ValueError("point is not feasible for the problem")
    M = active_matrix(problem, active_set(problem, point, tol))
    return int(np.linalg.matrix_rank(M)) if M.size else 0


# -- HiGHS ---------------------------------------------------------------------

def _solve_highs(problem: LpProblem) -> LpSolution:
    p = problem.float_view()
    eq, ub = p.is_eq, ~p.is_eq
    res = optimize.linprog(
        p.objective,
        A_ub=p.A[ub] if ub.any() else None, b_ub=p.rhs[ub] if ub.any() else None,
        A_eq=p.A[eq] if eq.any() else None, b_eq=p.rhs[eq] if eq.any() else None,
        bounds=np.column_stack([p.lower, p.upper]),
        method="highs-ds",
        options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10},
    )
    if res.status == 2:
        return LpSolution(INFEASIBLE)
    if res.status == 3:
        return LpSolution(UNBOUNDED)
    if res.status != 0:
        raise LpSolverError(f"HiGHS failed: {res.message}")
    x = np.asarray(res.x, dtype=float)
    return LpSolution(OPTIMAL, x, float(p.objective @ x), active_set(p, x), int(res.nit))


# -- tableau simplex -----------------------------------------------------------

def _standard_form(problem: LpProblem, conv):
    """Rewrite as  min c.z  s.t.  M z = b (b >= 0), z >= 0.

    Columns: shifted variables z = x - lo, then one slack per inequality row,
    then artificials for rows lacking a usable +1 slack. Returns the pieces
    needed to start phase 1.
    """
    V = problem.num_vars
    lo = [conv(v) for v in problem.lower]
    hi = [conv(v) for v in problem.upper]
    rows, senses, rhs = [], [], []
    for k in range(problem.num_constraints):
        a = [conv(v) for v in problem.A[k]]
        rows.append(a)
        rhs.append(conv(problem.rhs[k]) - sum(ai * li for ai, li in zip(a, lo)))
        senses.append(bool(problem.is_eq[k]))
    for j in range(V):
        a = [conv(0)] * V
        a[j] = conv(1)
        rows.append(a)
        rhs.append(hi[j] - lo[j])
        senses.append(False)
    n_slack = sum(not s for s in senses)
    R = len(rows)
    M = [r + [conv(0)] * n_slack for r in rows]
    slack_col = {}
    s = V
    for i, is_eq in enumerate(senses):
        if not is_eq:
            M[i][s] = conv(1)
            slack_col[i] = s
            s += 1
    for i in range(R):
        if rhs[i] < 0:
            M[i] = [-v for v in M[i]]
            rhs[i] = -rhs[i]
    basis = [None] * R
    art_rows = []
    for i in range(R):
        if i in slack_col and M[i][slack_col[i]] == 1:
            basis[i] = slack_col[i]
        else:
            art_rows.append(i)
    ncols = V + n_slack
    for t, i in enumerate(art_rows):
        for r in range(R):
            M[r].append(conv(1) if r == i else conv(0))
        basis[i] = ncols + t
    c = [conv(v) for v in problem.objective] + [conv(0)] * (n_slack + len(art_rows))
    const = sum(ci * li for ci, li in zip(c[:V], lo))
    return M, rhs, c, basis, ncols, lo, const


class _FloatTableau:
    """Dense numpy tableau with a separate reduced-cost row."""

    eps = 1e-9

    def __init__(self, M, b, basis):
        self.T = np.array(M, dtype=float)
        self.b = np.array(b, dtype=float)
        self.basis = list(basis)

    def set_costs(self, c):
        c = np.asarray(c, dtype=float)
        cb = c[self.basis]
        self.d = c - cb @ self.T
        self.z = float(cb @ self.b)

    def entering(self, allowed: int):
        cand = np.flatnonzero(self.d[:allowed] < -self.eps)
        return int(cand[0]) if cand.size else None

    def leaving(self, j):
        col = self.T[:, j]
        rows = np.flatnonzero(col > self.eps)
        if rows.size == 0:
            return None
        ratios = self.b[rows] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
        return int(min(ties, key=lambda i: self.basis[i]))

    def pivot(self, i, j):
        piv = self.T[i, j]
        self.T[i] /= piv
        self.b[i] /= piv
        col = self.T[:, j].copy()
        col[i] = 0.0
        nz = np.flatnonzero(col)
        self.T[nz] -= np.outer(col[nz], self.T[i])
        self.b[nz] -= col[nz] * self.b[i]
        f = self.d[j]
        self.d -= f * self.T[i]
        self.z += f * self.b[i]
        self.basis[i] = j

    def nonzero_in_row(self, i, upto):
        row = np.abs(self.T[i, :upto])
        nz = np.flatnonzero(row > self.eps)
        return [int(j) for j in nz[np.argsort(-row[nz], kind="stable")]]

    def drop_rows(self, rows):
        keep = [r for r in range(len(self.basis)) if r not in set(rows)]
        self.T, self.b = self.T[keep], self.b[keep]
        self.basis = [self.basis[r] for r in keep]

    def drop_cols_from(self, start):
        self.T = self.T[:, :start]
        self.d = self.d[:start]

    def solution(self, ncols):
        z = np.zeros(ncols)
        for i, j in enumerate(self.basis):
            if j < ncols:
                z[j] = self.b[i]
        return z


class _ExactTableau:
    """Row-list tableau over Fraction; pivots skip zero entries."""

    eps = 0

    def __init__(self, M, b, basis):
        self.T = [list(r) for r in M]
        self.b = list(b)
        self.basis = list(basis)

    def set_costs(self, c):
        ncol = len(self.T[0]) if self.T else len(c)
        self.d = list(c[:ncol])
        self.z = Fraction(0)
        for i, bj in enumerate(self.basis):
            cb = c[bj]
            if cb:
                row = self.T[i]
                for j in range(ncol):
                    if row[j]:
                        self.d[j] -= cb * row[j]
                self.z += cb * self.b[i]

    def entering(self, allowed: int):
        for j in range(allowed):
            if self.d[j] < 0:
                return j
        return None

    def leaving(self, j):
        best, best_i = None, None
        for i, row in enumerate(self.T):
            a = row[j]
            if a > 0:
                r = self.b[i] / a
                if best is None or r < best or (r == best and self.basis[i] < self.basis[best_i]):
                    best, best_i = r, i
        return best_i

    def pivot(self, i, j):
        row = self.T[i]
        piv = row[j]
        if piv != 1:
            row = [v / piv for v in row]
            self.T[i] = row
            self.b[i] /= piv
        nz = [k for k, v in enumerate(row) if v]
        bi = self.b[i]
        for r, other in enumerate(self.T):
            if r == i:
                continue
            f = other[j]
            if f:
                for k in nz:
                    other[k] -= f * row[k]
                self.b[r] -= f * bi
        f = self.d[j]
        if f:
            for k in nz:
                self.d[k] -= f * row[k]
            self.z += f * bi
        self.basis[i] = j

    def nonzero_in_row(self, i, upto):
        return [j for j in range(upto) if self.T[i][j]]

    def drop_rows(self, rows):
        drop = set(rows)
        keep = [r for r in range(len(self.basis)) if r not in drop]
        self.T = [self.T[r] for r in keep]
        self.b = [self.b[r] for r in keep]
        self.basis = [self.basis[r] for r in keep]

    def drop_cols_from(self, start):
        self.T = [r[:start] for r in self.T]
        self.d = self.d[:start]

    def solution(self, ncols):
        z = [Fraction(0)] * ncols
        for i, j in enumerate(self.basis):
            if j < ncols:
                z[j] = self.b[i]
        return z


def _run_simplex(tab, allowed, cap):
    """Bland's-rule primal simplex; returns (status, iterations)."""
    it = 0
    while True:
        j = tab.entering(allowed)
        if j is None:
            return OPTIMAL, it
        i = tab.leaving(j)
        if i is None:
            return UNBOUNDED, it
        tab.pivot(i, j)
        it += 1
        if it > cap:
            raise LpSolverError(f"simplex exceeded the iteration cap of {cap}")


def _tableau_solve(problem: LpProblem, conv, tab_cls, feas_tol):
    M, b, c, basis, ncols, lo, const = _standard_form(problem, conv)
    n_art = len(M[0]) - ncols if M else 0
    tab = tab_cls(M, b, basis)
    cap = 50 * (problem.num_vars + problem.num_constraints) + 50
    iters = 0
    if n_art:
        c1 = [conv(0)] * ncols + [conv(1)] * n_art
        tab.set_costs(c1)
        _, iters = _run_simplex(tab, ncols + n_art, cap)
        if tab.z > feas_tol:
            return LpSolution(INFEASIBLE, iterations=iters)
        # drive zero-level artificials out of the basis; drop redundant rows
        redundant = []
        for i, bj in enumerate(tab.basis):
            if bj >= ncols:
                nz = tab.nonzero_in_row(i, ncols)
                if nz:
                    tab.pivot(i, nz[0])
                else:
                    redundant.append(i)
        tab.drop_rows(redundant)
        tab.drop_cols_from(ncols)
    tab.set_costs(c[:ncols])
    status, it2 = _run_simplex(tab, ncols, cap)
    iters += it2
    if status != OPTIMAL:
        return LpSolution(status, iterations=iters)
    z = tab.solution(ncols)
    V = problem.num_vars
    x = [lo[j] + z[j] for j in range(V)]
    return x, tab.z + const, iters


def _tableau_float(problem: LpProblem) -> LpSolution:
    p = problem.float_view()
    out = _tableau_solve(p, float, _FloatTableau, 1e-8)
    if isinstance(out, LpSolution):
        return out
    x, _, iters = out
    x = np.asarray(x, dtype=float)
    return LpSolution(OPTIMAL, x, float(p.objective @ x), active_set(p, x), iters)


def solve(problem: LpProblem, method: str = "highs") -> LpSolution:
    """Return a basic optimal solution, or an infeasible/unbounded status."""
    if method == "highs":
        return _solve_highs(problem)
    if method == "tableau":
        return _tableau_float(problem)
    raise ValueError(f"unknown method {method!r}")


def solve_exact(problem: LpProblem, max_vars: int = EXACT_MAX_VARS) -> LpSolution:
    """Exact rational simplex. Float inputs are converted without rounding."""
    if problem.num_vars > max_vars:
        raise ValueError(f"exact solver limited to {max_vars} variables, got {problem.num_vars}")
    out = _tableau_solve(problem, Fraction, _ExactTableau, 0)
    if isinstance(out, LpSolution):
        return out
    x, obj, iters = out
    point = np.array(x, dtype=object)
    return LpSolution(OPTIMAL, point, obj, active_set(problem, point.astype(float)), iters)


# -- LP file dump --------------------------------------------------------------

def _terms(coeffs, names):
    parts = []
    for j, v in enumerate(coeffs):
        v = float(v)
        if v == 0:
            continue
        sign = "-" if v < 0 else "+"
        mag = abs(v)
        parts.append(f"{sign} {names[j]}" if mag == 1 else f"{sign} {mag:.17g} {names[j]}")
    if not parts:
        return "0 " + names[0]
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else s


def format_lp(problem: LpProblem) -> str:
    """CPLEX LP text, for cross-checking against external solvers."""
    p = problem.float_view()
    names = list(p.names) if p.names else [f"x{j}" for j in range(p.num_vars)]
    out = ["Minimize", " obj: " + _terms(p.objective, names), "Subject To"]
    for k in range(p.num_constraints):
        op = "=" if p.is_eq[k] else "<="
        out.append(f" c{k}: {_terms(p.A[k], names)} {op} {p.rhs[k]:.17g}")
    out.append("Bounds")
    for j in range(p.num_vars):
        out.append(f" {p.lower[j]:.17g} <= {names[j]} <= {p.upper[j]:.17g}")
    out.append("End")
    return "\n".join(out) + "\n"


def write_lp(problem: LpProblem, path) -> None:
    Path(path).write_text(format_lp(problem))
