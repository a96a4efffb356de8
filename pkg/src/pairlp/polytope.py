"""The fundamental polytope Q(H) as an explicit inequality system."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import lp_core
from .linear_code import BinaryCode

MAX_ROW_WEIGHT = 16
MAX_ENUM_LENGTH = 10
VERTEX_TOL = 1e-7


@dataclass(frozen=True)
class FacetCandidate:
    """A constraint of Q(H) with positive slack at the origin."""

    index: int
    source: tuple
    row: np.ndarray
    rhs: float


@dataclass(frozen=True, eq=False)
class FundamentalPolytope:
    """Rows ``A x <= b`` of Q(H).

    Row order: the n upper bounds x_i <= 1, the n lower bounds -x_i <= 0, then
    for each check (ascending) its odd-subset inequalities, subsets taken in
    ascending order of their bitmask over the check's sorted support.
    ``sources[k]`` is ``("upper", i)``, ``("lower", i)`` or ``("check", j, S)``.
    """

    code: BinaryCode
    A: np.ndarray
    b: np.ndarray
    sources: tuple

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def num_constraints(self) -> int:
        return self.A.shape[0]

    @cached_property
    def problem(self) -> lp_core.LpProblem:
        """Feasibility LP whose feasible set is Q(H)."""
        n = self.n
        return lp_core.LpProblem(np.zeros(n), self.A, self.b,
                                 np.zeros(len(self.b), dtype=bool), np.zeros(n), np.ones(n))


def forbidden_set_rows(support) -> list[tuple[tuple[int, ...], dict[int, int], int]]:
    """(S, coefficients, rhs) for every odd-size subset S of one check's support."""
    support = tuple(support)
    d = len(support)
    out = []
    for mask in range(1 << d):
        if bin(mask).count("1") % 2 == 0:
            continue
        S = tuple(support[t] for t in range(d) if mask >> t & 1)
        coeffs = {i: (1 if i in S else -1) for i in support}
        out.append((S, coeffs, len(S) - 1))
    return out


def build(code: BinaryCode) -> FundamentalPolytope:
    if max(code.row_weights) > MAX_ROW_WEIGHT:
        raise ValueError(f"row weight {max(code.row_weights)} exceeds limit {MAX_ROW_WEIGHT}")
    n = code.n
    total = 2 * n + sum(2 ** (d - 1) for d in code.row_weights)
    A = np.zeros((total, n))
    b = np.zeros(total)
    sources = []
    for i in range(n):
        A[i, i] = 1.0
        b[i] = 1.0
        sources.append(("upper", i))
    for i in range(n):
        A[n + i, i] = -1.0
        sources.append(("lower", i))
    k = 2 * n
    for j, support in enumerate(code.rows):
        for S, coeffs, rhs in forbidden_set_rows(support):
            for i, v in coeffs.items():
                A[k, i] = v
            b[k] = rhs
            sources.append(("check", j, S))
            k += 1
    A.setflags(write=False)
    b.setflags(write=False)
    return FundamentalPolytope(code, A, b, tuple(sources))


def contains(poly: FundamentalPolytope, x, tol: float = 1e-9) -> bool:
    x = np.asarray(x, dtype=float)
    if x.shape != (poly.n,):
        raise ValueError(f"expected a length-{poly.n} vector")
    return bool((poly.A @ x <= poly.b + tol).all())


def is_vertex(poly: FundamentalPolytope, x, tol: float = lp_core.TIGHT_TOL) -> bool:
    """True iff n linearly independent constraints of Q(H) are tight at x."""
    if not contains(poly, x, tol):
        raise ValueError("point is not in the fundamental polytope")
    return lp_core.active_rank(poly.problem, x, tol=tol, feas_tol=tol) == poly.n


def facet_candidates(poly: FundamentalPolytope) -> list[FacetCandidate]:
    return [
        FacetCandidate(k, poly.sources[k], poly.A[k], float(poly.b[k]))
        for k in range(poly.num_constraints)
        if poly.b[k] > 0
    ]


def enumerate_vertices(poly: FundamentalPolytope, max_length: int = MAX_ENUM_LENGTH) -> np.ndarray:
    """Brute-force vertex enumeration for tiny codes.

    Every vertex has some coordinates at 0 or 1 and the rest (the free set F)
    strictly fractional. For a check with at least one free coordinate, a
    forbidden-set row can only be tight if it agrees with the fixed bits, and
    all such tight rows of one check span at most one equation on F. So the
    fractional part solves |F| equations drawn from |F| distinct checks. We
    loop over all 3^n fixed/free patterns and all those square systems.
    """
    n = poly.n
    if n > max_length:
        raise ValueError(f"vertex enumeration limited to n <= {max_length}, got {n}")
    code = poly.code
    # forbidden rows grouped by check
    groups = []
    k = 2 * n
    for d in code.row_weights:
        groups.append(np.arange(k, k + 2 ** (d - 1)))
        k += 2 ** (d - 1)
    found = {}
    for pattern in itertools.product((0, 1, 2), repeat=n):
        pat = np.array(pattern)
        fixed = np.flatnonzero(pat < 2)
        free = np.flatnonzero(pat == 2)
        x0 = np.where(pat < 2, pat, 0).astype(float)
        if free.size == 0:
            if contains(poly, x0):
                found[tuple(x0)] = x0
            continue
        f = free.size
        options = []
        feasible = True
        for rows in groups:
            sub = poly.A[rows][:, free]
            rhs = poly.b[rows] - poly.A[rows][:, fixed] @ pat[fixed]
            neg = np.clip(sub, None, 0).sum(axis=1)
            if (neg > rhs + VERTEX_TOL).any():
                feasible = False
                break
            if not sub.any():
                continue
            pos = np.clip(sub, 0, None).sum(axis=1)
            usable = (neg < rhs - VERTEX_TOL) & (rhs < pos - VERTEX_TOL)
            if usable.any():
                options.append(np.column_stack([sub[usable], rhs[usable]]))
        if not feasible or len(options) < f:
            continue
        for chosen in itertools.combinations(range(len(options)), f):
            opts = [options[c] for c in chosen]
            grid = np.stack(np.meshgrid(*[np.arange(len(o)) for o in opts], indexing="ij"),
                            axis=-1).reshape(-1, f)
            systems = np.stack([opts[t][grid[:, t]] for t in range(f)], axis=1)
            M = systems[:, :, :f]
            r = systems[:, :, f]
            ok = np.abs(np.linalg.det(M)) > 0.5  # integer matrices: det is an integer
            if not ok.any():
                continue
            sol = np.linalg.solve(M[ok], r[ok][:, :, None])[:, :, 0]
            inside = ((sol > VERTEX_TOL) & (sol < 1 - VERTEX_TOL)).all(axis=1)
            for s in sol[inside]:
                x = x0.copy()
                x[free] = s
                if contains(poly, x, VERTEX_TOL):
                    found.setdefault(tuple(np.round(x, 7)), x)
    return np.array(sorted(found.values(), key=tuple)).reshape(-1, n)
