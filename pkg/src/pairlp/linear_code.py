"""Binary linear codes given by sparse parity-check matrices.

Also holds the GF(2) helpers (rank, nullspace basis, codeword enumeration),
the Gallager ensemble generator, and alist I/O.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

MAX_ENUM_DIMENSION = 24


@dataclass(frozen=True)
class BinaryCode:
    """A binary linear code defined by the supports of its parity checks.

    ``rows[j]`` is the sorted tuple of bit positions in check ``j``.
    """

    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"code length must be at least 2, got {self.n}")
        rows = tuple(tuple(sorted(int(i) for i in r)) for r in self.rows)
        for j, r in enumerate(rows):
            if not r:
                raise ValueError(f"check {j} is empty")
            if len(set(r)) != len(r):
                raise ValueError(f"check {j} has duplicate indices")
            if r[0] < 0 or r[-1] >= self.n:
                raise ValueError(f"check {j} has an index outside [0, {self.n})")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_matrix(cls, H) -> "BinaryCode":
        H = np.asarray(H, dtype=np.uint8) & 1
        if H.ndim != 2:
            raise ValueError("parity-check matrix must be 2-D")
        return cls(H.shape[1], tuple(tuple(np.flatnonzero(r).tolist()) for r in H))

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def row_weights(self) -> list[int]:
        return [len(r) for r in self.rows]

    @property
    def column_weights(self) -> list[int]:
        w = [0] * self.n
        for r in self.rows:
            for i in r:
                w[i] += 1
        return w

    @property
    def H(self) -> np.ndarray:
        """Dense parity-check matrix (m x n, uint8)."""
        H = np.zeros((self.m, self.n), dtype=np.uint8)
        for j, r in enumerate(self.rows):
            H[j, list(r)] = 1
        return H

    @property
    def rank(self) -> int:
        return gf2_rank(self.H)

    @property
    def dimension(self) -> int:
        return self.n - self.rank

    def is_codeword(self, x) -> bool:
        return not syndrome(self, x).any()


def repetition_code(n: int) -> BinaryCode:
    """Length-n repetition code with the chain checks x_i + x_{i+1} = 0."""
    return BinaryCode(n, tuple((i, i + 1) for i in range(n - 1)))


def syndrome(code: BinaryCode, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64).ravel()
    if x.size != code.n:
        raise ValueError(f"expected a length-{code.n} vector, got {x.size}")
    return np.array([int(x[list(r)].sum()) & 1 for r in code.rows], dtype=np.uint8)


def gf2_rref(H) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2); returns (R, pivot columns)."""
    A = (np.asarray(H, dtype=np.uint8) & 1).copy()
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        rows = np.flatnonzero(A[r:, c])
        if rows.size == 0:
            continue
        p = r + int(rows[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        ones = np.flatnonzero(A[:, c])
        ones = ones[ones != r]
        A[ones] ^= A[r]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def gf2_rank(H) -> int:
    return len(gf2_rref(H)[1])


def nullspace_basis(H) -> np.ndarray:
    """Rows form a basis of {x : Hx = 0} over GF(2)."""
    H = np.asarray(H, dtype=np.uint8)
    n = H.shape[1]
    R, pivots = gf2_rref(H)
    free = [c for c in range(n) if c not in set(pivots)]
    G = np.zeros((len(free), n), dtype=np.uint8)
    for t, f in enumerate(free):
        G[t, f] = 1
        for row, pc in zip(R, pivots):
            if row[f]:
                G[t, pc] = 1
    return G


def enumerate_codewords(code: BinaryCode, max_dimension: int = MAX_ENUM_DIMENSION) -> np.ndarray:
    """All 2^k codewords as rows of a uint8 array, in lexicographic order."""
    G = nullspace_basis(code.H)
    k = G.shape[0]
    if k > max_dimension:
        raise ValueError(f"code dimension {k} exceeds enumeration limit {max_dimension}")
    words = np.zeros((1, code.n), dtype=np.uint8)
    for g in G:
        words = np.concatenate([words, words ^ g])
    order = np.lexsort(words.T[::-1])
    return words[order]


def gallager_ensemble(n: int, var_degree: int, chk_degree: int, seed) -> BinaryCode:
    """Sample a (var_degree, chk_degree)-regular code from Gallager's ensemble.

    The matrix is ``var_degree`` stacked blocks of ``n / chk_degree`` rows; each
    block splits a random column permutation into consecutive groups of
    ``chk_degree``.
    """
    if var_degree < 1 or chk_degree < 1:
        raise ValueError("degrees must be positive")
    if (n * var_degree) % chk_degree or n % chk_degree:
        raise ValueError(
            f"n*var_degree = {n * var_degree} and n = {n} must be divisible by chk_degree = {chk_degree}"
        )
    rng = np.random.default_rng(seed)
    rows = []
    for _ in range(var_degree):
        perm = rng.permutation(n)
        for g in range(n // chk_degree):
            rows.append(tuple(sorted(set(perm[g * chk_degree:(g + 1) * chk_degree].tolist()))))
    return BinaryCode(n, tuple(rows))


# -- alist I/O ---------------------------------------------------------------

def format_alist(code: BinaryCode) -> str:
    cols = [[] for _ in range(code.n)]
    for j, r in enumerate(code.rows):
        for i in r:
            cols[i].append(j)
    col_w = [len(c) for c in cols]
    row_w = code.row_weights
    max_c, max_r = max(col_w), max(row_w)
    lines = [
        f"{code.n} {code.m}",
        f"{max_c} {max_r}",
        " ".join(map(str, col_w)),
        " ".join(map(str, row_w)),
    ]
    for c in cols:
        lines.append(" ".join(str(j + 1) for j in c + [-1] * (max_c - len(c))))
    for r in code.rows:
        lines.append(" ".join(str(i + 1) for i in list(r) + [-1] * (max_r - len(r))))
    return "\n".join(lines) + "\n"


def parse_alist(text: str) -> BinaryCode:
    """Parse alist text. Zero entries pad short lists and are ignored."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 4:
        raise ValueError("alist text is truncated")
    n, m = int(lines[0][0]), int(lines[0][1])
    if len(lines) < 4 + n + m:
        raise ValueError(f"alist declares {n} columns and {m} rows but has too few lines")
    row_w = [int(t) for t in lines[3]]
    rows = []
    for j in range(m):
        idx = [int(t) - 1 for t in lines[4 + n + j] if int(t) > 0]
        if len(idx) != row_w[j]:
            raise ValueError(f"row {j + 1}: weight {row_w[j]} declared, {len(idx)} entries listed")
        rows.append(tuple(idx))
    code = BinaryCode(n, tuple(rows))
    # column lists must agree with the row lists
    for i in range(n):
        listed = sorted(int(t) - 1 for t in lines[4 + i] if int(t) > 0)
        actual = [j for j, r in enumerate(code.rows) if i in r]
        if listed != actual:
            raise ValueError(f"column {i + 1} adjacency disagrees with row lists")
    return code


def read_alist(path) -> BinaryCode:
    return parse_alist(Path(path).read_text())


def write_alist(code: BinaryCode, path) -> None:
    Path(path).write_text(format_alist(code))

