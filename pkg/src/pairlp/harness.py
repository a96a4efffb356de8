"""Experiment runners: WER sweeps, distance-vs-length sweeps, symmetry checks.

Every random draw comes from a PCG64 stream derived from the master seed by
``SeedSequence(seed, spawn_key=(stream, cell, trial))``, so any single trial
can be replayed in isolation.
"""
from __future__ import annotations

import dataclasses
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import decoder, lp_core, polytope
from .channel import ChannelParams, cost_table, indicator, log_likelihood, transmit
from .distance import fractional_pair_distance_lb
from .linear_code import BinaryCode, gallager_ensemble, nullspace_basis, read_alist

WER_CSV_VERSION = "pairlp-wer/1"
SWEEP_CSV_VERSION = "pairlp-distance-sweep/1"
DEFAULT_P_GRID = (0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3)
KINDS = ("wer", "distance-sweep", "decode", "gen-code", "certify", "symmetry-check", "distance")
ML_MAX_DIMENSION = 24

# stream tags for derived RNGs
_NOISE, _CODEWORD, _CODE, _SYMMETRY, _NOISE_RANDOM_MODE = 0, 1, 2, 3, 4


def trial_rng(seed: int, stream: int, cell: int, trial: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(stream, cell, trial))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass
class ExperimentConfig:
    kind: str = "wer"
    code_path: str | None = None
    n: int | None = None
    var_degree: int = 3
    chk_degree: int = 4
    code_seed: int = 0
    p_grid: tuple[float, ...] = DEFAULT_P_GRID
    trials: int = 1000
    seed: int = 0
    out: str | None = None
    decoders: tuple[str, ...] = ("lp", "ml")
    codeword: str = "zero"
    detect_ties: bool = False
    lengths: tuple[int, ...] = (20, 40, 60, 80, 100)
    samples: int = 20

    def validate(self, code: BinaryCode | None = None) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if not self.p_grid or any(not (0 < p < 0.75) for p in self.p_grid):
            raise ValueError("every p in the grid must lie in (0, 0.75)")
        if self.trials < 1 or self.samples < 1:
            raise ValueError("trials and samples must be at least 1")
        if set(self.decoders) - {"lp", "ml"} or not self.decoders:
            raise ValueError(f"decoders must be a nonempty subset of lp, ml; got {self.decoders}")
        if self.codeword not in ("zero", "random"):
            raise ValueError("codeword mode must be 'zero' or 'random'")
        if code is not None and "ml" in self.decoders and code.dimension > ML_MAX_DIMENSION:
            raise ValueError(f"ML decoding needs k <= {ML_MAX_DIMENSION}, code has k = {code.dimension}")

    def load_code(self) -> BinaryCode:
        if self.code_path:
            return read_alist(self.code_path)
        if self.n is None:
            raise ValueError("either code_path or n (ensemble length) must be set")
        return gallager_ensemble(self.n, self.var_degree, self.chk_degree, self.code_seed)

    @classmethod
    def from_mapping(cls, values: dict) -> "ExperimentConfig":
        """Build from string values (config file / CLI); unknown keys are errors."""
        hints = {f.name: f for f in dataclasses.fields(cls)}
        kwargs = {}
        for key, raw in values.items():
            key = key.replace("-", "_")
            if key not in hints:
                raise ValueError(f"unknown config key {key!r}")
            kwargs[key] = _coerce(key, raw, hints[key].default)
        return cls(**kwargs)


def _coerce(key, raw, default):
    if not isinstance(raw, str):
        return raw
    if key in ("p_grid",):
        return tuple(float(t) for t in raw.replace(",", " ").split())
    if key in ("lengths",):
        return tuple(int(t) for t in raw.replace(",", " ").split())
    if key == "decoders":
        return tuple(t for t in raw.replace(",", " ").split())
    if key in ("n", "var_degree", "chk_degree", "code_seed", "trials", "seed", "samples"):
        return int(raw)
    if key == "detect_ties":
        if raw.lower() not in ("true", "false", "1", "0", "yes", "no"):
            raise ValueError(f"{key} must be a boolean, got {raw!r}")
        return raw.lower() in ("true", "1", "yes")
    return raw


def read_config_file(path) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


# -- WER -----------------------------------------------------------------------

@dataclass(frozen=True)
class WerRecord:
    p: float
    decoder: str
    trials: int
    errors: int
    ties: int = 0
    integral_wrong: int = 0
    fractional: int = 0
    solver_errors: int = 0

    @property
    def wer(self) -> float:
        return self.errors / self.trials

    @property
    def stderr(self) -> float:
        w = self.wer
        return math.sqrt(w * (1 - w) / self.trials)


def _sample_codeword(G: np.ndarray, rng) -> np.ndarray:
    if G.shape[0] == 0:
        return np.zeros(G.shape[1], dtype=np.uint8)
    msg = rng.integers(0, 2, G.shape[0])
    return ((msg @ G) & 1).astype(np.uint8)


def run_wer(config: ExperimentConfig, code: BinaryCode | None = None,
            observe: Callable[[decoder.DecodeOutcome], None] | None = None) -> list[WerRecord]:
    """Monte-Carlo word error rates of the enabled decoders at each p.

    LP word errors are fractional outcomes, integral outcomes other than the
    sent codeword, and solver errors. With ``detect_ties`` an extra LP per
    correct decode counts runs where another feasible point ties the sent one.
    ``observe`` is called with every LP outcome.
    """
    code = code if code is not None else config.load_code()
    config.validate(code)
    poly = polytope.build(code) if "lp" in config.decoders else None
    G = nullspace_basis(code.H) if config.codeword == "random" else None
    # the two codeword modes see independent noise
    noise = _NOISE if G is None else _NOISE_RANDOM_MODE
    records = []
    for cell, p in enumerate(config.p_grid):
        params = ChannelParams(p)
        lp_tally = dict(errors=0, ties=0, integral_wrong=0, fractional=0, solver_errors=0)
        ml_tally = dict(errors=0, ties=0)
        for t in range(config.trials):
            if G is None:
                x = np.zeros(code.n, dtype=np.uint8)
            else:
                x = _sample_codeword(G, trial_rng(config.seed, _CODEWORD, cell, t))
            y = transmit(x, params, trial_rng(config.seed, noise, cell, t))
            if poly is not None:
                out = decoder.lp_decode(poly, y, params)
                if observe is not None:
                    observe(out)
                if out.kind == decoder.FRACTIONAL:
                    lp_tally["fractional"] += 1
                elif out.kind == decoder.SOLVER_ERROR:
                    lp_tally["solver_errors"] += 1
                elif not np.array_equal(out.codeword, x):
                    lp_tally["integral_wrong"] += 1
                elif config.detect_ties and decoder.in_failure_set(poly, y, x, params):
                    lp_tally["ties"] += 1
            if "ml" in config.decoders:
                res = decoder.ml_decode(code, y, params)
                if not np.array_equal(res.codeword, x):
                    ml_tally["errors"] += 1
                if res.num_optimal > 1:
                    ml_tally["ties"] += 1
        if poly is not None:
            lp_tally["errors"] = (lp_tally["fractional"] + lp_tally["integral_wrong"]
                                  + lp_tally["solver_errors"])
            records.append(WerRecord(p, "lp", config.trials, **lp_tally))
        if "ml" in config.decoders:
            records.append(WerRecord(p, "ml", config.trials, **ml_tally))
    return records


def format_wer_csv(records: list[WerRecord], comment: str = "") -> str:
    buf = io.StringIO()
    buf.write(f"# {WER_CSV_VERSION}{' ' + comment if comment else ''}\n")
    buf.write("p,decoder,trials,errors,wer,stderr,ties,integral_wrong,fractional,solver_errors\n")
    for r in records:
        buf.write(f"{r.p:.6g},{r.decoder},{r.trials},{r.errors},{r.wer:.6g},{r.stderr:.6g},"
                  f"{r.ties},{r.integral_wrong},{r.fractional},{r.solver_errors}\n")
    return buf.getvalue()


# -- distance vs length ----------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    length: int
    samples: int
    mean_d_f: float
    mean_d_fp: float
    d_f: tuple[float, ...] = field(default=(), compare=False)
    d_fp: tuple[float, ...] = field(default=(), compare=False)

    @property
    def ratio(self) -> float:
        return self.mean_d_fp / self.mean_d_f


def sweep_code(config: ExperimentConfig, length: int, sample: int) -> BinaryCode:
    ss = np.random.SeedSequence(config.seed, spawn_key=(_CODE, length, sample))
    return gallager_ensemble(length, config.var_degree, config.chk_degree, ss)


def run_distance_sweep(config: ExperimentConfig) -> list[SweepRow]:
    """Average facet-sweep lower bounds over random ensemble codes per length."""
    config.validate()
    rows = []
    for length in config.lengths:
        fs, fps = [], []
        for s in range(config.samples):
            report = fractional_pair_distance_lb(polytope.build(sweep_code(config, length, s)))
            fs.append(report.d_f_lower)
            fps.append(report.d_fp_lower)
        rows.append(SweepRow(length, config.samples, float(np.mean(fs)), float(np.mean(fps)),
                             tuple(fs), tuple(fps)))
    return rows


def format_sweep_csv(rows: list[SweepRow], config: ExperimentConfig) -> str:
    buf = io.StringIO()
    buf.write(f"# {SWEEP_CSV_VERSION} var_degree={config.var_degree} "
              f"chk_degree={config.chk_degree} seed={config.seed}\n")
    buf.write("length,samples,mean_d_f_lower,mean_d_fp_lower,ratio\n")
    for r in rows:
        buf.write(f"{r.length},{r.samples},{r.mean_d_f:.10g},{r.mean_d_fp:.10g},{r.ratio:.10g}\n")
    return buf.getvalue()


def _solve_decoding(poly, lam) -> lp_core.LpSolution:
    sol = lp_core.solve(decoder.build_decoding_lp(poly, lam))
    if not sol.optimal:
        raise lp_core.LpSolverError(f"decoding LP status {sol.status}")
    return sol


# -- codeword symmetry -------------------------------------------------------------

@dataclass(frozen=True)
class SymmetryReport:
    samples: int
    max_loglik_dev: float
    max_gap_dev: float
    max_identity_dev: float
    involution_ok: bool

    def passed(self, loglik_tol: float = 1e-12, gap_tol: float = 1e-7) -> bool:
        return (self.max_loglik_dev <= loglik_tol and self.max_gap_dev <= gap_tol
                and self.max_identity_dev <= 1e-9 and self.involution_ok)


def run_symmetry_check(config: ExperimentConfig, code: BinaryCode | None = None,
                       observe: Callable[[lp_core.LpSolution], None] | None = None) -> SymmetryReport:
    """Compare each (codeword, received) sample against its zero-codeword image.

    Checks the likelihood pairing, equality of the LP optimality gaps, the
    cost identity at the LP optimum, and that the re-centring is an involution.
    ``observe`` is called with both LP solutions of every sample.
    """
    code = code if code is not None else config.load_code()
    config.validate()
    if code.dimension > 16:
        raise ValueError(f"symmetry check needs k <= 16, code has k = {code.dimension}")
    poly = polytope.build(code)
    G = nullspace_basis(code.H)
    zero = np.zeros(code.n, dtype=np.uint8)
    ll_dev = gap_dev = id_dev = 0.0
    involution = True
    for t in range(config.samples):
        rng = trial_rng(config.seed, _SYMMETRY, 0, t)
        params = ChannelParams(config.p_grid[t % len(config.p_grid)])
        x = _sample_codeword(G, rng)
        y = transmit(x, params, rng)
        y0 = decoder.relative_received(y, x)
        involution &= bool(np.array_equal(decoder.relative_received(y0, x), y))
        ll_dev = max(ll_dev, abs(log_likelihood(y, x, params) - log_likelihood(y0, zero, params)))
        sol = _solve_decoding(poly, cost_table(y, params))
        sol0 = _solve_decoding(poly, cost_table(y0, params))
        if observe is not None:
            observe(sol)
            observe(sol0)
        gap = sol.objective_value - float((cost_table(y, params) * indicator(x)).sum())
        gap0 = sol0.objective_value - float((cost_table(y0, params) * indicator(zero)).sum())
        gap_dev = max(gap_dev, abs(gap - gap0))
        xf, tauf = sol.point[:code.n], sol.point[code.n:].reshape(code.n, 4)
        lhs, rhs = decoder.cost_identity_check(y, x, xf, tauf, params)
        id_dev = max(id_dev, abs(lhs - rhs))
    return SymmetryReport(config.samples, ll_dev, gap_dev, id_dev, involution)
