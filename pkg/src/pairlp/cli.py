"""Command-line entry point: ``python -m pairlp <subcommand> ...``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import decoder, distance, harness, lp_core, polytope
from .channel import ChannelParams
from .linear_code import gallager_ensemble, read_alist, write_alist
from .pair_metric import parse_pairs


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _config(args, kind: str, **explicit) -> harness.ExperimentConfig:
    values = harness.read_config_file(args.config) if getattr(args, "config", None) else {}
    values["kind"] = kind
    for key, val in explicit.items():
        if val is not None:
            values[key] = val
    return harness.ExperimentConfig.from_mapping(values)


def cmd_gen_code(args) -> int:
    code = gallager_ensemble(args.n, args.var_deg, args.chk_deg, args.seed)
    write_alist(code, args.out)
    print(f"wrote {args.out}: n={code.n} m={code.m} k={code.dimension}")
    return 0


def cmd_decode(args) -> int:
    code = read_alist(args.code)
    y = parse_pairs(Path(args.rx).read_text())
    params = ChannelParams(args.p)
    poly = polytope.build(code)
    if args.dump_lp:
        lp_core.write_lp(decoder.build_decoding_lp(poly, decoder.cost_table(y, params)),
                         args.dump_lp)
    out = decoder.lp_decode(poly, y, params)
    print(f"kind: {out.kind}")
    if out.codeword is not None:
        print("codeword: " + "".join(map(str, out.codeword)))
    elif out.x is not None:
        print("x: " + " ".join(f"{v:.6g}" for v in out.x))
    if out.objective is not None:
        print(f"objective: {out.objective:.12g}")
    print(f"certificate: {str(out.ml_certificate).lower()}")
    if args.ml:
        res = decoder.ml_decode(code, y, params)
        print("ml_codeword: " + "".join(map(str, res.codeword)))
        print(f"ml_objective: {res.objective:.12g}")
    if out.kind == decoder.SOLVER_ERROR:
        print(f"error: {out.message}", file=sys.stderr)
        return 1
    return 0


def cmd_wer(args) -> int:
    cfg = _config(args, "wer", code_path=args.code, p_grid=args.p_grid, trials=args.trials,
                  seed=args.seed, out=args.out, decoders=args.decoders,
                  codeword=args.codeword, detect_ties="true" if args.detect_ties else None)
    records = harness.run_wer(cfg)
    _emit(harness.format_wer_csv(records, f"code={cfg.code_path} seed={cfg.seed} "
                                          f"codeword={cfg.codeword}"), cfg.out)
    return 1 if any(r.solver_errors for r in records) else 0


def cmd_distance(args) -> int:
    poly = polytope.build(read_alist(args.code))
    report = distance.distance_report(poly, exact=args.exact)
    _emit(distance.format_report_csv(report), args.out)
    return 0


def cmd_distance_sweep(args) -> int:
    cfg = _config(args, "distance-sweep", lengths=args.lengths, samples=args.samples,
                  seed=args.seed, out=args.out)
    rows = harness.run_distance_sweep(cfg)
    _emit(harness.format_sweep_csv(rows, cfg), cfg.out)
    return 0


def cmd_symmetry_check(args) -> int:
    cfg = _config(args, "symmetry-check", code_path=args.code, samples=args.samples,
                  seed=args.seed, p_grid=args.p_grid)
    rep = harness.run_symmetry_check(cfg)
    print(f"samples: {rep.samples}")
    print(f"max_loglik_dev: {rep.max_loglik_dev:.3e}")
    print(f"max_gap_dev: {rep.max_gap_dev:.3e}")
    print(f"max_identity_dev: {rep.max_identity_dev:.3e}")
    print(f"involution: {str(rep.involution_ok).lower()}")
    print(f"result: {'pass' if rep.passed() else 'fail'}")
    return 0 if rep.passed() else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pairlp", description="LP decoding for symbol-pair read channels")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-code", help="sample a Gallager ensemble code to an alist file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--var-deg", type=int, default=3)
    p.add_argument("--chk-deg", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_code)

    p = sub.add_parser("decode", help="LP-decode one received pair vector")
    p.add_argument("--code", required=True)
    p.add_argument("--rx", required=True, help="file with one line of 'ab' pair tokens")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--ml", action="store_true", help="also run exhaustive ML")
    p.add_argument("--dump-lp", metavar="PATH", help="write the decoding LP in LP format")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("wer", help="Monte-Carlo word error rates")
    p.add_argument("--config")
    p.add_argument("--code")
    p.add_argument("--p-grid")
    p.add_argument("--trials")
    p.add_argument("--seed")
    p.add_argument("--decoders", help="comma-separated subset of lp,ml")
    p.add_argument("--codeword", choices=["zero", "random"])
    p.add_argument("--detect-ties", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_wer)

    p = sub.add_parser("distance", help="facet-sweep distance bounds for one code")
    p.add_argument("--code", required=True)
    p.add_argument("--exact", action="store_true", help="also enumerate (tiny codes only)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("distance-sweep", help="mean distance bounds versus length")
    p.add_argument("--config")
    p.add_argument("--lengths")
    p.add_argument("--samples")
    p.add_argument("--seed")
    p.add_argument("--out")
    p.set_defaults(func=cmd_distance_sweep)

    p = sub.add_parser("symmetry-check", help="codeword-independence checks")
    p.add_argument("--config")
    p.add_argument("--code")
    p.add_argument("--samples")
    p.add_argument("--seed")
    p.add_argument("--p-grid")
    p.set_defaults(func=cmd_symmetry_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, lp_core.LpSolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
