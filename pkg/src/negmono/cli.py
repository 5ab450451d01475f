"""Command line interface.

Reports go to stdout, one JSON object per line (NDJSON) unless CSV is
selected where supported. Progress and diagnostics go to stderr. Exit
status is 0 when every checked statement holds (a violation of the
conjectured inequality is reported as a finding but still exits 0),
1 when a proven statement is violated numerically, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import acceptance
from .imfunc import DEFAULT_QUAD_TOL, DEFAULT_THETA, IMParams, sup_error_table
from .matcore import TAU_CHECK, complex_gaussian, load_matrix
from .monogamy import ineq2_report, ineq3_report, ineq4_report, monotonicity_report
from .permlemma import D_MAX, check_commutative, drury_numeric_check, max_rearranged_sum
from .qstate import coeff_matrices, load_state, random_state
from .search import TARGETS, SearchConfig, run_search, run_trial, serialize_instance
from .specialcase import SpecialCaseTrace, interlacing_trace, pad_square
from .errors import StepFailedError

PROVEN = ("ineq2", "ineq3", "monotonicity_AB", "monotonicity_AC",
          "ineqid", "ineqid1", "ineqid2_minus", "ineqid2_plus",
          "commutative", "chain_bound", "holder_half", "drury",
          "single_term_triangle", "single_term_cauchy_schwarz")
CONJECTURED = ("ineq4",)


def _emit(obj: dict, out) -> None:
    out.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _parse_dims(text: str) -> tuple[int, int, int]:
    parts = text.lower().split("x")
    if len(parts) != 3:
        raise ValueError(f"expected AxBxC, got {text!r}")
    dims = tuple(int(p) for p in parts)
    if any(d < 1 for d in dims):
        raise ValueError(f"dimensions must be positive, got {text!r}")
    return dims


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("NEGMONO_SEED", "0"))


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _cmd_verify(args) -> int:
    seed = _resolve_seed(args)
    dims = _parse_dims(args.dims)
    rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed,)))
    out, close = _open_out(args.out)
    status = 0
    worst = None
    try:
        for trial in range(args.trials):
            state = random_state(dims, rng)
            mats = coeff_matrices(state)
            reports = [
                ineq2_report(state, tol=args.tol),
                ineq3_report(mats, tol=args.tol),
                ineq4_report(mats, tol=args.tol),
                *monotonicity_report(state, tol=args.tol),
            ]
            for rep in reports:
                rec = rep.with_meta(seed=seed, trial=trial).to_dict()
                _emit(rec, out)
                if rep.holds:
                    continue
                if rep.name in CONJECTURED:
                    _emit({"finding": "conjecture-violation", **rec}, out)
                    print(f"finding: {rep.name} violated at trial {trial} "
                          f"(slack {rep.slack:.3e})", file=sys.stderr)
                else:
                    status = 1
                if worst is None or rep.slack < worst["slack"]:
                    worst = rec
    finally:
        if close:
            out.close()
    if worst is not None and status == 1:
        print(f"proven statement violated: {worst['name']} "
              f"slack {worst['slack']:.3e}", file=sys.stderr)
    return status


def _cmd_special(args) -> int:
    seed = _resolve_seed(args)
    if args.file is not None:
        b = pad_square(load_matrix(args.file))
    else:
        rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed,)))
        b = complex_gaussian(rng, (args.d, args.d))
    out, close = _open_out(args.out)
    try:
        try:
            trace = interlacing_trace(b, tol=args.tol)
        except StepFailedError as exc:
            print(f"certified chain failed at {exc.step}: {exc}", file=sys.stderr)
            return 1
        status = 0
        for rep in trace.reports:
            rec = rep.with_meta(seed=seed).to_dict()
            _emit(rec, out)
            if not rep.holds:
                status = 1
                print(f"proven statement violated: {rep.name} "
                      f"slack {rep.slack:.3e}", file=sys.stderr)
        return status
    finally:
        if close:
            out.close()


def _cmd_perm(args) -> int:
    seed = _resolve_seed(args)
    if args.d > D_MAX:
        print(f"d={args.d} exceeds the exhaustive limit {D_MAX}", file=sys.stderr)
        return 2
    rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed,)))
    out, close = _open_out(args.out)
    status = 0
    try:
        for sample in range(args.samples):
            mu = np.sort(rng.random(args.d))[::-1]
            best, image = max_rearranged_sum(mu)
            rep = check_commutative(mu, image, tol=args.tol)
            rec = rep.with_meta(seed=seed, sample=sample,
                                argworst=[int(i) for i in image]).to_dict()
            _emit(rec, out)
            if not rep.holds:
                status = 1
                print(f"proven statement violated: {rep.name} "
                      f"slack {rep.slack:.3e}", file=sys.stderr)
    finally:
        if close:
            out.close()
    return status


def _cmd_drury(args) -> int:
    seed = _resolve_seed(args)
    if args.d > D_MAX:
        print(f"d={args.d} exceeds the exhaustive limit {D_MAX}", file=sys.stderr)
        return 2
    rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed,)))
    out, close = _open_out(args.out)
    status = 0
    try:
        for trial in range(args.trials):
            rep = drury_numeric_check(complex_gaussian(rng, (args.d, args.d)),
                                      tol=args.tol)
            _emit(rep.with_meta(seed=seed, trial=trial).to_dict(), out)
            if not rep.holds:
                status = 1
                print(f"proven statement violated: {rep.name} "
                      f"slack {rep.slack:.3e}", file=sys.stderr)
    finally:
        if close:
            out.close()
    return status


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected lo:hi:n, got {text!r}")
    return float(parts[0]), float(parts[1]), int(parts[2])


def _cmd_im(args) -> int:
    lo, hi, n = _parse_grid(args.grid)
    s_values = [float(s) for s in args.s_list.split(",")]
    params = IMParams(theta=args.theta, quad_tol=args.quad_tol,
                      grid_lo=lo, grid_hi=hi, grid_n=n)
    table = sup_error_table(s_values, params)
    out, close = _open_out(args.out)
    try:
        if args.format == "csv":
            out.write("s,sup_error\n")
            for s, err in table:
                out.write(f"{s:.17g},{err:.17g}\n")
        else:
            for s, err in table:
                _emit({"s": s, "sup_error": err, "theta": args.theta}, out)
    finally:
        if close:
            out.close()
    return 0


def _cmd_search(args) -> int:
    seed = _resolve_seed(args)
    if args.format == "csv":
        print("search emits NDJSON only", file=sys.stderr)
        return 2
    dims = _parse_dims(args.dims) if args.dims is not None else None
    try:
        cfg = SearchConfig(target=args.target, dims=dims, d=args.d,
                           trials=args.trials, local_steps=args.local_steps,
                           step_scale=args.step_scale, seed=seed, tol=args.tol)
    except ValueError as exc:
        print(f"bad search configuration: {exc}", file=sys.stderr)
        return 2
    out, close = _open_out(args.out)
    try:
        if args.jobs == 1:
            best = None
            violations = 0
            for t in range(cfg.trials):
                t_idx, slack, inst = run_trial(cfg, t)
                _emit({"trial": t_idx, "slack": slack}, out)
                if slack < -cfg.tol:
                    violations += 1
                if best is None or (slack, t_idx) < best[:2]:
                    best = (slack, t_idx, inst)
                if (t + 1) % 1000 == 0:
                    print(f"{t + 1}/{cfg.trials} trials", file=sys.stderr)
            result_dict = {
                "min_slack": best[0], "argmin": best[2],
                "trial_index": best[1], "violations": violations,
            }
        else:
            res = run_search(cfg, jobs=args.jobs)
            result_dict = res.to_dict()
            violations = res.violations
        _emit({"result": result_dict, "target": cfg.target, "seed": seed}, out)
    finally:
        if close:
            out.close()
    if violations:
        kind = "finding" if cfg.target == "ineq4" else "proven statement violated"
        print(f"{kind}: {violations} violation(s) for target {cfg.target}",
              file=sys.stderr)
        if cfg.target != "ineq4":
            return 1
    return 0


def _cmd_selftest(args) -> int:
    seed = _resolve_seed(args)
    out, close = _open_out(args.out)
    failed = 0
    try:
        for fn in acceptance.CRITERIA:
            res = fn(seed)
            print(res.line(), file=sys.stderr)
            _emit({"index": res.index, "name": res.name, "passed": res.passed,
                   "elapsed_s": res.elapsed_s, "details": _jsonable(res.details)},
                  out)
            if not res.passed:
                failed += 1
    finally:
        if close:
            out.close()
    return 1 if failed else 0


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="negmono",
        description="Numerical checks for block-matrix negativity bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tol=True):
        p.add_argument("--seed", type=int, default=None,
                       help="rng seed (default: NEGMONO_SEED or 0)")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        if tol:
            p.add_argument("--tol", type=float, default=TAU_CHECK,
                           help="slack tolerance")

    p = sub.add_parser("verify-conjecture",
                       help="check the monogamy inequalities on random states")
    common(p)
    p.add_argument("--dims", default="2x2x2", help="local dimensions AxBxC")
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("special-case",
                       help="run the certified two-block chain on a matrix")
    common(p)
    p.add_argument("--file", default=None, help="matrix JSON file")
    p.add_argument("--d", type=int, default=4, help="size for a random matrix")
    p.set_defaults(func=_cmd_special)

    p = sub.add_parser("perm-lemma",
                       help="check the rearranged square-root sum bound")
    common(p)
    p.add_argument("--d", type=int, default=5)
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(func=_cmd_perm)

    p = sub.add_parser("drury-check",
                       help="compare the commutator-gap trace to the "
                            "rearrangement maximum")
    common(p)
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--trials", type=int, default=50)
    p.set_defaults(func=_cmd_drury)

    p = sub.add_parser("im-approx",
                       help="tabulate sup errors of the smooth square-root "
                            "approximation")
    p.add_argument("--theta", type=float, default=DEFAULT_THETA)
    p.add_argument("--s-list", default="1,4,16,64,100")
    p.add_argument("--grid", default="-10:10:2001", help="lo:hi:n")
    p.add_argument("--quad-tol", type=float, default=DEFAULT_QUAD_TOL)
    p.add_argument("--format", choices=("ndjson", "csv"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_im)

    p = sub.add_parser("search", help="randomized counterexample search")
    common(p)
    p.add_argument("--target", choices=TARGETS, required=True)
    p.add_argument("--dims", default=None, help="AxBxC (ineq4 only)")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--local-steps", type=int, default=20)
    p.add_argument("--step-scale", type=float, default=0.25)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("ndjson", "csv"), default="ndjson")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    common(p, tol=False)
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
