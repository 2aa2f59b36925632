"""Command-line front end: each experiment is a subcommand emitting CSV.

Output layout is stable: one leading comment line echoing the effective
configuration, a fixed header row, then data rows.  Floats are printed
with 12 significant digits and exact counts as integers, so identical
flags and seed give byte-identical output at any thread count.  The
worker-pool size (--threads) and the output path (--out) are therefore
deliberately left out of the echoed configuration.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import List, Optional, Tuple

from .abscissa import abscissa_table
from .afe import afe_error_scan
from .errors import DomainError, NumericalError, ResourceError
from .moments import (
    DEFAULT_BUDGET,
    MomentExperiment,
    ResonantSpec,
    discrete_moment,
    equidistribution_ratio,
    resonant_experiment,
    resonant_target_detail,
)
from .weylcount import WeylPolynomial, count_J, count_M, count_T, mc_mean_value
from .zeta import DEFAULT_CONFIG, EvalPoint, ZetaEvalConfig

_FLOAT_FMT = ".12g"

_VARIANTS = {"poly": "polynomial", "mono": "monomial"}
_CONDITIONALS = {"none": "unconditional", "lindelof": "lindelof"}


def _fmt(x: float) -> str:
    return format(float(x), _FLOAT_FMT)


def _int_list(text: str) -> List[int]:
    """Comma list with "lo-hi" ranges: "2-8", "4,8,16", "1,3-5"."""
    out: List[int] = []
    for part in text.split(","):
        part = part.strip()
        try:
            out.append(int(part))
            continue
        except ValueError:
            pass
        lo_s, sep, hi_s = part.partition("-")
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad integer or range: {part!r}")
        if not sep or lo > hi:
            raise argparse.ArgumentTypeError(f"bad range: {part!r}")
        out.extend(range(lo, hi + 1))
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _float_list(text: str) -> List[float]:
    """Comma list of reals; "lo-hi" ranges (integer endpoints, step 1) allowed."""
    out: List[float] = []
    for part in text.split(","):
        part = part.strip()
        try:
            out.append(float(part))
            continue
        except ValueError:
            pass
        lo_s, sep, hi_s = part.partition("-")
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad number or range: {part!r}")
        if not sep or lo > hi:
            raise argparse.ArgumentTypeError(f"bad range: {part!r}")
        out.extend(float(v) for v in range(lo, hi + 1))
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _plain_floats(text: str) -> List[float]:
    try:
        return [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad float list: {text!r}")


def _plain_ints(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list: {text!r}")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write CSV to this path instead of stdout")
    common.add_argument("--seed", type=int, default=42,
                        help="random seed (default 42)")
    common.add_argument("--threads", type=_positive_int, default=1,
                        help="worker pool size (default 1)")

    parser = argparse.ArgumentParser(
        prog="zetashift",
        description="Numerical experiments on zeta values sampled along "
                    "polynomial phase sequences.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("abscissa", parents=[common],
                       help="moment abscissa table over a list of degrees")
    p.add_argument("--d", type=_int_list, required=True,
                   help='degrees, e.g. "2-8" or "2,3,5"')
    p.add_argument("--variant", choices=("poly", "mono"), default="poly")
    p.add_argument("--conditional", choices=("none", "lindelof"),
                   default="none")
    p.add_argument("--grid", type=float, default=1e-4,
                   help="search grid step (default 1e-4)")

    p = sub.add_parser("afe", parents=[common],
                       help="truncated-sum error scan over heights")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--t", type=_float_list, required=True,
                   help='heights, e.g. "50,100,200,400"')

    p = sub.add_parser("count", parents=[common],
                       help="power-sum solution counting")
    p.add_argument("--h", type=int, required=True, help="tuples per side")
    p.add_argument("--d", type=int, help="degree (needed for J and M)")
    p.add_argument("--n", type=_int_list, required=True,
                   help='box sizes, e.g. "4,8,16,32,64"')
    p.add_argument("--method", choices=("brute", "mitm", "mc"),
                   default="mitm")
    p.add_argument("--samples", type=_positive_int, default=1_000_000,
                   help="Monte Carlo sample count (default 1e6)")
    p.add_argument("--target", choices=("J", "M", "T"), default="J",
                   help="J: simultaneous system, M: single equation, "
                        "T: permutation diagonal")
    p.add_argument("--timing", action="store_true",
                   help="fill the seconds column (off by default: timings "
                        "are not reproducible)")

    p = sub.add_parser("moment", parents=[common],
                       help="discrete second moment along a polynomial orbit")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--coeffs", type=_plain_floats, required=True,
                   help="phase polynomial coefficients, low degree first")
    p.add_argument("--schedule", type=_int_list, required=True,
                   help='checkpoints, e.g. "1000,10000"')
    p.add_argument("--eval", choices=("em", "tail"), default=None,
                   help="zeta evaluator (default: tail if sigma > 1 else em)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="term-evaluation budget")

    p = sub.add_parser("resonant", parents=[common],
                       help="moment with resonant shift coefficients")
    p.add_argument("--k0", type=int, required=True)
    p.add_argument("--l0", type=int, required=True)
    p.add_argument("--m", type=_plain_ints, required=True,
                   help="integer shift vector, comma separated")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-10,
                   help="target series truncation tolerance")

    p = sub.add_parser("equi", parents=[common],
                       help="normalized exponential-sum magnitude")
    p.add_argument("--coeffs", type=_plain_floats, required=True)
    p.add_argument("--n", type=int, required=True)

    return parser


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (columns, rows of string cells)
# ---------------------------------------------------------------------------

def _run_abscissa(args) -> Tuple[List[str], List[List[str]]]:
    profiles = abscissa_table(args.d, [_VARIANTS[args.variant]],
                              [_CONDITIONALS[args.conditional]],
                              grid_step=args.grid, threads=args.threads)
    rows = []
    for pr in profiles:
        rows.append([str(pr.d), args.variant, args.conditional,
                     _fmt(pr.mu_star), _fmt(pr.A_at_mu), _fmt(pr.B_at_mu),
                     _fmt(pr.S),
                     "" if pr.h_mo is None else str(pr.h_mo),
                     "" if pr.e_mo is None else _fmt(pr.e_mo)])
    return (["d", "variant", "conditional", "mu_star", "A_mu", "B_mu", "S",
             "h_mo", "e_mo"], rows)


def _run_afe(args) -> Tuple[List[str], List[List[str]]]:
    report = afe_error_scan(args.sigma, args.mu, tuple(args.t),
                            threads=args.threads)
    rows = [[_fmt(report.sigma), _fmt(report.mu), _fmt(r.t),
             _fmt(r.approx.real), _fmt(r.approx.imag),
             _fmt(r.reference.real), _fmt(r.reference.imag),
             _fmt(r.abs_error)] for r in report.rows]
    # Trailing summary row: the fitted log-log slope lands in abs_err.
    rows.append([_fmt(report.sigma), _fmt(report.mu), "fitted_decay",
                 "", "", "", "", _fmt(report.fitted_decay)])
    return (["sigma", "mu", "t", "approx_re", "approx_im", "ref_re",
             "ref_im", "abs_err"], rows)


def _run_count(args) -> Tuple[List[str], List[List[str]]]:
    rows = []
    for n in args.n:
        if args.target == "T":
            rep = count_T(args.h, n)
        elif args.method == "mc":
            if args.target != "J":
                raise DomainError(
                    "monte carlo estimates the simultaneous-system count "
                    "only; use --target J")
            if args.d is None:
                raise DomainError("count --target J requires --d")
            rep = mc_mean_value(args.h, args.d, n, args.samples, args.seed,
                                args.threads)
        else:
            if args.d is None:
                raise DomainError(f"count --target {args.target} requires --d")
            fn = count_J if args.target == "J" else count_M
            rep = fn(args.h, args.d, n, args.method)
        d_cell = "" if args.d is None else str(args.d)
        count_cell = (str(rep.count) if isinstance(rep.count, int)
                      else _fmt(rep.count))
        rows.append([str(rep.h), d_cell, str(rep.n_max), rep.method,
                     count_cell,
                     "" if rep.stderr is None else _fmt(rep.stderr),
                     _fmt(rep.elapsed_seconds) if args.timing else ""])
    return ["h", "d", "N", "method", "count", "stderr", "seconds"], rows


def _run_moment(args) -> Tuple[List[str], List[List[str]]]:
    if args.eval is None:
        args.eval = "tail" if args.sigma > 1 else "em"
    if args.eval == "em":
        cfg = DEFAULT_CONFIG
    else:
        cfg = ZetaEvalConfig(method="dirichlet_tail_bounded",
                             tail_tolerance=1e-4)
    exp = MomentExperiment(s=EvalPoint(args.sigma, args.t),
                           p=WeylPolynomial(len(args.coeffs),
                                            tuple(args.coeffs)),
                           n_schedule=tuple(args.schedule), eval_cfg=cfg)
    results = discrete_moment(exp, budget=args.budget, threads=args.threads)
    rows = [[str(r.n), _fmt(r.average), _fmt(r.target), _fmt(r.abs_dev)]
            for r in results]
    return ["N", "avg", "target", "abs_dev"], rows


def _run_resonant(args) -> Tuple[List[str], List[List[str]]]:
    spec = ResonantSpec(k0=args.k0, l0=args.l0, m=tuple(args.m),
                        sigma=args.sigma, t=args.t,
                        truncation_tolerance=args.tol)
    res = resonant_experiment(spec, args.n, threads=args.threads)
    _, terms = resonant_target_detail(spec)
    row = [str(res.n), _fmt(res.average), _fmt(res.target), _fmt(res.abs_dev),
           str(terms)]
    return ["N", "avg", "target", "abs_dev", "trunc_terms"], [row]


def _run_equi(args) -> Tuple[List[str], List[List[str]]]:
    p = WeylPolynomial(len(args.coeffs), tuple(args.coeffs))
    ratio = equidistribution_ratio(p, args.n, threads=args.threads)
    return ["N", "ratio"], [[str(args.n), _fmt(ratio)]]


_HANDLERS = {
    "abscissa": _run_abscissa,
    "afe": _run_afe,
    "count": _run_count,
    "moment": _run_moment,
    "resonant": _run_resonant,
    "equi": _run_equi,
}


def _echo_line(args) -> str:
    def flist(v):
        return ",".join(_fmt(x) for x in v)

    def ilist(v):
        return ",".join(str(x) for x in v)

    sc = args.subcommand
    if sc == "abscissa":
        pairs = [("d", ilist(args.d)), ("variant", args.variant),
                 ("conditional", args.conditional), ("grid", _fmt(args.grid))]
    elif sc == "afe":
        pairs = [("sigma", _fmt(args.sigma)), ("mu", _fmt(args.mu)),
                 ("t", flist(args.t))]
    elif sc == "count":
        pairs = [("h", str(args.h)),
                 ("d", "" if args.d is None else str(args.d)),
                 ("n", ilist(args.n)), ("method", args.method),
                 ("target", args.target), ("samples", str(args.samples)),
                 ("timing", str(int(args.timing)))]
    elif sc == "moment":
        pairs = [("sigma", _fmt(args.sigma)), ("t", _fmt(args.t)),
                 ("coeffs", flist(args.coeffs)),
                 ("schedule", ilist(args.schedule)), ("eval", args.eval),
                 ("budget", str(args.budget))]
    elif sc == "resonant":
        pairs = [("k0", str(args.k0)), ("l0", str(args.l0)),
                 ("m", ilist(args.m)), ("sigma", _fmt(args.sigma)),
                 ("t", _fmt(args.t)), ("n", str(args.n)),
                 ("tol", _fmt(args.tol))]
    else:
        pairs = [("coeffs", flist(args.coeffs)), ("n", str(args.n))]
    pairs.append(("seed", str(args.seed)))
    return "# zetashift " + sc + " " + " ".join(f"{k}={v}" for k, v in pairs)


def _write_csv(out: Optional[str], echo: str, columns: List[str],
               rows: List[List[str]]) -> None:
    fh = open(out, "w", newline="") if out else sys.stdout
    try:
        fh.write(echo + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
    finally:
        if out:
            fh.close()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        columns, rows = _HANDLERS[args.subcommand](args)
    except DomainError as exc:
        print(f"zetashift {args.subcommand}: invalid arguments: {exc}",
              file=sys.stderr)
        return 2
    except (NumericalError, ResourceError) as exc:
        print(f"zetashift {args.subcommand}: {exc}", file=sys.stderr)
        return 3
    _write_csv(args.out, _echo_line(args), columns, rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
