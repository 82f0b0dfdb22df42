"""Command-line entry point: ``icbench {fit,bias,table1,table2,table3}``."""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__
from .analytic import MAX_ORDER, Scenario, aic
from .distributions import Family
from .infomat import empirical_tic_gauss
from .models import DegenerateSampleError, InsufficientDataError, fit, max_loglik
from .montecarlo import ExperimentSpec, run_methods_table, run_true_bias
from .report import TABLE_SIZES, Method, decomposition_to_csv, to_csv, to_markdown_table

TABLE1_METHODS = (Method.TRUE, Method.AIC, Method.TIC, Method.TIC_HAT, Method.CN, Method.BN)
TABLE2_METHODS = (Method.TRUE, Method.AIC, Method.TIC, Method.CN, Method.BN)
BIAS_METHODS = tuple(Method)
TABLE3_SCENARIOS = (
    Scenario(Family.GAUSS, Family.GAUSS),
    Scenario(Family.LAPLACE, Family.LAPLACE),
    Scenario(Family.LAPLACE, Family.GAUSS),
    Scenario(Family.GAUSS, Family.LAPLACE),
)


class DataError(Exception):
    pass


def _uint64(text: str) -> int:
    try:
        v = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}")
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _order(text: str):
    if text == "max":
        return None
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("order must be 1..3 or 'max'")
    if not 1 <= v <= MAX_ORDER:
        raise argparse.ArgumentTypeError("order must be 1..3 or 'max'")
    return v


def _sizes(text: str):
    try:
        sizes = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("sizes must be comma-separated integers")
    if any(s < 4 for s in sizes):
        raise argparse.ArgumentTypeError("sizes must be at least 4")
    return sizes


def _threads_default() -> int:
    env = os.environ.get("ICBENCH_THREADS", "")
    try:
        return max(0, int(env))
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="icbench", description="Bias corrections of information criteria "
                                "for Gaussian and Laplace models.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fit", help="fit a model to numbers read from a file or stdin")
    f.add_argument("--model", type=Family, choices=list(Family), required=True)
    f.add_argument("input", nargs="?", default="-", help="file of whitespace-separated numbers (default: stdin)")

    def common(sp, reps_help):
        sp.add_argument("--reps", type=_positive, default=None, help=reps_help)
        sp.add_argument("--nb", type=_positive, default=100, help="bootstrap resamples per sample")
        sp.add_argument("--boot-reps", type=_positive, default=None,
                        help="samples bootstrapped for B_n (default: desk-scale policy)")
        sp.add_argument("--seed", type=_uint64, default=42)
        sp.add_argument("--order", type=_order, default=None,
                        help="C_n series truncation 1..3, or 'max' for the default truncation")
        sp.add_argument("--format", choices=("md", "csv"), default="md")
        sp.add_argument("--out", default=None, help="output file (default: stdout)")
        sp.add_argument("--threads", type=int, default=None, help="worker threads, 0 = all cores "
                        "(default: $ICBENCH_THREADS or 0)")

    b = sub.add_parser("bias", help="all bias estimates for one scenario and sample size")
    b.add_argument("--data", type=Family, choices=list(Family), required=True)
    b.add_argument("--model", type=Family, choices=list(Family), required=True)
    b.add_argument("--n", type=_positive, required=True)
    common(b, "Monte Carlo replications (default: desk-scale policy)")

    for name, text in (("table1", "Gaussian model bias estimates"),
                       ("table2", "Laplace model bias estimates"),
                       ("table3", "C1/C2/C3 decomposition of the true bias")):
        t = sub.add_parser(name, help=text)
        t.add_argument("--sizes", type=_sizes, default=TABLE_SIZES)
        common(t, "Monte Carlo replications per cell (default: desk-scale policy)")
    return p


def _read_numbers(path: str) -> np.ndarray:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
    except OSError as e:
        raise DataError(f"cannot read {path}: {e.strerror or e}")
    try:
        return np.array([float(t) for t in text.split()])
    except ValueError as e:
        raise DataError(f"bad number in input: {e}")


def cmd_fit(args, out):
    x = _read_numbers(args.input)
    model = fit(args.model, x)
    ll = max_loglik(model)
    scale_name = "variance" if model.family is Family.GAUSS else "scale"
    lines = [
        f"model: {model.family.value}",
        f"n: {model.n}",
        f"location: {model.loc:.6g}",
        f"{scale_name}: {model.scale:.6g}",
        f"max_loglik: {ll:.6f}",
        f"aic: {aic(ll, 2):.6f}",
    ]
    if model.family is Family.GAUSS:
        lines.append(f"tic_hat: {empirical_tic_gauss(x):.6f}")
    out.write("\n".join(lines) + "\n")


def _spec(args, scenario, n, methods):
    return ExperimentSpec(scenario, n, reps=args.reps, seed=args.seed, methods=methods, nb=args.nb,
                          boot_reps=args.boot_reps, order=args.order, threads=args.threads)


def _progress(msg):
    print(msg, file=sys.stderr, flush=True)


def cmd_bias(args, out):
    sc = Scenario(args.data, args.model)
    reports = run_methods_table(_spec(args, sc, args.n, BIAS_METHODS))
    if args.format == "csv":
        out.write(to_csv(reports))
    else:
        layout = "table1" if sc.model is Family.GAUSS else "table2"
        out.write(to_markdown_table(reports, layout, sizes=(args.n,), truths=(sc.truth,)))


def cmd_methods_table(args, out, model, methods, layout):
    reports = []
    for truth in Family:
        for n in args.sizes:
            sc = Scenario(truth, model)
            _progress(f"{layout}: data={truth.value} model={model.value} N={n}")
            reports.extend(run_methods_table(_spec(args, sc, n, methods)))
    out.write(to_csv(reports) if args.format == "csv" else to_markdown_table(reports, layout, args.sizes))


def cmd_table3(args, out):
    summaries = []
    for sc in TABLE3_SCENARIOS:
        for n in args.sizes:
            _progress(f"table3: data={sc.truth.value} model={sc.model.value} N={n}")
            summaries.append(run_true_bias(_spec(args, sc, n, (Method.TRUE,))))
    out.write(decomposition_to_csv(summaries) if args.format == "csv"
              else to_markdown_table(summaries, "table3", args.sizes))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", None) is None:
        args.threads = _threads_default()
    out = sys.stdout
    handle = None
    try:
        if getattr(args, "out", None):
            try:
                handle = open(args.out, "w", newline="\n")
            except OSError as e:
                raise DataError(f"cannot write {args.out}: {e.strerror or e}")
            out = handle
        if args.command == "fit":
            cmd_fit(args, out)
        elif args.command == "bias":
            cmd_bias(args, out)
        elif args.command == "table1":
            cmd_methods_table(args, out, Family.GAUSS, TABLE1_METHODS, "table1")
        elif args.command == "table2":
            cmd_methods_table(args, out, Family.LAPLACE, TABLE2_METHODS, "table2")
        else:
            cmd_table3(args, out)
    except (DataError, DegenerateSampleError, InsufficientDataError) as e:
        print(f"icbench: error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"icbench: error: {e}", file=sys.stderr)
        return 2
    finally:
        if handle is not None:
            handle.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
