"""Command-line entry point: ``glorq <subcommand> ...``."""

from __future__ import annotations

import argparse
import logging
import math
import sys

import numpy as np

from . import distributions as dist
from .errors import DomainError, EmitError, GlorqError
from .gof import ks_statistic
from .ingest import IngestFailure, ingest
from .report import (RunConfig, analyze, emit, emit_records, law_reports, model_label,
                     model_report, write_plot_data, write_text)
from .variability import sigma_log, variability

EXIT_OK = 0
EXIT_INGEST = {"unreadable": 3, "column": 3, "empty": 4, "skips": 5}
EXIT_COMPUTE = 6
EXIT_WRITE = 7


def _common(p: argparse.ArgumentParser, with_d=True):
    p.add_argument("--f", dest="f_list", type=float, action="append",
                   help="scale factor F > 1 (repeatable; default 2, 8, 32)")
    if with_d:
        p.add_argument("--d", type=int, default=5, help="bin count D >= 2 (default 5)")
    p.add_argument("--format", dest="fmt", choices=("table", "json", "csv"), default="table")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")


def _input(p: argparse.ArgumentParser):
    p.add_argument("path")
    p.add_argument("--column", help="column name or 1-based index (default 1)")
    p.add_argument("--delimiter", help="field delimiter (default: autodetect)")
    p.add_argument("--transform", choices=("none", "diff"), default="none")
    p.add_argument("--log-input", action="store_true", help="column already holds ln values")
    p.add_argument("--delta", type=float, default=0.01, help="truncation fraction (default 0.01)")


def _model_args(p: argparse.ArgumentParser, required=True):
    p.add_argument("--model", choices=("normal", "gumbel", "perfect"), required=required)
    p.add_argument("--mu", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--k-support", type=float)
    p.add_argument("--from-moments", action="store_true",
                   help="read --mu/--sigma as mean/std of ln X and fit the model by moments")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="glorq", description="General law of relative quantities")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expected", help="theoretical law table")
    _common(p)

    p = sub.add_parser("analyze", help="rank frequencies of a data file")
    _input(p)
    _common(p)
    p.add_argument("--model", choices=("normal", "gumbel"),
                   help="also report a model fitted to the ln-moments of the data")
    p.add_argument("--plot-data", help="path prefix for plot-data files")
    p.add_argument("--j-max", type=int, default=50)

    p = sub.add_parser("model", help="rank probabilities of a parametric model")
    _model_args(p)
    _common(p)
    p.add_argument("--plot-data", help="path prefix for periodized-density files")
    p.add_argument("--resolution", type=int, default=10_000)
    p.add_argument("--j-max", type=int, default=50)

    p = sub.add_parser("ks", help="Kolmogorov-Smirnov test of ln(data) against a model")
    _input(p)
    _model_args(p)
    p.add_argument("--format", dest="fmt", choices=("table", "json", "csv"), default="table")
    p.add_argument("--output", "-o")
    p.add_argument("--plot-data", help="path prefix for the cumulative comparison file")

    p = sub.add_parser("variability", help="R_delta and the compliance expectation")
    _input(p)
    _common(p)

    p = sub.add_parser("perfect-check", help="Fourier test for F-perfection")
    _model_args(p)
    _common(p, with_d=False)
    p.add_argument("--j-max", type=int, default=50)

    p = sub.add_parser("simulate", help="draw from a model, then analyze the draws")
    _model_args(p)
    _common(p)
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=float, default=0.01)
    return ap


def make_model(args, logs=None):
    """Build the requested model from flags, or from the ln-moments of ``logs``."""
    kind = args.model
    if kind == "perfect":
        if args.k_support is None:
            raise DomainError("--k-support is required for the perfect model")
        return dist.PerfectModel(args.k_support)
    scale = args.sigma if kind == "normal" else args.beta
    if args.from_moments or (args.mu is None and scale is None and logs is not None):
        if args.from_moments:
            if args.mu is None or args.sigma is None:
                raise DomainError("--from-moments needs --mu and --sigma")
            mean, std = args.mu, args.sigma
        else:
            mean, std = float(np.mean(logs)), float(np.std(logs, ddof=1))
        return dist.fit_normal(mean, std) if kind == "normal" else dist.fit_gumbel(mean, std)
    if args.mu is None or scale is None:
        need = "--sigma" if kind == "normal" else "--beta"
        raise DomainError(f"the {kind} model needs --mu and {need}")
    return dist.NormalLogModel(args.mu, scale) if kind == "normal" else dist.GumbelLogModel(args.mu, scale)


def _config(args, **kw) -> RunConfig:
    return RunConfig(f_list=args.f_list or (2.0, 8.0, 32.0), d=getattr(args, "d", 5),
                     delta=getattr(args, "delta", 0.01), fmt=args.fmt, **kw)


def _read(args):
    return ingest(args.path, column=args.column, transform=args.transform,
                  delimiter=args.delimiter, log_input=args.log_input)


def run(args) -> str:
    cmd = args.command
    if cmd == "expected":
        return emit(law_reports(_config(args)), args.fmt)

    if cmd == "analyze":
        s = _read(args)
        cfg = _config(args)
        reports = analyze(s, cfg)
        if args.model:
            args.mu = args.sigma = args.beta = None
            args.from_moments = False
            model = make_model(args, s.logs)
            reports += model_report(model, cfg)
            if args.plot_data:
                write_plot_data(args.plot_data, model, cfg.f_list, cfg.resolution, logs=s.logs)
        return emit(reports, args.fmt)

    if cmd == "model":
        model = make_model(args)
        cfg = _config(args, resolution=args.resolution, j_max=args.j_max)
        if args.plot_data:
            write_plot_data(args.plot_data, model, cfg.f_list, cfg.resolution)
        return emit(model_report(model, cfg), args.fmt)

    if cmd == "ks":
        s = _read(args)
        model = make_model(args, s.logs)
        res = ks_statistic(s.logs, model)
        if args.plot_data:
            write_plot_data(args.plot_data, model, (), logs=s.logs)
        rec = {"source": s.source, "model": model_label(model), "n": res.n,
               "statistic": res.statistic, "d_n": res.d_n, "p_value": res.p_value,
               "max_at": res.max_at, "quantile_ratio": dist.quantile_ratio(model, args.delta)}
        return emit_records([rec], args.fmt)

    if cmd == "variability":
        s = _read(args)
        cfg = _config(args)
        recs = []
        for F in cfg.f_list:
            v = variability(s, F, args.delta)
            recs.append({"source": s.source, "n": len(s), "F": F, "delta": v.delta,
                         "n_removed_each_side": v.n_removed_each_side, "r_delta": v.r_delta,
                         "log_f_r": v.log_f_r, "meets_threshold": v.meets_threshold,
                         "long_enough": len(s) >= 100 * cfg.d, "sigma_log": sigma_log(s)})
        return emit_records(recs, args.fmt)

    if cmd == "perfect-check":
        model = make_model(args)
        recs = []
        for F in args.f_list or (2.0, 8.0, 32.0):
            dev = dist.perfect_deviation(model, F, args.j_max)
            recs.append({"model": model_label(model), "F": F, "ln_F": math.log(F),
                         "j_max": args.j_max, "perfect_deviation": dev,
                         "integral_bound": dist.integral_bound(model, F),
                         "perfect_up_to_j_max": dev == 0.0})
        return emit_records(recs, args.fmt)

    if cmd == "simulate":
        model = make_model(args)
        s = dist.sample(model, args.n, args.seed)
        cfg = _config(args)
        return emit(analyze(s, cfg) + model_report(model, cfg), args.fmt)

    raise DomainError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        text = run(args)
    except IngestFailure as exc:
        print(f"glorq: ingest error ({exc.kind}): {exc}", file=sys.stderr)
        return EXIT_INGEST[exc.kind]
    except EmitError as exc:
        print(f"glorq: write error: {exc}", file=sys.stderr)
        return EXIT_WRITE
    except (GlorqError, ValueError) as exc:
        print(f"glorq: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    try:
        if args.output:
            write_text(text, args.output)
        else:
            sys.stdout.write(text if text.endswith("\n") else text + "\n")
    except EmitError as exc:
        print(f"glorq: write error: {exc}", file=sys.stderr)
        return EXIT_WRITE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
