"""Command-line front end: ``ctpareto {describe,fit,compare,validate,sample,curve}``."""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import __version__
from .core import CtpDistribution, InvalidDistributionError, ParetoBase, validity_check
from .datasets import DatasetError, DatasetSource, describe, load
from .estimation import FitConfig, FitResult, Sample, fit, fit_many
from .families import MODIFIED_SET, ORIGINAL_SET, get_family, region_contains, to_delta
from .report import build_report, format_table

EXIT_OK, EXIT_INPUT, EXIT_NONCONVERGED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _add_data_args(p, required=True):
    p.add_argument("--data", required=required, help="'wheaton' or a path to a delimited text file")
    p.add_argument("--column", type=int, default=0, help="0-based numeric column (default 0)")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--header", action="store_true", help="skip the first non-comment row")
    p.add_argument("--year-column", type=int, default=None)
    p.add_argument("--filter-year", type=int, default=None, help="keep rows whose year column equals this")


def _add_fit_args(p):
    p.add_argument("--starts", type=int, default=FitConfig.n_starts)
    p.add_argument("--max-iterations", type=int, default=FitConfig.max_iterations)
    p.add_argument("--seed", type=int, default=FitConfig.seed)
    p.add_argument(
        "--allow-invalid",
        action="store_true",
        help="do not require a nonnegative mixing density (reproduces unconstrained fits)",
    )
    p.add_argument("--json", action="store_true", help="print the JSON report instead of the table")
    p.add_argument("--output-json", metavar="PATH", help="also write the JSON report here")
    p.add_argument("--no-timestamp", action="store_true")


def _add_dist_args(p):
    p.add_argument("--family", help="family id, e.g. mg, r23, pareto")
    p.add_argument("--params", type=_floats, default=None, help="family coordinates, comma-separated")
    p.add_argument("--delta", type=_floats, default=None, help="delta1,delta2 instead of a family")
    p.add_argument("--alpha", type=float)
    p.add_argument("--x0", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ctpareto", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("describe", help="six-number summary of a dataset")
    _add_data_args(p)

    p = sub.add_parser("fit", help="fit one family")
    p.add_argument("--family", required=True)
    _add_data_args(p)
    _add_fit_args(p)

    p = sub.add_parser("compare", help="fit several families and rank them")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--set", choices=("original", "modified"))
    group.add_argument("--families", help="comma-separated family ids")
    _add_data_args(p)
    _add_fit_args(p)

    p = sub.add_parser("validate", help="check the mixing density of (delta1, delta2)")
    p.add_argument("delta1", type=float)
    p.add_argument("delta2", type=float)

    p = sub.add_parser("sample", help="draw values, one per line")
    _add_dist_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    p = sub.add_parser("curve", help="tab-separated (x, value) rows of pdf/cdf/survival/hazard")
    _add_dist_args(p)
    p.add_argument("--what", choices=("pdf", "cdf", "survival", "hazard"), default="pdf")
    p.add_argument("--range", nargs=2, type=float, metavar=("A", "B"), required=True)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--unchecked", action="store_true", help="allow an invalid distribution")
    p.add_argument("--fit-data", help="fit --family on this dataset first ('wheaton' or a path)")
    p.add_argument("--seed", type=int, default=FitConfig.seed)
    p.add_argument("--starts", type=int, default=FitConfig.n_starts)
    p.add_argument("--allow-invalid", action="store_true")
    return parser


def _source(args) -> DatasetSource:
    return DatasetSource.parse(
        args.data,
        column=args.column,
        delimiter=args.delimiter,
        header=args.header,
        year_column=args.year_column,
        year=args.filter_year,
    )


def _config(args) -> FitConfig:
    return FitConfig(
        n_starts=args.starts,
        max_iterations=getattr(args, "max_iterations", FitConfig.max_iterations),
        seed=args.seed,
        require_valid=not args.allow_invalid,
    )


def _print_certificate(cert, out=None):
    verdict = "valid" if cert.is_valid else "invalid"
    print(f"{verdict}: min r(t) = {cert.min_value:.12g} at t = {cert.argmin_t:.12g}", file=out or sys.stdout)


def _cmd_describe(args) -> int:
    s = describe(load(_source(args)))
    for name, value in s._asdict().items():
        print(f"{name}\t{value:.6g}")
    return EXIT_OK


def _run_fits(args, families) -> int:
    source = _source(args)
    values = load(source)
    sample = Sample(values)
    config = _config(args)
    fits = fit_many(families, sample, config)
    report = build_report(source.descriptor, sample, describe(values), fits, config, not args.no_timestamp)
    text = report.to_json()
    if args.output_json:
        with open(args.output_json, "w") as fh:
            fh.write(text)
    if args.json:
        sys.stdout.write(text)
    else:
        print(format_table(report))
        for f in fits:
            if isinstance(f, FitResult):
                spec = get_family(f.family)
                params = ", ".join(f"{n}={v:.4g}" for n, v in zip(spec.param_names, f.params_hat))
                print(f"{spec.label}: x0={f.x0_hat:g} alpha={f.alpha_hat:.4g} {params}".rstrip())
    return EXIT_OK if report.all_converged else EXIT_NONCONVERGED


def _cmd_fit(args) -> int:
    return _run_fits(args, [get_family(args.family).id])


def _cmd_compare(args) -> int:
    if args.set == "original":
        families = list(ORIGINAL_SET)
    elif args.set == "modified":
        families = list(MODIFIED_SET)
    else:
        families = [get_family(f.strip()).id for f in args.families.split(",") if f.strip()]
    if len(families) < 2:
        raise ValueError("compare needs at least two families")
    return _run_fits(args, families)


def _cmd_validate(args) -> int:
    _print_certificate(validity_check((args.delta1, args.delta2)))
    return EXIT_OK


def _distribution(args, unchecked=False) -> CtpDistribution:
    if getattr(args, "fit_data", None):
        if not args.family:
            raise ValueError("--fit-data needs --family")
        config = FitConfig(n_starts=args.starts, seed=args.seed, require_valid=not args.allow_invalid)
        res = fit(args.family, load(DatasetSource.parse(args.fit_data)), config)
        return res.distribution()
    if args.alpha is None or args.x0 is None:
        raise ValueError("--alpha and --x0 are required")
    if args.delta is not None:
        if len(args.delta) != 2:
            raise ValueError("--delta takes exactly two values")
        delta = tuple(args.delta)
    elif args.family:
        spec = get_family(args.family)
        params = args.params or []
        if not region_contains(spec, params):
            print(f"warning: parameters lie outside the {spec.label} region", file=sys.stderr)
        delta = to_delta(spec, params)
    else:
        raise ValueError("give --family/--params or --delta")
    base = ParetoBase(args.x0, args.alpha)
    if unchecked:
        return CtpDistribution.unchecked(base, delta)
    return CtpDistribution(base, delta)


def _cmd_sample(args) -> int:
    try:
        dist = _distribution(args)
    except InvalidDistributionError as exc:
        _print_certificate(exc.certificate, sys.stderr)
        return EXIT_INPUT
    for v in dist.sample(args.n, args.seed).tolist():
        sys.stdout.write(f"{v!r}\n")
    return EXIT_OK


def _cmd_curve(args) -> int:
    if args.steps < 2:
        raise ValueError("--steps must be >= 2")
    try:
        dist = _distribution(args, unchecked=args.unchecked)
    except InvalidDistributionError as exc:
        _print_certificate(exc.certificate, sys.stderr)
        return EXIT_INPUT
    a, b = args.range
    xs = np.linspace(a, b, args.steps)
    ys = np.atleast_1d(getattr(dist, args.what)(xs))
    sys.stdout.writelines(f"{x!r}\t{y!r}\n" for x, y in zip(xs.tolist(), ys.tolist()))
    return EXIT_OK


_COMMANDS = {
    "describe": _cmd_describe,
    "fit": _cmd_fit,
    "compare": _cmd_compare,
    "validate": _cmd_validate,
    "sample": _cmd_sample,
    "curve": _cmd_curve,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return _COMMANDS[args.command](args)
    except (DatasetError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
