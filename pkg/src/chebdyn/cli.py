"""Command-line surface.

Subcommands: poly, height, average, converge, scan, count, probe, check.
Rationals cross the boundary as exact strings ("3", "-5/3"), never floats.
Report-producing subcommands emit CSV (default) or JSON and can render a
matplotlib figure next to the delimited output via --plot.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .chebyshev import ChebyshevMap, cheb_poly
from .cyclotomic import (
    PreperiodicPoint,
    conjugate_poly,
    cyclotomic_poly,
    real_cyclotomic_poly,
)
from .equidist import (
    CountRow,
    GapRecord,
    Interval,
    arccos_prediction,
    baker_gap_probe,
    count_in_interval,
    count_sweep,
    equidistribution_average,
)
from .exact_arith import (
    ARCH,
    FactorBudget,
    Place,
    PlaceTerm,
    product_formula_check,
)
from .heights import (
    ConvergenceRow,
    galois_average_log_distance,
    global_height,
    height_convergence_experiment,
    local_height_arch_closed,
    local_height_arch_iterative,
    local_height_arch_quadrature,
    local_height_nonarch,
)
from .integrality import SCAN_BUDGET, PlaceSet, ScanRecord, finiteness_scan
from .serialize import records_to_csv, records_to_json

OUTDIR_ENV = "CHEBDYN_OUTDIR"


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational {text!r}") from exc


def _resolve_output(path: Optional[str]) -> Optional[str]:
    if path is None:
        return None
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not os.path.isabs(path):
        return os.path.join(outdir, path)
    return path


def _emit(records, record_type, args) -> None:
    text = (
        records_to_json(records, record_type)
        if args.format == "json"
        else records_to_csv(records, record_type)
    )
    path = _resolve_output(args.output)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _summary_stream(args):
    # keep the record stream clean: summaries go to stderr when records
    # occupy stdout, to stdout otherwise
    return sys.stdout if args.output else sys.stderr


def _add_output_options(p: argparse.ArgumentParser, plot: bool = True) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", help=f"output path (relative paths join ${OUTDIR_ENV})")
    if plot:
        p.add_argument("--plot", help="also render a PNG figure to this path")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="chebdyn", description=__doc__)
    top.add_argument("--seed", type=int, default=0, help="seed for randomized factoring")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="print exact polynomials")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--m", type=int, help="Chebyshev family member")
    group.add_argument("--cyclotomic", type=int, metavar="N")
    group.add_argument("--real-cyclotomic", type=int, metavar="N")
    group.add_argument("--conjugate", type=int, metavar="N")
    p.add_argument("--family", choices=("P", "Q"), default="P")

    p = sub.add_parser("height", help="local and global canonical heights")
    p.add_argument("--alpha", required=True)
    p.add_argument(
        "--method",
        choices=("closed", "iterative", "quadrature", "nonarch", "global"),
        default="closed",
    )
    p.add_argument("--family", choices=("P", "Q"), default="P")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--prime", type=int, help="prime for the nonarch method")
    p.add_argument("--nodes", type=int, default=1 << 16)
    p.add_argument("--tol", type=float, default=1e-12)

    p = sub.add_parser("average", help="Galois-averaged log-distance or measure average")
    p.add_argument("--n", type=int, required=True, metavar="N")
    p.add_argument("--alpha", help="rational target for the log-distance mode")
    p.add_argument("--a", type=int, default=1, help="orbit representative")
    p.add_argument("--place", default="inf")
    p.add_argument("--family", choices=("P", "Q"), default="P")
    p.add_argument("--function", help="library function id for the measure mode")
    p.add_argument("--nodes", type=int, default=1 << 16)

    p = sub.add_parser("converge", help="log-distance averages against the local height")
    p.add_argument("--alpha", required=True)
    p.add_argument("--place", default="inf")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--family", choices=("P", "Q"), default="P")
    p.add_argument("--m", type=int, default=2)
    _add_output_options(p)

    p = sub.add_parser("scan", help="S-integrality finiteness scan")
    p.add_argument("--alpha", required=True)
    p.add_argument("--s", required=True, help="places, e.g. inf,11")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--family", choices=("P", "Q"), default="P")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--trial-limit", type=int, default=SCAN_BUDGET.trial_limit)
    p.add_argument("--rho-iterations", type=int, default=SCAN_BUDGET.rho_iterations)
    _add_output_options(p)

    p = sub.add_parser("count", help="conjugates in a half-open interval")
    p.add_argument("--interval", required=True, help="endpoints, e.g. '0,2'")
    p.add_argument("--n", type=int, help="single order")
    p.add_argument("--nmax", type=int, help="sweep all orders up to this")
    _add_output_options(p)

    p = sub.add_parser("probe", help="closest rational approach to the target angle")
    p.add_argument("--alpha", required=True)
    p.add_argument("--nmax", type=int, required=True)
    _add_output_options(p)

    p = sub.add_parser("check", help="exact product-formula ledger of a rational")
    p.add_argument("--r", required=True, help="nonzero rational")
    _add_output_options(p, plot=False)
    return top


def _cmd_poly(args) -> int:
    if args.m is not None:
        poly = cheb_poly(args.family, args.m)
    elif args.cyclotomic is not None:
        poly = cyclotomic_poly(args.cyclotomic)
    elif args.real_cyclotomic is not None:
        poly = real_cyclotomic_poly(args.real_cyclotomic)
    else:
        poly = conjugate_poly(args.family, args.conjugate)
    print(poly)
    return 0


def _cmd_height(args) -> int:
    alpha = _parse_rational(args.alpha)
    map_ = ChebyshevMap(args.family, args.m)
    if args.method == "closed":
        value = local_height_arch_closed(float(alpha))
    elif args.method == "iterative":
        value = local_height_arch_iterative(float(alpha), map_, args.tol).value
    elif args.method == "quadrature":
        value = local_height_arch_quadrature(float(alpha), args.nodes).value
    elif args.method == "nonarch":
        if args.prime is None:
            raise ValueError("the nonarch method needs --prime")
        value = local_height_nonarch(alpha, args.prime)
    else:
        value = global_height(alpha, map_)
    print(f"{args.method} {value:.12g}")
    return 0


def _cmd_average(args) -> int:
    if args.function:
        res = equidistribution_average(args.n, args.function, args.nodes)
        print(f"average {res.average:.12g}")
        print(f"integral {res.integral:.12g}")
        return 0
    if not args.alpha:
        raise ValueError("need --alpha (log-distance mode) or --function")
    point = PreperiodicPoint.canonical(args.family, args.n, args.a)
    value = galois_average_log_distance(point, _parse_rational(args.alpha), Place.parse(args.place))
    print(f"average {value:.12g}")
    return 0


def _cmd_converge(args) -> int:
    rows = height_convergence_experiment(
        _parse_rational(args.alpha),
        Place.parse(args.place),
        range(args.n_min, args.n_max + 1),
        ChebyshevMap(args.family, args.m),
    )
    _emit(rows, ConvergenceRow, args)
    if args.plot:
        from .plotting import plot_convergence

        plot_convergence(rows, _resolve_output(args.plot), f"alpha={args.alpha} v={args.place}")
    return 0


def _cmd_scan(args) -> int:
    budget = FactorBudget(
        trial_limit=args.trial_limit, rho_iterations=args.rho_iterations, seed=args.seed
    )
    records, summary = finiteness_scan(
        _parse_rational(args.alpha),
        PlaceSet.parse(args.s),
        args.nmax,
        ChebyshevMap(args.family, args.m),
        budget,
    )
    _emit(records, ScanRecord, args)
    stream = _summary_stream(args)
    print(
        f"integral orbits: {summary.final_count} "
        f"(orders {list(summary.member_orders)}), "
        f"stabilized after N = {summary.stabilization_N}, "
        f"{len(summary.indeterminate_orders)} indeterminate",
        file=stream,
    )
    if args.plot:
        from .plotting import plot_scan

        plot_scan(summary, _resolve_output(args.plot), f"alpha={args.alpha} S={args.s}")
    return 0


def _cmd_count(args) -> int:
    c, d = (float(s) for s in args.interval.split(","))
    interval = Interval(c, d)
    if (args.n is None) == (args.nmax is None):
        raise ValueError("give exactly one of --n or --nmax")
    if args.n is not None:
        from .cyclotomic import galois_orbit

        deg = galois_orbit("P", args.n).degree
        print(f"count {count_in_interval(args.n, interval)}")
        print(f"prediction {arccos_prediction(interval, deg):.12g}")
        return 0
    rows = count_sweep(interval, args.nmax)
    _emit(rows, CountRow, args)
    if args.plot:
        from .plotting import plot_count_deviation

        plot_count_deviation(rows, _resolve_output(args.plot), f"I={args.interval}")
    return 0


def _cmd_probe(args) -> int:
    result = baker_gap_probe(_parse_rational(args.alpha), args.nmax)
    _emit(list(result.records), GapRecord, args)
    print(
        f"theta0 {result.theta0:.12g}; fitted exponent "
        f"{result.fitted_exponent:.4g} +- {result.exponent_stderr:.2g}; "
        f"all gaps positive: {result.all_gaps_positive}",
        file=_summary_stream(args),
    )
    if args.plot:
        from .plotting import plot_probe

        plot_probe(result, _resolve_output(args.plot), f"alpha={args.alpha}")
    return 0


def _cmd_check(args) -> int:
    result = product_formula_check(_parse_rational(args.r))
    rows = [
        PlaceTerm(t.place, t.log_value, t.exponents) for t in result.terms
    ]
    _emit(rows, PlaceTerm, args)
    verdict = "exact zero" if result.exact_zero else "NOT ZERO"
    suffix = "" if result.complete else " (factor base incomplete)"
    print(f"product formula: {verdict}{suffix}", file=_summary_stream(args))
    return 0 if result.exact_zero else 1


_DISPATCH = {
    "poly": _cmd_poly,
    "height": _cmd_height,
    "average": _cmd_average,
    "converge": _cmd_converge,
    "scan": _cmd_scan,
    "count": _cmd_count,
    "probe": _cmd_probe,
    "check": _cmd_check,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
