"""Command-line front end: ``axymean {count,sum,constant,scan,verify,fit}``.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 overflow.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import meanvalue as mv
from .arithmetic import CountOverflowError
from .counting import Equation, count_divisor, solutions, sum_bruteforce, sum_hyperbola
from .output import OutputRecord, render
from .verify import CHECKS, all_passed, run_checks

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_OVERFLOW = 0, 1, 2, 3

SCAN_COLUMNS = ["a", "N", "S", "C_a", "main", "delta", "bound", "ratio", "warn_a_large"]
VERIFY_COLUMNS = ["check", "a", "param", "lhs", "rhs", "gap", "tolerance", "passed"]

SOLUTION_LIST_MAX_N = 10**6


class UsageError(Exception):
    pass


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _timed(fn, items):
    rows, timings = [], []
    for item in items:
        t0 = time.perf_counter()
        rows.append(fn(item))
        timings.append((time.perf_counter() - t0) * 1e3)
    return rows, timings


def _threads(args) -> int:
    return args.threads if args.threads > 0 else (os.cpu_count() or 1)


def cmd_count(args) -> tuple[OutputRecord, int]:
    eq = Equation(args.a, args.b, args.c)
    columns = ["a", "b", "c", "n", "R"]
    t0 = time.perf_counter()
    row = {"a": eq.a, "b": eq.b, "c": eq.c, "n": args.n, "R": count_divisor(eq, args.n)}
    if args.verbose >= 1 and args.n <= SOLUTION_LIST_MAX_N:
        columns.append("solutions")
        row["solutions"] = " ".join(f"({x};{y})" for x, y in solutions(eq, args.n))
    elapsed = (time.perf_counter() - t0) * 1e3
    params = {"a": eq.a, "b": eq.b, "c": eq.c, "n": args.n}
    return OutputRecord("count", params, columns, [row], [elapsed]), EXIT_OK


def cmd_sum(args) -> tuple[OutputRecord, int]:
    if args.method == "bruteforce":
        fn = lambda N: sum_bruteforce(Equation(args.a), N)  # noqa: E731
    else:
        if args.a < 2:
            raise UsageError("the hyperbola method needs --a >= 2")
        fn = lambda N: sum_hyperbola(args.a, N, threads=_threads(args))  # noqa: E731
    rows, timings = _timed(lambda N: {"a": args.a, "N": N, "S": fn(N)}, [args.N])
    params = {"a": args.a, "N": args.N, "method": args.method}
    return OutputRecord("sum", params, ["a", "N", "S"], rows, timings), EXIT_OK


def cmd_constant(args) -> tuple[OutputRecord, int]:
    a_max = args.a_max if args.a_max is not None else args.a
    if args.a < 2 or a_max < args.a:
        raise UsageError("need 2 <= --a <= --a-max")

    def row(a):
        return {"a": a, "C_a": mv.constant_c(a), "C_a_corrected": mv.constant_c_corrected(a)}

    rows, timings = _timed(row, range(args.a, a_max + 1))
    params = {"a_min": args.a, "a_max": a_max}
    return OutputRecord("constant", params, ["a", "C_a", "C_a_corrected"], rows, timings), EXIT_OK


def _scan_rows(args):
    if args.a < 2:
        raise UsageError("--a must be at least 2")
    grid = mv.geometric_grid(args.n_min, args.n_max, args.points)
    corrected = args.constant == "corrected"
    threads = _threads(args)
    rows, timings = [], []
    for i, N in enumerate(grid):
        t0 = time.perf_counter()
        rows.append(mv.evaluate_row(args.a, N, corrected=corrected, threads=threads))
        timings.append((time.perf_counter() - t0) * 1e3)
        if len(grid) > 1 and sys.stderr.isatty():
            _progress(f"scan: {i + 1}/{len(grid)} N={N}")
    return grid, rows, timings


def _scan_params(args, grid):
    return {
        "a": args.a,
        "n_min": args.n_min,
        "n_max": args.n_max,
        "points": args.points,
        "constant": args.constant,
        "grid": grid,
    }


def cmd_scan(args) -> tuple[OutputRecord, int]:
    grid, rows, timings = _scan_rows(args)
    out = [
        {
            "a": r.a,
            "N": r.N,
            "S": r.S,
            "C_a": r.c_of_a,
            "main": r.main,
            "delta": r.delta,
            "bound": r.bound,
            "ratio": r.ratio,
            "warn_a_large": r.warn_a_large,
        }
        for r in rows
    ]
    return OutputRecord("scan", _scan_params(args, grid), SCAN_COLUMNS, out, timings), EXIT_OK


def cmd_fit(args) -> tuple[OutputRecord, int]:
    grid, rows, timings = _scan_rows(args)
    fit = mv.fit_error_exponent(rows)
    row = {
        "a": args.a,
        "slope": fit.slope,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "rows_used": fit.rows_used,
    }
    columns = ["a", "slope", "intercept", "r_squared", "rows_used"]
    return OutputRecord("fit", _scan_params(args, grid), columns, [row], timings), EXIT_OK


def _parse_tolerances(items) -> dict:
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or name not in CHECKS:
            raise UsageError(f"--tolerance expects CHECK=VALUE with CHECK in {CHECKS}, got {item!r}")
        try:
            out[name] = float(value)
        except ValueError:
            raise UsageError(f"bad tolerance value in {item!r}") from None
    return out


def cmd_verify(args) -> tuple[OutputRecord, int]:
    if args.a_min < 1 or args.a_max < args.a_min:
        raise UsageError("need 1 <= --a-min <= --a-max")
    tolerances = _parse_tolerances(args.tolerance)
    t0 = time.perf_counter()
    results = run_checks(
        args.which,
        range(args.a_min, args.a_max + 1),
        tolerances=tolerances,
        n_max=args.n_max,
        t_max=args.t_max,
        series_w=args.series_w,
        threads=_threads(args),
        progress=_progress if sys.stderr.isatty() else None,
    )
    elapsed = (time.perf_counter() - t0) * 1e3
    params = {
        "which": args.which,
        "a_min": args.a_min,
        "a_max": args.a_max,
        "n_max": args.n_max,
        "t_max": args.t_max,
        "series_w": args.series_w,
        "tolerance": tolerances,
    }
    record = OutputRecord("verify", params, VERIFY_COLUMNS, [r.as_dict() for r in results], [elapsed])
    return record, EXIT_OK if all_passed(results) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", help="write to this path instead of standard output")
    common.add_argument("--threads", type=int, default=1, help="worker threads, 0 = one per CPU")
    common.add_argument("--no-timings", action="store_true", help="omit the timings footer")

    parser = argparse.ArgumentParser(
        prog="axymean",
        description="Count solutions of a*x*y - x - y = n and check the mean value asymptotics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="R(n) for a*x*y - b*x - c*y = n")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--c", type=int, default=1)
    p.add_argument("-v", "--verbose", action="count", default=0, help="also list the solutions")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sum", parents=[common], help="S_a(N) = sum of R_a(n) over 0 <= n <= N")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--method", choices=("hyperbola", "bruteforce"), default="hyperbola")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("constant", parents=[common], help="the constant C(a) and its corrected value")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--a-max", type=int)
    p.set_defaults(func=cmd_constant)

    for name, func, helptext in (
        ("scan", cmd_scan, "main term and error over a geometric N grid"),
        ("fit", cmd_fit, "fit the growth exponent of |delta| over a scan"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--a", type=int, required=True)
        p.add_argument("--n-min", type=int, default=10**3)
        p.add_argument("--n-max", type=int, default=10**7)
        p.add_argument("--points", type=int, default=9)
        p.add_argument("--constant", choices=("textbook", "corrected"), default="textbook")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", parents=[common], help="run identity and oracle checks")
    p.add_argument("which", choices=CHECKS + ("all",))
    p.add_argument("--a-min", type=int, default=2)
    p.add_argument("--a-max", type=int, default=50)
    p.add_argument("--n-max", type=int, default=2000, help="oracle range for n and N")
    p.add_argument("--t-max", type=int, default=10**5, help="integral truncation point")
    p.add_argument("--series-w", type=int, default=0, help="also check lemma5 via the series at this cutoff (a <= 30)")
    p.add_argument("--tolerance", action="append", metavar="CHECK=VALUE")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        record, code = args.func(args)
    except CountOverflowError as exc:
        print(f"axymean: overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (UsageError, ValueError) as exc:
        print(f"axymean {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(record, args.format, timings=not args.no_timings)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
