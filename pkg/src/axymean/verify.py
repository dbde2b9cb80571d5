"""Batch checks of the identities and counting oracles, one result row per case."""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import meanvalue as mv
from .counting import Equation, count_bruteforce, count_divisor, r_table, sum_hyperbola

CHECKS = ("lemma5", "lemma6", "mobius", "integral", "oracle")

DEFAULT_TOLERANCE = {
    "lemma5": 1e-9,
    "lemma5_series": 1e-8,  # added to 2a/w
    "lemma6": 2.0,  # bound on w*|lhs - rhs|
    "mobius": 1e-12,
    "integral": None,  # (a + 2)/t_max
    "oracle": 0,
}

LEMMA6_CUTOFFS = (10**3, 10**4, 10**5, 10**6)


@dataclass(frozen=True)
class CheckResult:
    check: str
    a: int
    param: str
    lhs: float
    rhs: float
    gap: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _result(check, a, param, lhs, rhs, gap, tol) -> CheckResult:
    return CheckResult(check, a, str(param), float(lhs), float(rhs), float(gap), float(tol), bool(gap <= tol))


def check_lemma5(a: int, tol: float | None = None, series_w: int = 0) -> list[CheckResult]:
    tol = DEFAULT_TOLERANCE["lemma5"] if tol is None else tol
    rhs = mv.lemma5_rhs(a)
    lhs = mv.lemma5_lhs(a)
    out = [_result("lemma5", a, "digamma", lhs, rhs, abs(lhs - rhs), tol)]
    if series_w:
        series = mv.lemma5_lhs(a, method="series", w=series_w)
        stol = 2 * a / series_w + DEFAULT_TOLERANCE["lemma5_series"]
        out.append(_result("lemma5", a, f"series_w={series_w}", series, rhs, abs(series - rhs), stol))
    return out


def check_lemma6(a: int, tol: float | None = None, cutoffs: Iterable[int] = LEMMA6_CUTOFFS) -> list[CheckResult]:
    tol = DEFAULT_TOLERANCE["lemma6"] if tol is None else tol
    out = []
    for w in cutoffs:
        if w < a:
            continue
        lhs, rhs, scaled = mv.lemma6_check(a, w)
        out.append(_result("lemma6", a, f"w={w}", lhs, rhs, scaled, tol))
    return out


def check_mobius(a: int, tol: float | None = None) -> list[CheckResult]:
    tol = DEFAULT_TOLERANCE["mobius"] if tol is None else tol
    lhs, rhs = mv.mobius_identity_check(a)
    return [_result("mobius", a, "", lhs, rhs, abs(lhs - rhs), tol)]


def check_integral(a: int, tol: float | None = None, t_max: int = 10**5) -> list[CheckResult]:
    t_max = max(t_max, 10 * a)
    tol = (a + 2) / t_max if tol is None else tol
    numeric, closed, _ = mv.integral_identity_check(a, t_max)
    return [_result("integral", a, f"t_max={t_max}", numeric, closed, abs(numeric - closed), tol)]


def check_oracle(a: int, n_max: int = 2000, sum_n_max: int | None = None) -> list[CheckResult]:
    """Counting routes agree exactly for one coefficient a.

    * count_divisor vs count_bruteforce for n <= n_max,
    * the sieve table vs count_divisor for n <= n_max,
    * sum_hyperbola vs prefix sums of the sieve table for N <= sum_n_max (a >= 2),
    * for a <= 5, generalized (b, c) in {1..5}^2 with n <= min(n_max, 500).
    """
    sum_n_max = n_max if sum_n_max is None else sum_n_max
    out = []
    eq = Equation(a)
    table = r_table(eq, n_max)
    bad = 0
    for n in range(n_max + 1):
        d = count_divisor(eq, n)
        bad += d != count_bruteforce(eq, n) or d != table[n]
    cases = n_max + 1
    out.append(_result("oracle", a, f"count n<={n_max}", cases - bad, cases, bad, 0))

    if a >= 2:
        prefix = np.cumsum(r_table(eq, sum_n_max))
        bad = sum(sum_hyperbola(a, N) != prefix[N] for N in range(sum_n_max + 1))
        cases = sum_n_max + 1
        out.append(_result("oracle", a, f"sum N<={sum_n_max}", cases - bad, cases, bad, 0))

    if a <= 5:
        gen_max = min(n_max, 500)
        bad = cases = 0
        for b in range(1, 6):
            for c in range(1, 6):
                geq = Equation(a, b, c)
                gtable = r_table(geq, gen_max)
                for n in range(gen_max + 1):
                    d = count_divisor(geq, n)
                    bad += d != count_bruteforce(geq, n) or d != gtable[n]
                    cases += 1
        out.append(_result("oracle", a, f"general b c<=5 n<={gen_max}", cases - bad, cases, bad, 0))
    return out


def run_checks(
    which: str,
    a_values: Iterable[int],
    *,
    tolerances: dict | None = None,
    n_max: int = 2000,
    t_max: int = 10**5,
    series_w: int = 0,
    threads: int = 1,
    progress: Callable[[str], None] | None = None,
) -> list[CheckResult]:
    """Run one named check (or ``all``) over a range of moduli; rows keep input order."""
    tolerances = tolerances or {}
    names = CHECKS if which == "all" else (which,)
    for name in names:
        if name not in CHECKS:
            raise ValueError(f"unknown check {name!r}; choose from {CHECKS + ('all',)}")
    a_values = list(a_values)

    jobs: list[Callable[[], list[CheckResult]]] = []
    for name in names:
        tol = tolerances.get(name)
        for a in a_values:
            if name == "oracle":
                jobs.append(lambda a=a: check_oracle(a, n_max))
            elif a < 2:
                continue
            elif name == "lemma5":
                jobs.append(lambda a=a, tol=tol: check_lemma5(a, tol, series_w if a <= 30 else 0))
            elif name == "lemma6":
                jobs.append(lambda a=a, tol=tol: check_lemma6(a, tol))
            elif name == "mobius":
                jobs.append(lambda a=a, tol=tol: check_mobius(a, tol))
            else:
                jobs.append(lambda a=a, tol=tol: check_integral(a, tol, t_max))

    def run(i_job):
        i, job = i_job
        res = job()
        if progress and (i + 1) % max(1, len(jobs) // 20) == 0:
            progress(f"verify: {i + 1}/{len(jobs)} cases")
        return res

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(run, enumerate(jobs)))
    else:
        batches = [run(j) for j in enumerate(jobs)]
    return [r for batch in batches for r in batch]


def all_passed(results: Iterable[CheckResult]) -> bool:
    return all(r.passed and math.isfinite(r.gap) for r in results)
