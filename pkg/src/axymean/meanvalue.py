"""Mean value of R_a(n): main term, constant, error rows and identity checks.

S_a(N) = sum_{0<=n<=N} R_a(n) is compared with (1/a)(N log N - C(a) N), where
C(a) = 2 psi((a-1)/a) + 2 sum_{p|a} log p/(p-1) + log a + 2 gamma + 1.

That constant drops the 2 gamma and Euler-factor terms of the double-pole
residue; the value that actually matches S_a(N) is
C*(a) = 2 psi((a-1)/a) + log a + 1, exposed as ``constant_c_corrected``.
Every row-producing function takes ``corrected=`` to choose between them.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .arithmetic import divisors, euler_phi, factorize, moebius
from .characters import build_character_group, l_one_digamma, l_one_series
from .counting import sum_bruteforce, sum_hyperbola
from .special import compensated_sum, digamma, euler_gamma

LEMMA5_IMAG_TOL = 1e-10


def _require_modulus(a: int) -> None:
    if a < 2:
        raise ValueError(f"a must be at least 2 (a = 1 is the divisor problem), got {a}")


def prime_log_sum(a: int) -> float:
    """sum over primes p | a of log p / (p - 1)."""
    return compensated_sum(math.log(p) / (p - 1) for p in factorize(a).primes)


def constant_c(a: int) -> float:
    _require_modulus(a)
    return compensated_sum(
        [
            2 * digamma((a - 1) / a),
            2 * prime_log_sum(a),
            math.log(a),
            2 * euler_gamma(),
            1.0,
        ]
    )


def constant_c_corrected(a: int) -> float:
    _require_modulus(a)
    return compensated_sum([2 * digamma((a - 1) / a), math.log(a), 1.0])


def _constant(a: int, corrected: bool) -> float:
    return constant_c_corrected(a) if corrected else constant_c(a)


def main_term(a: int, N: float, *, corrected: bool = False) -> float:
    """(1/a)(N ln N - C(a) N)."""
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    return (N * math.log(N) - _constant(a, corrected) * N) / a


def error_bound(a: int, N: int) -> float:
    """phi(a) sqrt(N/a) (ln aN)^2, the error shape with implied constant 1."""
    return euler_phi(a) * math.sqrt(N / a) * math.log(a * N) ** 2


def a_too_large(a: int, N: int) -> bool:
    """True when a exceeds N^(1/3)/ln N, where the main term stops dominating."""
    if N <= 1:
        return True
    return a > N ** (1 / 3) / math.log(N)


@dataclass(frozen=True)
class MeanValueRow:
    a: int
    N: int
    S: int
    c_of_a: float
    main: float
    delta: float
    bound: float
    ratio: float
    warn_a_large: bool

    def as_dict(self) -> dict:
        return asdict(self)


def evaluate_row(
    a: int, N: int, *, corrected: bool = False, method: str = "hyperbola", threads: int = 1
) -> MeanValueRow:
    _require_modulus(a)
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    if method == "hyperbola":
        S = sum_hyperbola(a, N, threads=threads)
    elif method == "bruteforce":
        S = sum_bruteforce(a, N)
    else:
        raise ValueError(f"unknown method {method!r}")
    c = _constant(a, corrected)
    main = (N * math.log(N) - c * N) / a
    delta = S - main
    bound = error_bound(a, N)
    return MeanValueRow(a, N, S, c, main, delta, bound, abs(delta) / bound, a_too_large(a, N))


def geometric_grid(n_min: int, n_max: int, points: int) -> list[int]:
    """Integer, strictly increasing, roughly geometric grid from n_min to n_max."""
    if n_min < 1 or n_max < n_min or points < 1:
        raise ValueError("need 1 <= n_min <= n_max and points >= 1")
    if points == 1:
        return [n_min]
    return sorted({int(round(x)) for x in np.geomspace(n_min, n_max, points)})


def scan(a: int, grid, *, corrected: bool = False, threads: int = 1) -> list[MeanValueRow]:
    """One row per N, in grid order; rows are independent so they may run in parallel."""
    grid = list(grid)
    if any(x >= y for x, y in zip(grid, grid[1:])):
        raise ValueError("the N grid must be strictly increasing")
    if threads > 1 and len(grid) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda N: evaluate_row(a, N, corrected=corrected), grid))
    return [evaluate_row(a, N, corrected=corrected) for N in grid]


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    r_squared: float
    rows_used: int


def fit_error_exponent(rows) -> ExponentFit:
    """Least-squares fit of ln|delta| = slope * ln N + intercept."""
    rows = list(rows)
    if len({r.a for r in rows}) > 1:
        raise ValueError("all rows must share the same a")
    used = [r for r in rows if r.delta != 0]
    if len(used) < 4:
        raise ValueError(f"need at least 4 rows with nonzero delta, got {len(used)}")
    x = np.log([float(r.N) for r in used])
    y = np.log([abs(r.delta) for r in used])
    if np.ptp(x) == 0:
        raise ValueError("rows must span more than one N")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(np.sum(resid**2))
    r2 = 1.0 if ss_tot <= 1e-30 * max(1.0, float(np.sum(y**2))) else 1.0 - ss_res / ss_tot
    return ExponentFit(float(slope), float(intercept), r2, len(used))


# Identity checks


def lemma5_lhs(a: int, *, method: str = "digamma", w: int = 10**7) -> float:
    """(1/phi(a)) sum_{chi != chi_0} conj(chi)(-1) L(1, chi), summed over the characters."""
    _require_modulus(a)
    group = build_character_group(a)
    terms = []
    for chi in group.characters():
        if chi.is_principal:
            continue
        L = l_one_digamma(chi) if method == "digamma" else l_one_series(chi, w)
        terms.append(chi.parity() * L)
    total = complex(
        compensated_sum(t.real for t in terms), compensated_sum(t.imag for t in terms)
    ) / group.order
    if abs(total.imag) > LEMMA5_IMAG_TOL:
        raise ArithmeticError(f"character sum for a={a} is not real: {total}")
    return total.real


def lemma5_rhs(a: int) -> float:
    _require_modulus(a)
    bracket = compensated_sum(
        [digamma((a - 1) / a), prime_log_sum(a), math.log(a), euler_gamma()]
    )
    return -bracket / a


class Lemma6Check(NamedTuple):
    lhs: float
    rhs: float
    scaled_gap: float


def lemma6_check(a: int, w: float) -> Lemma6Check:
    """Reciprocals of n = -1 (mod a) up to w against (1/a)(ln w - psi((a-1)/a) - ln a)."""
    _require_modulus(a)
    if w < a:
        raise ValueError(f"w must be at least a, got w={w}")
    n = np.arange(a - 1, math.floor(w) + 1, a, dtype=np.float64)
    lhs = compensated_sum(1.0 / n)
    rhs = (math.log(w) - digamma((a - 1) / a) - math.log(a)) / a
    return Lemma6Check(lhs, rhs, w * abs(lhs - rhs))


class IdentityCheck(NamedTuple):
    lhs: float
    rhs: float


def mobius_identity_check(a: int) -> IdentityCheck:
    """-sum_{m|a} mu(m) ln m / m against (phi(a)/a) sum_{p|a} ln p/(p-1)."""
    _require_modulus(a)
    f = factorize(a)
    lhs = -compensated_sum(moebius(m) * math.log(m) / m for m in divisors(f) if m > 1)
    rhs = euler_phi(f) / a * prime_log_sum(a)
    return IdentityCheck(lhs, rhs)


class IntegralCheck(NamedTuple):
    numeric: float
    closed: float
    tail_bound: float


def _sawtooth(a: int, t):
    """a {(t+1)/a} - {t} - 1."""
    t = np.asarray(t, dtype=np.float64)
    return a * np.mod((t + 1) / a, 1.0) - np.mod(t, 1.0) - 1


def integral_pieces(a: int, t_lo: int, t_hi: int) -> float:
    """int_{t_lo}^{t_hi} (a{(t+1)/a} - {t} - 1)/t^2 dt for integers 1 <= t_lo < t_hi.

    On [k, k+1) the integrand numerator is the constant ((k+1) mod a) - 1, so
    every unit piece integrates exactly to that constant times 1/(k(k+1)).
    """
    k = np.arange(t_lo, t_hi, dtype=np.float64)
    height = np.mod(np.arange(t_lo, t_hi) + 1, a) - 1
    return compensated_sum(height / (k * (k + 1.0)))


def integral_identity_check(a: int, t_max: int) -> IntegralCheck:
    """int_1^inf (a{(t+1)/a} - {t} - 1) dt/t^2 against psi((a-1)/a) + ln a + gamma.

    The part beyond t_max is estimated by the period mean (a-3)/2 over t_max
    and bounded in absolute value by max(1, a-2)/t_max.
    """
    _require_modulus(a)
    if t_max < 10 * a:
        raise ValueError(f"t_max must be at least 10a, got {t_max}")
    t_max = int(t_max)
    numeric = integral_pieces(a, 1, t_max) + (a - 3) / 2 / t_max
    closed = compensated_sum([digamma((a - 1) / a), math.log(a), euler_gamma()])
    return IntegralCheck(numeric, closed, max(1, a - 2) / t_max)


def midpoint_integral(a: int, t_lo: float, t_hi: float, steps: int) -> float:
    """Midpoint rule for the same integrand evaluated from fractional parts directly."""
    h = (t_hi - t_lo) / steps
    t = t_lo + h * (np.arange(steps) + 0.5)
    return compensated_sum(_sawtooth(a, t) / t**2) * h
