"""Exact counts of solutions of a*x*y - b*x - c*y = n in positive integers.

Three independent routes are provided:

* ``count_bruteforce`` scans x straight from the definition,
* ``count_divisor`` factors a*n + b*c and keeps the divisors u with
  u = -c and (a*n + b*c)/u = -b (mod a), since (ax - c)(ay - b) = a*n + b*c,
* ``sum_hyperbola`` counts lattice points u*v <= a*N + 1 with u = v = -1 (mod a)
  by the Dirichlet hyperbola method in O(sqrt(a*N)/a) steps.

``r_table`` is a divisor-pair sieve giving every R(n), n <= N, at once.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .arithmetic import (
    check_i63,
    check_u64,
    count_in_progression,
    divisors,
    factorize,
)

BRUTEFORCE_MAX_N = 10**8
SUM_BRUTEFORCE_MAX_N = 10**6

_HYPERBOLA_CHUNK = 1 << 18


@dataclass(frozen=True)
class Equation:
    """a*x*y - b*x - c*y = n, equivalently (a*x - c)(a*y - b) = a*n + b*c."""

    a: int
    b: int = 1
    c: int = 1

    def __post_init__(self):
        if self.a < 1 or self.b < 1 or self.c < 1:
            raise ValueError(f"coefficients must be positive, got {self}")

    @property
    def standard(self) -> bool:
        return self.b == 1 and self.c == 1

    def target(self, n: int) -> int:
        if n < 0:
            raise ValueError(f"n must be nonnegative, got {n}")
        return check_i63(self.a * n + self.b * self.c, "a*n + b*c")


def _eq(eq: Equation | int) -> Equation:
    return eq if isinstance(eq, Equation) else Equation(int(eq))


def count_bruteforce(eq: Equation | int, n: int) -> int:
    """Number of (x, y) in N^2 with a*x*y - b*x - c*y = n, by scanning x.

    For each x with a*x > c, y = (n + b*x)/(a*x - c) must be a positive
    integer; a*x - c <= a*n + b*c bounds the scan.
    """
    eq = _eq(eq)
    target = eq.target(n)
    if n > BRUTEFORCE_MAX_N:
        raise ValueError(f"brute force is limited to n <= {BRUTEFORCE_MAX_N}")
    a, b, c = eq.a, eq.b, eq.c
    x_max = (target + c) // a
    x = np.arange(1, x_max + 1, dtype=np.int64)
    den = a * x - c
    x, den = x[den > 0], den[den > 0]
    return int(np.count_nonzero((n + b * x) % den == 0))


def solutions(eq: Equation | int, n: int) -> list[tuple[int, int]]:
    """All solutions (x, y), ordered by x, via the divisors of a*n + b*c."""
    eq = _eq(eq)
    target = eq.target(n)
    a, b, c = eq.a, eq.b, eq.c
    out = []
    for u in divisors(factorize(target)):
        v = target // u
        if (u + c) % a == 0 and (v + b) % a == 0:
            out.append(((u + c) // a, (v + b) // a))
    return out


def count_divisor(eq: Equation | int, n: int) -> int:
    eq = _eq(eq)
    target = eq.target(n)
    a, b, c = eq.a, eq.b, eq.c
    count = 0
    for u in divisors(factorize(target)):
        if (u + c) % a:
            continue
        if eq.standard:
            # u*v = 1 (mod a) and u = -1 force v = -1.
            assert (target // u + b) % a == 0
        elif (target // u + b) % a:
            continue
        count += 1
    return check_u64(count)


def r_table(eq: Equation | int, N: int) -> np.ndarray:
    """R(n) for n = 0..N from a sieve over divisor pairs (u, v), u = -c, v = -b (mod a)."""
    eq = _eq(eq)
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N > SUM_BRUTEFORCE_MAX_N:
        raise ValueError(f"the sieve is limited to N <= {SUM_BRUTEFORCE_MAX_N}")
    a, b, c = eq.a, eq.b, eq.c
    top = eq.target(N)
    counts = np.zeros(top + 1, dtype=np.int32)
    u0 = (-c) % a or a
    v0 = (-b) % a or a
    for u in range(u0, top // v0 + 1, a):
        counts[u * v0 :: u * a] += 1
    return counts[b * c :: a][: N + 1].astype(np.int64)


def sum_bruteforce(eq: Equation | int, N: int) -> int:
    """S(N) = sum_{0 <= n <= N} R(n), oracle scale (N <= 10**6)."""
    return check_u64(int(r_table(eq, N).sum()))


def _hyperbola_partial(M: int, a: int, lo: int, hi: int) -> int:
    """sum of floor((floor(M/u) + 1)/a) over u = a-1 (mod a), lo <= u < hi."""
    first = lo + ((a - 1 - lo) % a)
    if first >= hi:
        return 0
    if (hi - first) // a < 64:
        return sum((M // u + 1) // a for u in range(first, hi, a))
    u = np.arange(first, hi, a, dtype=np.int64)
    q = np.int64(M) // u
    # floor((q + 1)/a) without forming q + 1, which may overflow int64.
    vals = q // a + ((q % a) == a - 1)
    return sum(vals.tolist())


def sum_hyperbola(a: int, N: int, threads: int = 1) -> int:
    """S_a(N) for the standard equation a*x*y - x - y = n by the hyperbola method.

    With M = a*N + 1 and C(x) the count of v <= x with v = -1 (mod a),
    S = 2 * sum_{u <= sqrt(M), u = -1 (a)} C(M // u) - C(isqrt(M))**2.
    Integer arithmetic throughout, so chunking over ``threads`` is exact.
    """
    if a < 2:
        raise ValueError(f"sum_hyperbola needs a >= 2, got {a}")
    if N < 0:
        raise ValueError("N must be nonnegative")
    M = check_i63(a * N + 1, "M = a*N + 1")
    root = math.isqrt(M)
    hi = root + 1
    bounds = [(lo, min(lo + _HYPERBOLA_CHUNK, hi)) for lo in range(1, hi, _HYPERBOLA_CHUNK)]
    if threads <= 1 or len(bounds) < 2:
        total = sum(_hyperbola_partial(M, a, lo, up) for lo, up in bounds)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            total = sum(pool.map(lambda lh: _hyperbola_partial(M, a, *lh), bounds))
    small = count_in_progression(root, a, a - 1)
    return check_u64(2 * total - small * small)
