"""Exact integer arithmetic: factorization, multiplicative functions, progressions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate

import numpy as np

INT63_MAX = 2**63 - 1
U64_MAX = 2**64 - 1

TRIAL_LIMIT = 10**6

# Deterministic for n < 3.3e24, which covers every 64-bit input.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class CountOverflowError(OverflowError):
    """A count or an intermediate value left the 64-bit range."""


def check_u64(value: int) -> int:
    if value < 0 or value > U64_MAX:
        raise CountOverflowError(f"value {value} outside unsigned 64-bit range")
    return value


def check_i63(value: int, what: str = "value") -> int:
    if value > INT63_MAX:
        raise CountOverflowError(f"{what} = {value} exceeds 2**63 - 1")
    return value


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __int__(self) -> int:
        return self.value


@lru_cache(maxsize=1)
def _small_primes() -> list[int]:
    sieve = np.ones(TRIAL_LIMIT + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(TRIAL_LIMIT) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).tolist()


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 0 <= n < 2**64."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard rho failed on {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


def factorize(m: int) -> Factorization:
    """Factor 1 <= m <= 2**63 - 1.

    Trial division by the primes below 10**6, then Miller-Rabin and
    Pollard-Brent rho on whatever cofactor remains.
    """
    m = int(m)
    if m < 1:
        raise ValueError(f"factorize needs m >= 1, got {m}")
    check_i63(m, "m")
    found: dict[int, int] = {}
    rest = m
    for p in _small_primes():
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            found[p] = e
    if rest > 1:
        if rest <= TRIAL_LIMIT**2:
            found[rest] = found.get(rest, 0) + 1
        else:
            _split(rest, found)
    return Factorization(m, tuple(sorted(found.items())))


def _as_factorization(f: Factorization | int) -> Factorization:
    return f if isinstance(f, Factorization) else factorize(f)


def divisors(f: Factorization | int) -> list[int]:
    f = _as_factorization(f)
    divs = [1]
    for p, e in f.factors:
        powers = list(accumulate([p] * e, lambda acc, q: acc * q))
        divs = divs + [d * pk for d in divs for pk in powers]
    return sorted(divs)


def divisor_count(f: Factorization | int) -> int:
    return math.prod(e + 1 for _, e in _as_factorization(f).factors)


def euler_phi(f: Factorization | int) -> int:
    f = _as_factorization(f)
    return math.prod((p - 1) * p ** (e - 1) for p, e in f.factors)


def moebius(f: Factorization | int) -> int:
    f = _as_factorization(f)
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def count_in_progression(x: int, a: int, r: int) -> int:
    """Number of 1 <= v <= x with v = r (mod a).

    For r = a - 1 this is floor((x + 1) / a).
    """
    if a < 1 or not 0 <= r < a:
        raise ValueError(f"need a >= 1 and 0 <= r < a, got a={a}, r={r}")
    if x <= 0:
        return 0
    if r == 0:
        return x // a
    return (x - r) // a + 1 if x >= r else 0


def multiplicative_order(g: int, n: int, group_order: int | None = None) -> int:
    """Order of g in (Z/nZ)*; ``group_order`` must be a multiple of it."""
    if math.gcd(g, n) != 1:
        raise ValueError(f"{g} is not a unit mod {n}")
    order = euler_phi(n) if group_order is None else group_order
    for p, _ in factorize(order).factors:
        while order % p == 0 and pow(g, order // p, n) == 1:
            order //= p
    return order


def primitive_root(p_e: int) -> int:
    """Smallest-root-lifted generator of (Z/p^e Z)* for an odd prime power p^e <= 2**31."""
    if p_e > 2**31:
        raise ValueError(f"modulus {p_e} above supported 2**31")
    f = factorize(p_e) if p_e >= 2 else None
    if f is None or len(f.factors) != 1 or f.factors[0][0] == 2:
        raise ValueError(f"{p_e} is not an odd prime power")
    p, e = f.factors[0]
    g = 2
    while multiplicative_order(g, p, p - 1) != p - 1:
        g += 1
    if e > 1 and pow(g, p - 1, p * p) == 1:
        g += p
    return g
