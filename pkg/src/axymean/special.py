"""Digamma, the Euler-Mascheroni constant and compensated summation."""

from __future__ import annotations

import math
from collections.abc import Iterable

import numpy as np

EULER_GAMMA = 0.57721566490153286060651209008240243

# B_2, B_4, ..., B_14
_BERNOULLI_EVEN = (
    1 / 6,
    -1 / 30,
    1 / 42,
    -1 / 30,
    5 / 66,
    -691 / 2730,
    7 / 6,
)

_ASYMPTOTIC_FROM = 10.0


def euler_gamma() -> float:
    return EULER_GAMMA


_COLUMNS = 4096


def compensated_sum(terms: Iterable[float]) -> float:
    """Compensated sum of a finite stream of floats.

    Iterables go through math.fsum and come back correctly rounded. Large
    numpy arrays are folded column-wise with Neumaier's update first, then the
    column totals and corrections are added exactly.
    """
    if isinstance(terms, np.ndarray) and terms.size > 8 * _COLUMNS:
        return _neumaier_columns(terms.astype(np.float64, copy=False).ravel())
    return math.fsum(terms)


def _neumaier_columns(x: np.ndarray) -> float:
    rows = -(-x.size // _COLUMNS)
    padded = np.zeros(rows * _COLUMNS)
    padded[: x.size] = x
    block = padded.reshape(rows, _COLUMNS)
    total = block[0].copy()
    comp = np.zeros(_COLUMNS)
    for row in block[1:]:
        t = total + row
        big = np.abs(total) >= np.abs(row)
        comp += np.where(big, (total - t) + row, (row - t) + total)
        total = t
    return math.fsum(np.concatenate([total, comp]).tolist())


def digamma(x: float) -> float:
    """psi(x) = Gamma'(x)/Gamma(x) for x > 0.

    Shifts the argument up to x >= 10 with psi(x) = psi(x + 1) - 1/x and then
    uses the asymptotic Bernoulli series through B_14. Absolute error stays
    below 1e-12 on [1e-3, 1e6].
    """
    x = float(x)
    if not x > 0 or math.isinf(x):
        raise ValueError(f"digamma is only defined here for finite x > 0, got {x}")
    shift = []
    while x < _ASYMPTOTIC_FROM:
        shift.append(1.0 / x)
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for k, b in enumerate(_BERNOULLI_EVEN, start=1):
        series += b / (2 * k) * power
        power *= inv2
    return math.fsum([math.log(x), -0.5 / x, -series] + [-s for s in shift])


def trigamma_series(z: float, terms: int) -> float:
    """Truncated sum_{k<K} 1/(z+k)^2 plus the integral tail 1/(z+K) - 1/(2(z+K)^2)."""
    if z <= 0 or terms < 1:
        raise ValueError("need z > 0 and terms >= 1")
    head = math.fsum(1.0 / (z + k) ** 2 for k in range(terms))
    tail_at = z + terms
    return head + 1.0 / tail_at + 0.5 / tail_at**2


def euler_gamma_integral(t_max: int) -> float:
    """gamma from 2 - int_1^inf ({t} + 1)/t^2 dt, truncated at t_max.

    Each unit piece [k, k+1] integrates in closed form to
    log(1 + 1/k) + (1 - k)/(k(k + 1)); the tail beyond t_max is replaced by
    its mean-value estimate 1.5/t_max.
    """
    if t_max < 2:
        raise ValueError("t_max must be at least 2")
    pieces = (math.log1p(1.0 / k) + (1 - k) / (k * (k + 1.0)) for k in range(1, t_max))
    return 2.0 - compensated_sum(pieces) - 1.5 / t_max
