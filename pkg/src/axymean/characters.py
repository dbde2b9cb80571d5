"""Dirichlet characters modulo a and their L-values at s = 1.

The unit group (Z/aZ)* is split by CRT into cyclic factors, one per odd prime
power (generated by a primitive root) and at most two for the power of 2.
A character is an exponent vector (c_1, ..., c_k) against those generators, and
chi(u) = exp(2 pi i * sum c_i e_i(u) / d_i) where e(u) is the discrete log of u.
Values are carried exactly as rotations n / L with L the group exponent.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from .arithmetic import euler_phi, factorize, primitive_root
from .special import compensated_sum, digamma

MAX_MODULUS = 10**5


@dataclass(frozen=True)
class _Component:
    modulus: int  # prime power q
    generator: int  # generator mod q
    order: int
    logs: dict[int, int]  # residue mod q -> exponent


def _cyclic_component(q: int, g: int, order: int) -> _Component:
    logs, x = {}, 1
    for k in range(order):
        logs[x] = k
        x = x * g % q
    return _Component(q, g, order, logs)


def _two_power_components(e: int) -> list[_Component]:
    q = 2**e
    if e == 1:
        return []
    if e == 2:
        return [_cyclic_component(4, 3, 2)]
    # (Z/2^e)* = <-1> x <5>; the -1 factor is recorded separately below.
    half = 2 ** (e - 2)
    sign_logs = {}
    five_logs = {}
    x = 1
    for k in range(half):
        five_logs[x] = k
        sign_logs[x] = 0
        five_logs[q - x] = k
        sign_logs[q - x] = 1
        x = x * 5 % q
    return [_Component(q, q - 1, 2, sign_logs), _Component(q, 5, half, five_logs)]


def _crt_lift(residue: int, q: int, a: int) -> int:
    """The element congruent to residue mod q and to 1 mod a/q."""
    rest = a // q
    if rest == 1:
        return residue % a
    # x = 1 + rest * t with rest * t = residue - 1 (mod q)
    t = (residue - 1) * pow(rest, -1, q) % q
    return (1 + rest * t) % a


@dataclass(frozen=True)
class CharacterGroup:
    """Character group of (Z/aZ)*, immutable after construction."""

    modulus: int
    generators: tuple[tuple[int, int], ...]
    exponent: int
    dlog_table: np.ndarray = field(repr=False, compare=False)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.generators)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    def dlog(self, u: int) -> tuple[int, ...] | None:
        row = self.dlog_table[u % self.modulus]
        if self.generators and row[0] < 0:
            return None
        if not self.generators and math.gcd(u, self.modulus) != 1:
            return None
        return tuple(int(e) for e in row)

    def units(self) -> list[int]:
        return [u for u in range(1, self.modulus + 1) if math.gcd(u, self.modulus) == 1]

    def principal(self) -> DirichletCharacter:
        return DirichletCharacter(self, (0,) * len(self.generators))

    def characters(self) -> Iterator[DirichletCharacter]:
        for exps in product(*(range(d) for d in self.orders)):
            yield DirichletCharacter(self, tuple(exps))

    def __len__(self) -> int:
        return self.order


def build_character_group(a: int) -> CharacterGroup:
    if not 2 <= a <= MAX_MODULUS:
        raise ValueError(f"modulus must lie in [2, {MAX_MODULUS}], got {a}")
    return _build(a)


@lru_cache(maxsize=256)
def _build(a: int) -> CharacterGroup:
    comps: list[_Component] = []
    for p, e in factorize(a).factors:
        if p == 2:
            comps.extend(_two_power_components(e))
        else:
            q = p**e
            comps.append(_cyclic_component(q, primitive_root(q), euler_phi(q)))

    table = np.full((a, len(comps)), -1, dtype=np.int64)
    units = np.array([u for u in range(a) if math.gcd(u, a) == 1], dtype=np.int64)
    for i, comp in enumerate(comps):
        table[units, i] = [comp.logs[int(u) % comp.modulus] for u in units]

    gens = tuple((_crt_lift(c.generator, c.modulus, a), c.order) for c in comps)
    exponent = math.lcm(*(c.order for c in comps)) if comps else 1
    table.setflags(write=False)
    return CharacterGroup(a, gens, exponent, table)


def _rotation_to_complex(num: int, den: int) -> complex:
    g = math.gcd(num, den)
    num, den = num // g, den // g
    if den == 1:
        return 1 + 0j
    if den == 2:
        return -1 + 0j
    if den == 4:
        return 1j if num == 1 else -1j
    return cmath.exp(2j * math.pi * num / den)


@dataclass(frozen=True)
class DirichletCharacter:
    group: CharacterGroup
    exponents: tuple[int, ...]

    @property
    def modulus(self) -> int:
        return self.group.modulus

    @property
    def is_principal(self) -> bool:
        return all(c == 0 for c in self.exponents)

    def rotation(self, m: int) -> int | None:
        """chi(m) as the numerator n of exp(2 pi i n / L); None off the units."""
        logs = self.group.dlog(m)
        if logs is None:
            return None
        L = self.group.exponent
        return sum(c * e * (L // d) for c, e, d in zip(self.exponents, logs, self.group.orders)) % L

    def __call__(self, m: int) -> complex:
        r = self.rotation(m)
        return 0j if r is None else _rotation_to_complex(r, self.group.exponent)

    def rotations(self) -> np.ndarray:
        """Rotation numerators for residues 0..a-1, -1 marking non-units."""
        g = self.group
        L = g.exponent
        if not g.generators:
            out = np.zeros(g.modulus, dtype=np.int64)
        else:
            weights = np.array([c * (L // d) for c, d in zip(self.exponents, g.orders)], dtype=np.int64)
            out = (g.dlog_table @ weights) % L
        nonunit = np.array([math.gcd(u, g.modulus) != 1 for u in range(g.modulus)])
        out[nonunit] = -1
        return out

    def values(self) -> np.ndarray:
        """chi(r) for r = 0..a-1 as complex floats."""
        rot = self.rotations()
        L = self.group.exponent
        vals = np.array([0j if r < 0 else _rotation_to_complex(int(r), L) for r in rot])
        return vals

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(
            self.group, tuple((-c) % d for c, d in zip(self.exponents, self.group.orders))
        )

    def parity(self) -> int:
        r = self.rotation(self.modulus - 1)
        # chi(-1)^2 = 1, so the rotation is 0 or L/2.
        return 1 if r == 0 else -1


def evaluate(chi: DirichletCharacter, m: int) -> complex:
    return chi(m)


def parity(chi: DirichletCharacter) -> int:
    return chi.parity()


def _require_nonprincipal(chi: DirichletCharacter) -> None:
    if chi.is_principal:
        raise ValueError("L(1, chi_0) has a pole; a non-principal character is required")


def _complex_fsum(values: Iterable[complex]) -> complex:
    vals = list(values)
    return complex(compensated_sum(v.real for v in vals), compensated_sum(v.imag for v in vals))


def l_one_digamma(chi: DirichletCharacter) -> complex:
    """L(1, chi) = -(1/a) sum_{r=1}^{a-1} chi(r) psi(r/a)."""
    _require_nonprincipal(chi)
    a = chi.modulus
    vals = chi.values()
    return -_complex_fsum(vals[r] * digamma(r / a) for r in range(1, a) if vals[r] != 0) / a


@lru_cache(maxsize=64)
def residue_harmonic_sums(a: int, w: int) -> tuple[float, ...]:
    """sum_{n <= w, n = r mod a} 1/n for every residue r = 0..a-1."""
    out = []
    for r in range(a):
        start = r if r else a
        n = np.arange(start, w + 1, a, dtype=np.float64)
        out.append(compensated_sum(1.0 / n))
    return tuple(out)


def l_one_series(chi: DirichletCharacter, w: int) -> complex:
    """Truncated Dirichlet series sum_{n <= w} chi(n)/n.

    The discarded tail is at most 2 * phi(a) / w <= 2a / w in absolute value.
    """
    _require_nonprincipal(chi)
    a = chi.modulus
    if w < a:
        raise ValueError(f"cutoff w={w} must be at least the modulus {a}")
    sums = residue_harmonic_sums(a, int(w))
    vals = chi.values()
    return _complex_fsum(vals[r] * sums[r] for r in range(a) if vals[r] != 0)


# Exact sums of roots of unity, used for orthogonality checks.


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials (low degree first) by a monic divisor."""
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        coef = num[i]
        if coef:
            quot[i - dn] = coef
            for j, d in enumerate(den):
                num[i - dn + j] -= coef * d
    return quot, num[:dn] or [0]


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic(d)))
            assert not any(rem)
    return tuple(poly)


def root_of_unity_sum(rotations: Iterable[int], L: int) -> tuple[int, ...]:
    """Exact value of sum exp(2 pi i n / L) over the given numerators.

    Returned as integer coordinates in the basis 1, z, ..., z^(phi(L)-1) of
    Q(z), z = exp(2 pi i / L). The sum is the integer k iff the result is (k, 0, ...).
    """
    hist = [0] * L
    for n in rotations:
        hist[n % L] += 1
    phi_poly = list(cyclotomic(L))
    _, rem = _poly_divmod(hist, phi_poly)
    rem = rem + [0] * (len(phi_poly) - 1 - len(rem))
    return tuple(rem)
