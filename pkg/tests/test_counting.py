import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from axymean.arithmetic import CountOverflowError, divisor_count, factorize
from axymean.counting import (
    Equation,
    count_bruteforce,
    count_divisor,
    r_table,
    solutions,
    sum_bruteforce,
    sum_hyperbola,
)


def double_loop(a, n, b=1, c=1):
    """Literal enumeration of a*x*y - b*x - c*y = n; x and y are bounded by a*n + b*c + max(b, c)."""
    top = a * n + b * c + max(b, c)
    return sum(1 for x in range(1, top + 1) for y in range(1, top + 1) if a * x * y - b * x - c * y == n)


@pytest.mark.parametrize(
    "a, n, expected",
    [(2, 0, 1), (3, 0, 0), (2, 4, 3), (1, 5, 4), (3, 8, 1), (4, 6, 0), (2, 10, 4)],
)
def test_count_examples(a, n, expected):
    assert double_loop(a, n) == expected
    assert count_bruteforce(Equation(a), n) == expected
    assert count_divisor(Equation(a), n) == expected


def test_double_loop_agrees_with_bruteforce_small():
    for a in range(1, 5):
        for n in range(0, 25):
            assert count_bruteforce(a, n) == double_loop(a, n)
    for b in range(1, 4):
        for c in range(1, 4):
            for n in range(0, 12):
                assert count_bruteforce(Equation(2, b, c), n) == double_loop(2, n, b, c)
                assert count_bruteforce(Equation(1, b, c), n) == double_loop(1, n, b, c)


def test_generalized_bound_beyond_n_plus_b_plus_c():
    # (x - 5)(y - 5) = 25 has the solution x = 30 with n = 0
    assert (30, 6) in solutions(Equation(1, 5, 5), 0)
    assert count_bruteforce(Equation(1, 5, 5), 0) == divisor_count(25)


def test_solutions_listing():
    assert solutions(2, 4) == [(1, 5), (2, 2), (5, 1)]
    assert all(3 * x * y - x - y == 40 for x, y in solutions(3, 40))


def test_divisor_and_bruteforce_agree_standard():
    for a in range(1, 13):
        for n in range(0, 2001):
            assert count_divisor(a, n) == count_bruteforce(a, n), (a, n)


def test_divisor_and_bruteforce_agree_generalized():
    for a in range(1, 6):
        for b in range(1, 6):
            for c in range(1, 6):
                eq = Equation(a, b, c)
                table = r_table(eq, 500)
                for n in range(0, 501):
                    d = count_divisor(eq, n)
                    assert d == count_bruteforce(eq, n) == table[n], (a, b, c, n)


def test_r1_is_divisor_function():
    table = r_table(1, 10**4)
    for n in range(0, 10**4 + 1):
        assert count_divisor(1, n) == divisor_count(n + 1) == table[n]


def test_solution_set_symmetric():
    for a in range(1, 8):
        for n in range(0, 300):
            sols = solutions(a, n)
            assert sorted((y, x) for x, y in sols) == sols
            off_diagonal = sum(1 for x, y in sols if x != y)
            assert off_diagonal % 2 == 0


@pytest.mark.parametrize("a, N, expected", [(2, 4, 10), (3, 0, 0), (2, 10, 26), (5, 0, 0)])
def test_sum_examples(a, N, expected):
    assert sum(double_loop(a, n) for n in range(N + 1)) == expected
    assert sum_bruteforce(a, N) == expected
    assert sum_hyperbola(a, N) == expected


def test_sum_hyperbola_matches_table_prefix_sums():
    for a in range(2, 13):
        prefix = np.cumsum(r_table(a, 10**4))
        for N in range(0, 10**4 + 1):
            assert sum_hyperbola(a, N) == prefix[N], (a, N)


def test_sum_monotone():
    for a in (2, 3, 7):
        values = [sum_hyperbola(a, N) for N in range(0, 3000)]
        assert all(x <= y for x, y in zip(values, values[1:]))


@given(st.integers(min_value=2, max_value=40), st.integers(min_value=0, max_value=3000))
@settings(max_examples=100, deadline=None)
def test_sum_hyperbola_property(a, N):
    assert sum_hyperbola(a, N) == sum(count_divisor(a, n) for n in range(N + 1))


def test_sum_bruteforce_at_1e6():
    assert sum_bruteforce(2, 10**6) == sum_hyperbola(2, 10**6)
    assert sum_bruteforce(7, 10**6) == sum_hyperbola(7, 10**6)


def test_hyperbola_threads_bit_identical():
    N = 3 * 10**13
    single = sum_hyperbola(3, N)
    assert sum_hyperbola(3, N, threads=4) == single


def test_hyperbola_vector_path_matches_plain_loop():
    import math

    for a, N in ((2, 10**11), (5, 4 * 10**12 + 7)):
        M = a * N + 1
        r = math.isqrt(M)
        plain = 2 * sum((M // u + 1) // a for u in range(a - 1, r + 1, a)) - ((r + 1) // a) ** 2
        assert sum_hyperbola(a, N) == plain


def test_overflow_reported():
    with pytest.raises(CountOverflowError):
        sum_hyperbola(2, 2**62)
    with pytest.raises(CountOverflowError):
        count_divisor(3, 2**62)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        sum_hyperbola(1, 10)
    with pytest.raises(ValueError):
        Equation(0)
    with pytest.raises(ValueError):
        count_divisor(2, -1)
    with pytest.raises(ValueError):
        r_table(2, 10**6 + 1)


def test_large_n_divisor_count():
    # 2n + 1 = 2**62 - 1 = (2**31 - 1)(2**31 + 1) = 3 * 715827883 * 2147483647
    n = 2**61 - 1
    assert factorize(2 * n + 1).factors == ((3, 1), (715827883, 1), (2147483647, 1))
    assert count_divisor(2, n) == 8
