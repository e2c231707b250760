"""Tests for the exact integer and rational helpers."""

import random
from math import isqrt

import pytest

from zsr.exactmath import (
    ExactRatio,
    binomial,
    divisors,
    factorize,
    mobius,
    prime_power_root,
    valuation,
)


def pascal_triangle(rows):
    """Binomial coefficients by the additive recurrence, independent of binomial()."""
    triangle = [[1]]
    for r in range(1, rows + 1):
        above = triangle[-1]
        triangle.append([1] + [above[i - 1] + above[i] for i in range(1, r)] + [1])
    return triangle


def is_prime(p):
    """Trial-division primality, used to vet factorize output."""
    if p < 2:
        return False
    return all(p % k for k in range(2, isqrt(p) + 1))


def test_binomial_matches_pascal_triangle():
    triangle = pascal_triangle(40)
    for top, row in enumerate(triangle):
        for bottom, value in enumerate(row):
            assert binomial(top, bottom) == value


def test_binomial_known_values():
    assert binomial(6, 4) == 15
    assert binomial(8, 5) == 56
    assert binomial(16, 12) == 1820
    assert binomial(0, 0) == 1
    assert binomial(9, 0) == 1
    assert binomial(9, 9) == 1


def test_binomial_symmetry():
    for top in range(101):
        for bottom in range(top + 1):
            assert binomial(top, bottom) == binomial(top, top - bottom)


def test_binomial_rejects_bad_arguments():
    with pytest.raises(ValueError):
        binomial(3, 5)
    with pytest.raises(ValueError):
        binomial(-1, 0)
    with pytest.raises(ValueError):
        binomial(4, -2)


def test_factorize_known_values():
    assert factorize(1) == []
    assert factorize(12) == [(2, 2), (3, 1)]
    assert factorize(97) == [(97, 1)]
    assert factorize(360) == [(2, 3), (3, 2), (5, 1)]


def test_factorize_reconstructs_every_input():
    for n in range(1, 10001):
        product = 1
        last = 1
        for p, e in factorize(n):
            assert p > last, f"primes out of order for {n}"
            assert e >= 1
            last = p
            product *= p**e
        assert product == n


def test_factorize_bases_are_prime():
    for n in range(2, 2001):
        for p, _ in factorize(n):
            assert is_prime(p), f"{p} in factorize({n}) is not prime"


def test_factorize_rejects_nonpositive():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(-6)


def test_divisors_known_values():
    assert divisors(1) == [1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(97) == [1, 97]


def test_divisors_match_range_scan():
    for n in range(1, 301):
        assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


def test_divisors_count_and_order():
    for n in range(1, 2001):
        divs = divisors(n)
        expected_count = 1
        for _, e in factorize(n):
            expected_count *= e + 1
        assert len(divs) == expected_count
        assert divs[0] == 1 and divs[-1] == n
        assert all(a < b for a, b in zip(divs, divs[1:]))


def test_mobius_known_values():
    assert mobius(1) == 1
    assert mobius(2) == -1
    assert mobius(6) == 1
    assert mobius(12) == 0
    assert mobius(30) == -1
    assert mobius(49) == 0


def test_mobius_divisor_sums_collapse():
    # sum of mobius over the divisors of n is 1 at n = 1 and 0 elsewhere
    for n in range(1, 2001):
        total = sum(mobius(d) for d in divisors(n))
        assert total == (1 if n == 1 else 0)


def test_valuation():
    assert valuation(24, 2) == 3
    assert valuation(24, 3) == 1
    assert valuation(7, 5) == 0
    rng = random.Random(4021)
    for _ in range(200):
        n = rng.randint(1, 10**9)
        p = rng.choice([2, 3, 5, 7, 11])
        v = valuation(n, p)
        assert n % p**v == 0
        assert n % p ** (v + 1) != 0


def test_prime_power_root():
    assert prime_power_root(1) is None
    assert prime_power_root(7) == (7, 1)
    assert prime_power_root(8) == (2, 3)
    assert prime_power_root(81) == (3, 4)
    assert prime_power_root(12) is None
    for n in range(2, 2001):
        root = prime_power_root(n)
        facs = factorize(n)
        if len(facs) == 1:
            assert root == facs[0]
        else:
            assert root is None


def test_exact_ratio_comparisons_are_cross_multiplication():
    rng = random.Random(20879)
    for _ in range(1000):
        a = rng.randint(-(10**12), 10**12)
        c = rng.randint(-(10**12), 10**12)
        b = rng.randint(1, 10**12)
        d = rng.randint(1, 10**12)
        assert (ExactRatio(a, b) < ExactRatio(c, d)) == (a * d < c * b)
        assert (ExactRatio(a, b) == ExactRatio(c, d)) == (a * d == c * b)


def test_exact_ratio_normalization():
    assert ExactRatio(6, 4) == ExactRatio(3, 2)
    assert ExactRatio(6, 4).denominator == 2
    assert ExactRatio(1, -2).denominator == 2
    assert ExactRatio(1, -2).numerator == -1
    with pytest.raises(ZeroDivisionError):
        ExactRatio(1, 0)


def test_exact_ratio_arithmetic_stays_exact():
    assert ExactRatio(1, 3) * 3 == 1
    assert ExactRatio(2, 3) ** 5 == ExactRatio(32, 243)
    total = sum(ExactRatio(1, k) for k in range(1, 11))
    assert total == ExactRatio(7381, 2520)
