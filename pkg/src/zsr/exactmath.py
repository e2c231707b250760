"""Exact integer arithmetic helpers: factorization, divisors, Mobius, binomials.

Everything here is plain ``int`` (arbitrary precision) or ``fractions.Fraction``.
No floats anywhere; any inexact division is a bug, not a rounding concern.
"""

from __future__ import annotations

from fractions import Fraction

# Exact rational type used by the inequality checkers.  Fraction already
# normalizes to lowest terms with a positive denominator, which is exactly
# the representation the comparison logic relies on.
ExactRatio = Fraction

# A factorization is an ordered list of (prime, exponent) pairs with the
# primes strictly increasing and every exponent >= 1.  factorize(1) == [].
Factorization = list[tuple[int, int]]


def factorize(n: int) -> Factorization:
    """Trial-division factorization of a positive integer."""
    if n < 1:
        raise ValueError(f"factorize requires a positive integer, got {n}")
    out: Factorization = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n in increasing order."""
    if n < 1:
        raise ValueError(f"divisors requires a positive integer, got {n}")
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    """Mobius function: 0 on non-squarefree n, else (-1)^(number of primes)."""
    if n < 1:
        raise ValueError(f"mobius requires a positive integer, got {n}")
    result = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        result = -result
    return result


def binomial(top: int, bottom: int) -> int:
    """Binomial coefficient C(top, bottom) by the exact running product."""
    if top < 0 or bottom < 0:
        raise ValueError(f"binomial requires nonnegative arguments, got ({top}, {bottom})")
    if bottom > top:
        raise ValueError(f"binomial lower index {bottom} exceeds upper index {top}")
    bottom = min(bottom, top - bottom)
    result = 1
    for i in range(1, bottom + 1):
        # Each partial product is itself a binomial coefficient, so the
        # division is exact at every step.
        result = result * (top - bottom + i) // i
    return result


def valuation(n: int, p: int) -> int:
    """Largest e with p**e dividing n (n >= 1, p >= 2)."""
    if n < 1:
        raise ValueError(f"valuation requires a positive integer, got {n}")
    if p < 2:
        raise ValueError(f"valuation requires a base >= 2, got {p}")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def prime_power_root(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n == p**k for prime p, or None if n is not a prime power."""
    if n < 2:
        return None
    fac = factorize(n)
    if len(fac) != 1:
        return None
    return fac[0]
