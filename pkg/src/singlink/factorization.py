"""Deterministic integer factorization by wheel trial division.

Factors are extracted by trial division over a 2-3-5 wheel.  Once the
remaining cofactor is certified prime it is emitted directly; certification
uses the Miller-Rabin test with the fixed witness set {2, 3, 5, 7, 11, 13,
17, 19, 23, 29, 31, 37}, which is a proven deterministic primality test for
all n < 3317044064679887385961981.  The wheel scan is capped at 3.2 * 10**7
trial divisors; together with the certificate this fully factors every
integer below 1.024 * 10**15 (and far beyond unless the input is a product
of two primes both exceeding the cap, which raises instead of guessing).

Everything here is deterministic: the same input always produces the same
factorization, there is no randomness anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import prod

__all__ = [
    "Factorization",
    "FactorizationCapError",
    "factorize",
    "factor_exponents",
    "is_prime",
    "WHEEL_BOUND",
]

#: Largest trial divisor the wheel scan will attempt.
WHEEL_BOUND = 32_000_000

#: Range on which the fixed-witness Miller-Rabin test is a proven
#: deterministic primality test.
_MILLER_RABIN_LIMIT = 3_317_044_064_679_887_385_961_981

_MILLER_RABIN_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# gaps between consecutive integers coprime to 30, starting at 7
_WHEEL_GAPS = (4, 2, 4, 2, 4, 6, 2, 6)


class FactorizationCapError(ValueError):
    """The input has two prime factors beyond the wheel bound."""


def is_prime(n: int) -> bool:
    """Deterministic primality for n < 3.3 * 10**24."""
    if n >= _MILLER_RABIN_LIMIT:
        raise ValueError(f"{n} exceeds the deterministic primality range")
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MILLER_RABIN_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """A complete prime factorization: ((p1, e1), (p2, e2), ...), p ascending."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("prime factors must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise ValueError("exponents must be >= 1")

    def value(self) -> int:
        return prod(p**e for p, e in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


@lru_cache(maxsize=1 << 14)
def factor_exponents(n: int) -> tuple[tuple[int, int], ...]:
    """The (prime, exponent) pairs of n >= 1, primes ascending."""
    return factorize(n).factors


def factorize(n: int) -> Factorization:
    """Complete prime factorization of n >= 1.

    Raises :class:`FactorizationCapError` for inputs whose two smallest
    prime factors both exceed :data:`WHEEL_BOUND` (impossible below
    1.024 * 10**15).
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"can only factor positive integers, got {n!r}")
    factors: list[tuple[int, int]] = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    p = 7
    gap_index = 0
    while n > 1:
        if n < _MILLER_RABIN_LIMIT and is_prime(n):
            factors.append((n, 1))
            break
        if p * p > n:
            factors.append((n, 1))  # no prime divisor <= sqrt(n) remains
            break
        if p > WHEEL_BOUND:
            raise FactorizationCapError(
                f"cofactor {n} has no prime factor <= {WHEEL_BOUND}"
            )
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
        p += _WHEEL_GAPS[gap_index]
        gap_index = (gap_index + 1) % 8
    return Factorization(tuple(factors))
