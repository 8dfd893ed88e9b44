"""Shared integer combinatorics: primality, unit groups, compositions."""

from math import gcd


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_upto(n: int) -> tuple[int, ...]:
    return tuple(p for p in range(2, n + 1) if is_prime(p))


def units_mod(d: int) -> tuple[int, ...]:
    """Residues coprime to d, the multiplicative units mod d."""
    return tuple(r for r in range(1, d) if gcd(r, d) == 1)


def weak_compositions(total: int, parts: int):
    """Yield every tuple of `parts` non-negative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def weighted_compositions(total: int, weights):
    """Yield tuples k >= 0 with sum(k[i] * weights[i]) == total.

    Weights must be positive integers.
    """
    weights = tuple(weights)

    def rec(i, remaining):
        if i == len(weights):
            if remaining == 0:
                yield ()
            return
        w = weights[i]
        for c in range(remaining // w + 1):
            for rest in rec(i + 1, remaining - c * w):
                yield (c,) + rest

    yield from rec(0, total)
