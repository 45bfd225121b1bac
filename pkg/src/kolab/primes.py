"""Prime indexing and specific-number parsing."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_INDEX = 10**6
DEFAULT_SIEVE_BOUND = 10**6


def _sieve(bound: int) -> np.ndarray:
    flags = np.ones(bound + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags)


class PrimeTable:
    """Sorted primes up to a bound that grows on demand."""

    def __init__(self, bound: int = DEFAULT_SIEVE_BOUND):
        self.bound = bound
        self.primes = _sieve(bound)

    def _grow(self, bound: int) -> None:
        while self.bound < bound:
            self.bound *= 2
        self.primes = _sieve(self.bound)

    def nth(self, l: int) -> int:
        if not 1 <= l <= MAX_INDEX:
            raise ValueError(f"prime index {l} outside 1..{MAX_INDEX}")
        while len(self.primes) < l:
            self._grow(self.bound * 2)
        return int(self.primes[l - 1])

    def index(self, p: int) -> int:
        if p > self.bound:
            self._grow(p)
        i = int(np.searchsorted(self.primes, p))
        if i == len(self.primes) or self.primes[i] != p:
            raise ValueError(f"{p} is not prime")
        return i + 1


_TABLE: PrimeTable | None = None


def _table() -> PrimeTable:
    global _TABLE
    if _TABLE is None:
        _TABLE = PrimeTable()
    return _TABLE


def nth_prime(l: int) -> int:
    """The l-th prime, with ``nth_prime(1) == 2``."""
    return _table().nth(l)


def prime_index(p: int) -> int:
    return _table().index(p)


def largest_prime_factor(m: int) -> int:
    if m < 2:
        raise ValueError("m must be at least 2")
    largest = 1
    d = 2
    while d * d <= m:
        while m % d == 0:
            largest = d
            m //= d
        d += 1 if d == 2 else 2
    return max(largest, m) if m > 1 else largest


@dataclass(frozen=True)
class SpecificParse:
    m: int
    p: int
    k: int
    l: int
    n: int


@lru_cache(maxsize=4096)
def parse_specific(m: int) -> SpecificParse | None:
    """Return the unique parse ``m = p*k`` (p prime, k < p, m odd), or None.

    A valid p must exceed sqrt(m), so it can only be the largest prime factor.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m % 2 == 0 or m == 1:
        return None
    p = largest_prime_factor(m)
    if p * p <= m:
        return None
    return SpecificParse(m=m, p=p, k=m // p, l=prime_index(p), n=p - 1)
