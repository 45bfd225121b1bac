"""Binary matrices over GF(2), their serialization, and the seeded bit source.

Randomness comes from a SplitMix64 word stream. A matrix sample draws
``k*n`` bits from one substream: words are consumed in order and each word
contributes its bits most-significant first. Substreams are addressed by a
path of integers (for example ``(k, i)`` in the reduction) so that every
matrix is reproducible on its own, independent of sampling order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import BitStr

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
EXHAUSTIVE_CAP = 16


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, *path: int) -> int:
    h = seed & MASK64
    for i in path:
        h = mix64(h + (i + 1) * GAMMA)
    return h


class SeededRng:
    """SplitMix64 stream for ``(seed, stream_index)``."""

    def __init__(self, seed: int, stream_index: int = 0):
        self.seed = seed & MASK64
        self.stream_index = stream_index
        self._state = derive_seed(self.seed, stream_index)

    @classmethod
    def substream(cls, seed: int, *path: int) -> "SeededRng":
        rng = cls(seed)
        rng._state = derive_seed(seed, *path)
        return rng

    def next64(self) -> int:
        self._state = (self._state + GAMMA) & MASK64
        return mix64(self._state)

    def bits(self, count: int) -> int:
        """Next ``count`` bits as an integer, first drawn bit most significant."""
        words = (count + 63) // 64
        acc = 0
        for _ in range(words):
            acc = (acc << 64) | self.next64()
        return acc >> (64 * words - count)


@dataclass(frozen=True)
class Gf2Matrix:
    k: int
    n: int
    rows: tuple[int, ...]  # row i as an n-bit int, column 0 in the top bit

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.rows) != self.k or any(r >> self.n for r in self.rows):
            raise ValueError("rows do not fit the stated dimensions")

    def serialize(self) -> BitStr:
        return "".join(format(r, f"0{self.n}b") for r in self.rows)

    @classmethod
    def deserialize(cls, s: BitStr, k: int, n: int) -> "Gf2Matrix":
        if len(s) != k * n:
            raise ValueError(f"need {k * n} bits for a {k}x{n} matrix, got {len(s)}")
        return cls(k, n, tuple(int(s[i * n : (i + 1) * n], 2) for i in range(k)))

    @classmethod
    def from_rows(cls, rows: list[str]) -> "Gf2Matrix":
        return cls.deserialize("".join(rows), len(rows), len(rows[0]))

    def apply_int(self, y: int) -> int:
        out = 0
        for r in self.rows:
            out = (out << 1) | ((r & y).bit_count() & 1)
        return out


def sample_matrix(k: int, n: int, rng: SeededRng) -> Gf2Matrix:
    if k < 1 or n < 1:
        raise ValueError("matrix dimensions must be positive")
    if k * n > 1 << 20:
        raise ValueError("matrix too large")
    val = rng.bits(k * n)
    mask = (1 << n) - 1
    return Gf2Matrix(k, n, tuple((val >> (n * (k - 1 - i))) & mask for i in range(k)))


def matvec(A: Gf2Matrix, y: BitStr) -> BitStr:
    if len(y) != A.n:
        raise ValueError(f"vector length {len(y)} != matrix width {A.n}")
    return format(A.apply_int(int(y, 2)), f"0{A.k}b")


def collision_census(n: int, k: int, b1: BitStr, b2: BitStr) -> tuple[int, int]:
    """Count the k x n matrices A with A b1 == A b2, over all 2^(nk) of them."""
    if len(b1) != n or len(b2) != n:
        raise ValueError("vectors must have length n")
    if b1 == b2:
        raise ValueError("vectors must differ")
    if n * k > EXHAUSTIVE_CAP:
        raise ValueError(f"n*k = {n * k} exceeds exhaustive cap {EXHAUSTIVE_CAP}")
    total = 1 << (n * k)
    a = np.arange(total, dtype=np.uint32)
    v1, v2 = np.uint32(int(b1, 2)), np.uint32(int(b2, 2))
    mask = np.uint32((1 << n) - 1)
    equal = np.ones(total, dtype=bool)
    for i in range(k):
        row = (a >> np.uint32(n * (k - 1 - i))) & mask
        equal &= (np.bitwise_count(row & v1) & 1) == (np.bitwise_count(row & v2) & 1)
    return int(equal.sum()), total
