"""Partitions as exponent vectors, dyadic digit counts and exact binomials.

A partition ``I`` of weight ``n`` is stored the way characteristic numbers
index it: as the exponent vector ``(i_1, i_2, ...)`` with ``sum(r * i_r) == n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence


def alpha(m: int) -> int:
    """Number of 1's in the binary expansion of ``m``."""
    if m < 0:
        raise ValueError(f"alpha is defined for m >= 0, got {m}")
    return bin(m).count("1")


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient, zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(counts: Sequence[int]) -> int:
    total = 0
    result = 1
    for c in counts:
        total += c
        result *= math.comb(total, c)
    return result


@dataclass(frozen=True, order=False)
class Partition:
    """Exponent vector ``(i_1, i_2, ...)``; trailing zeros are trimmed."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        while exps and exps[-1] == 0:
            exps = exps[:-1]
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "Partition":
        parts = [int(p) for p in parts]
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive, got {parts}")
        exps = [0] * (max(parts) if parts else 0)
        for p in parts:
            exps[p - 1] += 1
        return cls(tuple(exps))

    @property
    def weight(self) -> int:
        return sum(r * e for r, e in enumerate(self.exponents, start=1))

    @property
    def length(self) -> int:
        """Number of parts."""
        return sum(self.exponents)

    def parts(self) -> tuple[int, ...]:
        """Parts in decreasing order, e.g. ``(2, 1, 1)`` for ``c_1^2 c_2``."""
        out: list[int] = []
        for r in range(len(self.exponents), 0, -1):
            out.extend([r] * self.exponents[r - 1])
        return tuple(out)

    def exponent(self, r: int) -> int:
        if 1 <= r <= len(self.exponents):
            return self.exponents[r - 1]
        return 0

    def padded(self, n: int) -> tuple[int, ...]:
        return self.exponents + (0,) * (n - len(self.exponents))

    def label(self, symbol: str = "c") -> str:
        """Monomial label such as ``c1^2*c2``; ``1`` for the empty partition."""
        factors = []
        for r, e in enumerate(self.exponents, start=1):
            if e == 1:
                factors.append(f"{symbol}{r}")
            elif e > 1:
                factors.append(f"{symbol}{r}^{e}")
        return "*".join(factors) if factors else "1"

    def __str__(self) -> str:
        return self.label()


def _descending_part_lists(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _descending_part_lists(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in canonical order.

    The order is increasing lexicographic order of the decreasing part lists,
    so ``c_1^n`` comes first and ``c_n`` last: for ``n = 4`` the columns are
    ``c1^4, c1^2*c2, c2^2, c1*c3, c4``.
    """
    if n < 0:
        raise ValueError(f"partitions(n) needs n >= 0, got {n}")
    lists = sorted(_descending_part_lists(n, n))
    return tuple(Partition.from_parts(p) for p in lists)


@lru_cache(maxsize=None)
def partition_index(n: int) -> dict[Partition, int]:
    return {p: i for i, p in enumerate(partitions(n))}


def partition_count(n: int) -> int:
    return len(partitions(n))
