"""Exact integer counting primitives.

All counts are Python ints, so they are exact for any argument size. Callers
convert to float only when a count enters a probability.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


def binomial(n: int, k: int) -> int:
    """n choose k, with 0 returned for k outside [0, n]."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multichoose(r: int, m: int) -> int:
    """Ways to drop m indistinguishable items into r boxes.

    >>> multichoose(3, 2)
    6
    >>> multichoose(0, 0), multichoose(0, 5)
    (1, 0)
    """
    if r < 0 or m < 0:
        raise ValueError(f"multichoose needs r, m >= 0, got ({r}, {m})")
    if r == 0:
        return 1 if m == 0 else 0
    return math.comb(r + m - 1, m)


@lru_cache(maxsize=8)
def _partition_table(size: int) -> tuple[tuple[int, ...], ...]:
    # table[i][parts] counts partitions of i into exactly `parts` parts, using
    # p(i, parts) = p(i - 1, parts - 1) + p(i - parts, parts)
    table = [[0] * (size + 1) for _ in range(size + 1)]
    table[0][0] = 1
    for i in range(1, size + 1):
        for parts in range(1, i + 1):
            table[i][parts] = table[i - 1][parts - 1] + table[i - parts][parts]
    return tuple(map(tuple, table))


def partition_count(n: int, j: int) -> int:
    """Number of partitions of n into exactly j positive parts."""
    if n < 1 or j < 1:
        raise ValueError(f"partition_count needs n, j >= 1, got ({n}, {j})")
    if j > n:
        return 0
    return _partition_table(_table_size(n))[n][j]


def _table_size(n: int) -> int:
    # round up so nearby queries share one cached table
    size = 32
    while size < n:
        size *= 2
    return size


def composition_count(m: int, j: int) -> int:
    """Ordered sequences of j positive integers summing to m."""
    if m < 1 or j < 1:
        raise ValueError(f"composition_count needs m, j >= 1, got ({m}, {j})")
    return binomial(m - 1, j - 1)


@dataclass(frozen=True)
class GroupedTerm:
    """All loss vectors of a block sharing boundary flags, row count and loss total.

    ``s``/``e`` are 0 when the first/last packet of the block is lost,
    ``j`` is the number of loss rows, ``m`` the number of lost packets and
    ``multiplicity`` the number of ordered row-length sequences in the class.
    """

    s: int
    j: int
    m: int
    e: int
    multiplicity: int

    def gap_slots(self) -> int:
        """Number of blank slots that may receive surplus blanks."""
        return self.j + 1 - (1 - self.s) - (1 - self.e)

    def free_blanks(self, n: int) -> int:
        """Blanks left to distribute once the mandatory ones are placed."""
        return n - self.m - (self.j - 1) - self.s - self.e

    def pattern_count(self, n: int) -> int:
        """Block patterns realising one loss vector of this class."""
        return multichoose(self.gap_slots(), self.free_blanks(n))


@lru_cache(maxsize=None)
def _grouped_terms(n: int) -> tuple[GroupedTerm, ...]:
    terms = []
    for s in (0, 1):
        for j in range(1, (n + 1) // 2 + 1):
            for m in range(j, n + 1):
                for e in (0, 1):
                    if s + m + e + (j - 1) <= n:
                        terms.append(GroupedTerm(s, j, m, e, composition_count(m, j)))
    return tuple(terms)


def enumerate_grouped_terms(n: int) -> list[GroupedTerm]:
    """Every (s, j, m, e) class of valid loss vectors for a block of n packets.

    Terms come out in lexicographic (s, j, m, e) order.
    """
    if n < 1:
        raise ValueError(f"block size must be >= 1, got {n}")
    return list(_grouped_terms(n))
