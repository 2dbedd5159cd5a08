"""Subsets of a ground set ``{0, ..., n-1}`` stored as Python ints.

Bit ``i`` set means element ``i`` is in the set.  Every function here treats
the mask as an ElementSet; the ground-set size is supplied by the caller.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Iterator

MAX_N = 63


def popcount(mask: int) -> int:
    return mask.bit_count()


def full(n: int) -> int:
    return (1 << n) - 1


def elements(mask: int) -> list[int]:
    """Elements of ``mask`` in ascending order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def from_elements(items: Iterable[int]) -> int:
    mask = 0
    for e in items:
        mask |= 1 << e
    return mask


def check_within(mask: int, n: int) -> None:
    if mask < 0 or mask >> n:
        raise ValueError(f"set {mask:#x} is not contained in a ground set of size {n}")


def subsets_of_size(n: int, r: int) -> Iterator[int]:
    """All r-subsets of ``{0..n-1}`` in ascending numeric order (Gosper's hack)."""
    if r < 0 or r > n:
        return
    if r == 0:
        yield 0
        return
    x = (1 << r) - 1
    limit = 1 << n
    while x < limit:
        yield x
        c = x & -x
        s = x + c
        x = (((x ^ s) >> 2) // c) | s


def colex_rank(mask: int) -> int:
    """Position of ``mask`` among masks of equal popcount in ascending numeric order."""
    rank = 0
    i = 1
    while mask:
        low = mask & -mask
        rank += comb(low.bit_length() - 1, i)
        mask ^= low
        i += 1
    return rank


def colex_unrank(index: int, r: int) -> int:
    mask = 0
    for i in range(r, 0, -1):
        e = i - 1
        while comb(e + 1, i) <= index:
            e += 1
        index -= comb(e, i)
        mask |= 1 << e
    return mask


def format_set(mask: int) -> str:
    return " ".join(str(e) for e in elements(mask))


def parse_set(text: str) -> int:
    return from_elements(int(tok) for tok in text.split())
