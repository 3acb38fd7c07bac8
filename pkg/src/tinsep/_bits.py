"""Vertex sets as Python ints (bit i set <=> vertex i present)."""

from __future__ import annotations

from typing import Iterable, Iterator


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> list[int]:
    return list(iter_bits(mask))


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def popcount(mask: int) -> int:
    return mask.bit_count()


def to_set(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))
