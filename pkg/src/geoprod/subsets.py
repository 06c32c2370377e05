"""Finite integer subsets in greatest-element order (GEO).

Nonempty subsets of a ground set are emitted grouped by their maximum
element, groups ascending.  Inside the group with maximum m the singleton
{m} comes first; the remaining subsets follow a fixed descending binary
order over the smaller elements (most-significant bit = smallest element),
which for ground set {1,2,3} lists the m=3 group as
{3}, {1,2,3}, {1,3}, {2,3}.  The intra-group position is mathematically
free, so one order is frozen to keep runs reproducible.

Enumeration is lazy; subset counts grow as 2**K, so ground sets are capped
at MAX_GROUND_SIZE elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "IntegerSubset",
    "composition_count",
    "bounded_composition_count",
    "enumerate_geo",
    "geo_group",
    "geo_groups",
]

MAX_GROUND_SIZE = 20


@dataclass(frozen=True)
class IntegerSubset:
    """A nonempty, strictly increasing tuple of positive integers."""

    elements: tuple[int, ...]

    def __post_init__(self):
        elements = tuple(int(e) for e in self.elements)
        if not elements:
            raise ValueError("subset must be nonempty")
        if any(e < 1 for e in elements):
            raise ValueError(f"subset elements must be positive, got {elements}")
        if any(a >= b for a, b in zip(elements, elements[1:])):
            raise ValueError(f"subset elements must be strictly increasing, got {elements}")
        object.__setattr__(self, "elements", elements)

    @property
    def greatest(self) -> int:
        return self.elements[-1]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, item) -> bool:
        return item in self.elements


def _normalized_ground(ground_set: Iterable[int]) -> tuple[int, ...]:
    ground = tuple(sorted({int(e) for e in ground_set}))
    if any(e < 1 for e in ground):
        raise ValueError(f"ground set must contain positive integers, got {ground}")
    if len(ground) > MAX_GROUND_SIZE:
        raise ValueError(
            f"ground set of {len(ground)} elements would enumerate 2**{len(ground)} subsets"
        )
    return ground


def geo_group(smaller: Sequence[int], m: int) -> Iterator[IntegerSubset]:
    """Subsets with maximum ``m`` over the given smaller elements, in canonical order."""
    yield IntegerSubset((m,))
    t = len(smaller)
    for bits in range(2**t - 1, 0, -1):
        members = tuple(smaller[i] for i in range(t) if (bits >> (t - 1 - i)) & 1)
        yield IntegerSubset(members + (m,))


def geo_groups(ground_set: Iterable[int]) -> Iterator[tuple[int, tuple[IntegerSubset, ...]]]:
    """(m, subsets-with-maximum-m) pairs in increasing m."""
    ground = _normalized_ground(ground_set)
    for idx, m in enumerate(ground):
        yield m, tuple(geo_group(ground[:idx], m))


def enumerate_geo(ground_set: Iterable[int]) -> Iterator[IntegerSubset]:
    """Every nonempty subset of the ground set exactly once, in GEO order."""
    for _, group in geo_groups(ground_set):
        yield from group


def composition_count(n: int, parts: int) -> int:
    """Number of ways ``parts`` positive integers can add up to ``n``."""
    if parts < 1:
        raise ValueError(f"parts must be a positive integer, got {parts}")
    if n < parts:
        return 0
    return math.comb(n - 1, parts - 1)


def bounded_composition_count(n: int, parts: int, largest: int) -> int:
    """Compositions of ``n`` into ``parts`` positive parts, each at most ``largest``."""
    if parts < 1 or largest < 1:
        raise ValueError("parts and largest must be positive integers")
    total = 0
    for i in range(parts + 1):
        rem = n - i * largest
        if rem < parts:
            break  # later terms only shrink rem further
        total += (-1) ** i * math.comb(parts, i) * math.comb(rem - 1, parts - 1)
    return total
