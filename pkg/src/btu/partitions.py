"""Integer partitions whose parts are all at least 2.

These index the isomorphism classes of (m,2) Balanced Tanner Units: each
part ``q`` of a partition of ``m`` is one ``2q``-cycle of the graph.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import DomainError

__all__ = [
    "Partition",
    "enumerate_p2",
    "iter_p2",
    "count_unrestricted",
    "count_p2",
]

MIN_PART = 2


@dataclass(frozen=True, order=True)
class Partition:
    """A multiset of parts >= 2, stored in non-increasing order.

    Any iterable of integers is accepted; it is sorted on construction so
    ``Partition([2, 4]) == Partition([4, 2])``.
    """

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if not parts:
            raise DomainError("a partition needs at least one part")
        if parts[-1] < MIN_PART:
            raise DomainError(f"all parts must be >= {MIN_PART}, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def m(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def __repr__(self) -> str:
        return f"Partition({str(self)})"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"(4,2)"``, ``"4,2"`` or ``"4 2"``."""
        body = text.strip().strip("()[]")
        items = [t for t in re.split(r"[,\s]+", body) if t]
        if not items:
            raise DomainError(f"cannot parse partition from {text!r}")
        try:
            return cls(int(t) for t in items)
        except ValueError as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"cannot parse partition from {text!r}") from exc

    def to_json(self) -> list[int]:
        return list(self.parts)


def _check_m(m: int) -> None:
    if m < MIN_PART:
        raise DomainError(f"m must be >= {MIN_PART}, got {m}")


def _descending(m: int, largest: int) -> Iterator[tuple[int, ...]]:
    # Parts <= largest, each >= MIN_PART, biggest first part emitted first.
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), MIN_PART - 1, -1):
        rest = m - first
        if 0 < rest < MIN_PART:
            continue
        for tail in _descending(rest, first):
            yield (first,) + tail


def iter_p2(m: int) -> Iterator[Partition]:
    """Lazily yield P2(m) in reverse-lexicographic order."""
    _check_m(m)
    for parts in _descending(m, m):
        yield Partition(parts)


def enumerate_p2(m: int) -> list[Partition]:
    """Every partition of ``m`` into parts >= 2, in reverse-lexicographic order.

    >>> [str(p) for p in enumerate_p2(6)]
    ['(6)', '(4,2)', '(3,3)', '(2,2,2)']
    """
    return list(iter_p2(m))


@lru_cache(maxsize=None)
def _partition_table(n: int) -> tuple[int, ...]:
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return tuple(table)


def count_unrestricted(m: int) -> int:
    """p(m), the number of unrestricted partitions of m (p(0) == 1)."""
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    return _partition_table(m)[m]


def count_p2(m: int) -> int:
    """|P2(m)| computed as p(m) - p(m-1)."""
    _check_m(m)
    return count_unrestricted(m) - count_unrestricted(m - 1)
