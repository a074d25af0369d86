"""Permutations as leaves of the m-symmetric permutation tree.

A permutation is stored as its image list: ``images[j]`` is the (1-based)
label sitting at depth ``j + 1`` of the tree path.  Read against a BTU, the
position is a VN column and the label is the CN row holding its 1.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .core import Btu
from .errors import DomainError, ResourceError
from .partitions import Partition

__all__ = [
    "Permutation",
    "PermutationRep",
    "is_compatible",
    "to_btu",
    "decompose",
    "beta_of",
    "beta_by_traversal",
    "cycle_type_partition",
    "iter_compatible",
    "enumerate_compatible",
    "enumerate_compatible_with_partition",
    "published_f_beta",
    "classical_count",
    "spt_node_count",
    "SuccessorProfile",
    "spt_successor_profile",
    "COMPATIBLE_LIST_MAX_M",
]

COMPATIBLE_LIST_MAX_M = 9


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise DomainError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(range(1, m + 1))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        try:
            return cls(int(t) for t in text.replace(",", " ").strip("()[] ").split())
        except ValueError as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"cannot parse permutation from {text!r}") from exc

    @property
    def m(self) -> int:
        return len(self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.m
        for pos, label in enumerate(self.images, start=1):
            inv[label - 1] = pos
        return Permutation(inv)

    def __len__(self) -> int:
        return len(self.images)

    def __getitem__(self, depth: int) -> int:
        return self.images[depth]

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.images)


def _check_same_size(a: Permutation, b: Permutation) -> None:
    if a.m != b.m:
        raise DomainError(f"permutations of different sizes: {a.m} vs {b.m}")


def is_compatible(a: Permutation, b: Permutation) -> bool:
    """True iff the two image lists differ at every position."""
    _check_same_size(a, b)
    return all(x != y for x, y in zip(a.images, b.images))


def _require_compatible(perms: Sequence[Permutation]) -> None:
    for a, b in combinations(perms, 2):
        if not is_compatible(a, b):
            raise DomainError(f"permutations {a} and {b} are not compatible")


@dataclass(frozen=True)
class PermutationRep:
    """r pairwise-compatible permutations describing a labeled (m, r) BTU."""

    perms: tuple[Permutation, ...]
    m: int = field(init=False)

    def __init__(self, perms: Iterable[Permutation | Sequence[int]]):
        perms = tuple(p if isinstance(p, Permutation) else Permutation(p) for p in perms)
        if not perms:
            raise DomainError("a representation needs at least one permutation")
        m = perms[0].m
        if any(p.m != m for p in perms):
            raise DomainError("permutations of different sizes")
        _require_compatible(perms)
        object.__setattr__(self, "perms", perms)
        object.__setattr__(self, "m", m)

    @property
    def r(self) -> int:
        return len(self.perms)

    def __len__(self) -> int:
        return len(self.perms)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.perms)

    def __getitem__(self, i: int) -> Permutation:
        return self.perms[i]

    def to_text(self) -> str:
        return "\n".join([f"{self.m} {self.r}"] + [str(p) for p in self.perms])

    def to_json(self) -> dict:
        return {"m": self.m, "r": self.r, "perms": [list(p.images) for p in self.perms]}

    @classmethod
    def parse(cls, text: str) -> "PermutationRep":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise DomainError("empty permutation representation")
        head = lines[0].split()
        if len(head) != 2:
            raise DomainError("first line must be the header 'm r'")
        m, r = int(head[0]), int(head[1])
        rep = cls(Permutation.parse(ln) for ln in lines[1:])
        if rep.m != m or rep.r != r:
            raise DomainError(f"header 'm r' = {m} {r} disagrees with {rep.m} {rep.r}")
        return rep


def to_btu(rep: PermutationRep) -> Btu:
    """Stack the permutation matrices: bit (label, position) is set for every permutation."""
    m = rep.m
    edges = [(label - 1, pos) for p in rep.perms for pos, label in enumerate(p.images)]
    return Btu.from_edges(m, edges)


def _perfect_matching(m: int, allowed: list[list[int]]) -> list[int]:
    """Column -> row matching by augmenting paths (Kuhn's algorithm)."""
    row_of = [-1] * m  # column -> row
    col_of = [-1] * m  # row -> column

    def augment(row: int, seen: list[bool]) -> bool:
        for col in allowed[row]:
            if seen[col]:
                continue
            seen[col] = True
            if row_of[col] < 0 or augment(row_of[col], seen):
                row_of[col] = row
                col_of[row] = col
                return True
        return False

    for row in range(m):
        if not augment(row, [False] * m):
            raise AssertionError("regular bipartite graph without a perfect matching")
    return row_of


def decompose(g: Btu) -> PermutationRep:
    """Split a BTU into r disjoint permutation matrices.

    The split is not unique; this one peels off perfect matchings found by
    augmenting paths, rows tried in label order.
    """
    m = g.m
    remaining = [g.row_neighbors(i) for i in range(m)]
    perms = []
    for _ in range(g.r):
        row_of = _perfect_matching(m, remaining)
        perms.append(Permutation(row + 1 for row in row_of))
        for col, row in enumerate(row_of):
            remaining[row].remove(col)
    return PermutationRep(perms)


# --------------------------------------------------------------------------
# partitions between two permutations


def cycle_type_partition(images: Sequence[int]) -> list[int]:
    """Cycle lengths (descending) of a 1-based permutation given as images."""
    seen = [False] * len(images)
    lengths = []
    for start in range(len(images)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = images[k] - 1
            length += 1
        lengths.append(length)
    return sorted(lengths, reverse=True)


def beta_of(a: Permutation, b: Permutation) -> Partition:
    """β(a, b): the cycle type of b∘a⁻¹.

    Each cycle of b∘a⁻¹ of length q is one 2q-cycle of the (m,2) BTU built
    from ``a`` and ``b``; compatibility rules out fixed points so every
    part is at least 2.
    """
    if not is_compatible(a, b):
        raise DomainError(f"{a} and {b} are not compatible")
    a_inv = a.inverse().images
    composed = [b.images[a_inv[label] - 1] for label in range(a.m)]
    return Partition(cycle_type_partition(composed))


def beta_by_traversal(a: Permutation, b: Permutation) -> Partition:
    """β(a, b) by walking the (m,2) BTU that ``a`` and ``b`` span.

    Starting from each unvisited label in depth order, alternately hop to
    the depth where ``a`` holds the label and read the label ``b`` holds
    there, until the walk returns to the starting label.  Each closed walk
    is one cycle; the number of hops is its partition component.
    """
    if not is_compatible(a, b):
        raise DomainError(f"{a} and {b} are not compatible")
    m = a.m
    g = to_btu(PermutationRep([a, b]))
    # which depth (column) each label (row) occupies in a, read off the graph
    depth_in_a = {}
    for depth in range(m):
        depth_in_a[a.images[depth]] = depth
    visited: set[int] = set()
    components = []
    for depth in range(m):
        start = a.images[depth]
        if start in visited:
            continue
        label = start
        length = 0
        while True:
            visited.add(label)
            col = depth_in_a[label]
            # the other CN on this VN column is b's label
            rows = [row + 1 for row in g.col_neighbors(col)]
            label = rows[0] if rows[1] == label else rows[1]
            length += 1
            if label == start:
                break
        components.append(length)
    return Partition(components)


# --------------------------------------------------------------------------
# forbidden-label enumeration on the symmetric permutation tree


def iter_compatible(existing: Sequence[Permutation], m: int) -> Iterator[Permutation]:
    """Stream, in lexicographic order, every permutation compatible with all of ``existing``.

    Depth-first walk of the symmetric permutation tree; the labels used by
    ``existing`` at each depth are forbidden there.
    """
    existing = list(existing)
    if any(p.m != m for p in existing):
        raise DomainError("existing permutations must all have size m")
    _require_compatible(existing)
    forbidden = [{p.images[d] for p in existing} for d in range(m)]
    used = [False] * (m + 1)
    path: list[int] = []

    def walk(depth: int) -> Iterator[Permutation]:
        if depth == m:
            yield Permutation(path)
            return
        banned = forbidden[depth]
        for label in range(1, m + 1):
            if used[label] or label in banned:
                continue
            used[label] = True
            path.append(label)
            yield from walk(depth + 1)
            path.pop()
            used[label] = False

    return walk(0)


def enumerate_compatible(
    existing: Sequence[Permutation], m: int, max_m: int = COMPATIBLE_LIST_MAX_M
) -> list[Permutation]:
    if m > max_m:
        raise ResourceError(f"full list limited to m <= {max_m}; use iter_compatible")
    return list(iter_compatible(existing, m))


def enumerate_compatible_with_partition(
    p: Permutation, beta: Partition, ordered: bool = False
) -> list[Permutation]:
    """All q compatible with ``p`` whose partition with ``p`` is ``beta``.

    With ``ordered=True`` only q lexicographically after ``p`` are returned.
    """
    if beta.m != p.m:
        raise DomainError(f"partition sums to {beta.m} but permutations have size {p.m}")
    out = []
    for q in iter_compatible([p], p.m):
        if ordered and q <= p:
            continue
        if beta_of(p, q) == beta:
            out.append(q)
    return out


# --------------------------------------------------------------------------
# counting formulae


def published_f_beta(m: int, r: int, beta: Partition) -> int | Fraction:
    """The published general enumeration formula, evaluated verbatim.

    (m-r+1) * sum over distinct part values p_j of
    (m-r+1)! / ((p_j - 1) * product of the other parts).

    Agrees with exhaustive counts for beta == (m) only; see
    :func:`classical_count` for the number of permutations of a cycle type.
    """
    if beta.m != m:
        raise DomainError(f"partition sums to {beta.m}, expected {m}")
    if not 2 <= r <= m:
        raise DomainError(f"need 2 <= r <= m, got r={r}")
    k = m - r + 1
    total = Fraction(0)
    parts = list(beta.parts)
    for value in sorted(set(parts), reverse=True):
        others = list(parts)
        others.remove(value)
        total += Fraction(math.factorial(k), (value - 1) * math.prod(others))
    result = k * total
    return int(result) if result.denominator == 1 else result


def classical_count(beta: Partition) -> int:
    """Permutations of S_m with cycle type beta: m! / (prod q_i * prod mult!)."""
    denom = math.prod(beta.parts)
    for mult in Counter(beta.parts).values():
        denom *= math.factorial(mult)
    return math.factorial(beta.m) // denom


def spt_node_count(m: int, depth: int) -> int:
    """Nodes at ``depth`` of the m-symmetric permutation tree."""
    if not 0 <= depth <= m:
        raise DomainError(f"depth must lie in 0..{m}, got {depth}")
    return math.perm(m, depth)


@dataclass(frozen=True)
class SuccessorProfile:
    actual: tuple[int, ...]
    predicted: tuple[int, ...]
    delta: tuple[int, ...]

    @property
    def agrees(self) -> bool:
        return self.actual == self.predicted


def spt_successor_profile(a: Permutation, b: Permutation) -> SuccessorProfile:
    """Diagnostic: choices available at each depth along ``b`` once ``a`` is forbidden.

    ``actual[i]`` counts, by direct simulation, the labels selectable at depth
    i+1 given b's prefix and a's label forbidden there.  ``predicted`` is
    ``m - (i+1) + delta[i]`` with ``delta[i] = 1`` iff a's label at that depth
    already appeared earlier on b's path.
    """
    if not is_compatible(a, b):
        raise DomainError(f"{a} and {b} are not compatible")
    m = a.m
    actual, predicted, delta = [], [], []
    for i in range(m):
        prefix = set(b.images[:i])
        actual.append(sum(1 for lab in range(1, m + 1) if lab not in prefix and lab != a.images[i]))
        d = 1 if a.images[i] in prefix else 0
        delta.append(d)
        predicted.append(m - (i + 1) + d)
    return SuccessorProfile(tuple(actual), tuple(predicted), tuple(delta))

