"""The family Φ(β₁, …, β_{r−1}) of labeled (m, r) BTUs.

A member is r pairwise-compatible permutations p₁ = I_m, p₂, …, p_r where
the partition between p_i and p_{i+1} is β_i.  Only adjacent pairs are
constrained; the remaining pairwise partitions are whatever they turn out to be.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .core import BRUTE_FORCE_MAX_M, canonical_key
from .errors import DomainError, NotFoundError, ResourceError
from .partitions import Partition
from .permutations import Permutation, PermutationRep, beta_of, iter_compatible, to_btu

__all__ = [
    "PhiSpec",
    "PhiEnumeration",
    "build_phi_member",
    "iter_phi",
    "enumerate_phi",
    "count_nonisomorphic_in_phi",
    "partition_profile",
    "has_4cycle",
    "is_phi_member",
]


@dataclass(frozen=True)
class PhiSpec:
    m: int
    betas: tuple[Partition, ...]

    def __init__(self, m: int, betas: Sequence[Partition | Sequence[int]]):
        betas = tuple(b if isinstance(b, Partition) else Partition(b) for b in betas)
        for b in betas:
            if b.m != m:
                raise DomainError(f"partition {b} does not sum to m={m}")
        if len(betas) + 1 > m:
            raise DomainError(f"r = {len(betas) + 1} exceeds m = {m}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "betas", betas)

    @property
    def r(self) -> int:
        return len(self.betas) + 1

    def __str__(self) -> str:
        return f"m={self.m}; betas=" + "|".join(str(b) for b in self.betas)

    @classmethod
    def parse(cls, text: str) -> "PhiSpec":
        """Parse ``"m=6; betas=(3,3)|(2,2,2)"`` or the JSON mirror."""
        text = text.strip()
        if text.startswith("{"):
            return cls.from_json(json.loads(text))
        match = re.fullmatch(r"m\s*=\s*(\d+)\s*;\s*betas\s*=\s*(.*)", text)
        if not match:
            raise DomainError(f"cannot parse Phi spec from {text!r}")
        body = match.group(2).strip()
        betas = [Partition.parse(chunk) for chunk in body.split("|")] if body else []
        return cls(int(match.group(1)), betas)

    def to_json(self) -> dict:
        return {"m": self.m, "betas": [b.to_json() for b in self.betas]}

    @classmethod
    def from_json(cls, obj: dict) -> "PhiSpec":
        return cls(int(obj["m"]), [Partition(b) for b in obj["betas"]])


def _next_candidates(chosen: list[Permutation], beta: Partition) -> Iterator[Permutation]:
    last = chosen[-1]
    for q in iter_compatible(chosen, last.m):
        if beta_of(last, q) == beta:
            yield q


def build_phi_member(spec: PhiSpec, seed: int = 0) -> PermutationRep:
    """One member of the family, chosen deterministically from ``seed``.

    Candidates for each p_{i+1} are listed, shuffled with a seeded RNG and
    tried in turn, backtracking on dead ends.  Raises ``NotFoundError`` if
    the family is empty.
    """
    rng = random.Random(seed)
    chosen = [Permutation.identity(spec.m)]

    def extend(level: int) -> bool:
        if level == len(spec.betas):
            return True
        candidates = list(_next_candidates(chosen, spec.betas[level]))
        rng.shuffle(candidates)
        for q in candidates:
            chosen.append(q)
            if extend(level + 1):
                return True
            chosen.pop()
        return False

    if not extend(0):
        raise NotFoundError(f"Phi family {spec} is empty")
    return PermutationRep(chosen)


def iter_phi(spec: PhiSpec) -> Iterator[PermutationRep]:
    """Every member, lexicographic in (p₂, p₃, …)."""
    chosen = [Permutation.identity(spec.m)]

    def walk(level: int) -> Iterator[PermutationRep]:
        if level == len(spec.betas):
            yield PermutationRep(chosen)
            return
        for q in _next_candidates(chosen, spec.betas[level]):
            chosen.append(q)
            yield from walk(level + 1)
            chosen.pop()

    return walk(0)


@dataclass
class PhiEnumeration:
    members: list[PermutationRep]
    truncated: bool

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[PermutationRep]:
        return iter(self.members)


def enumerate_phi(
    spec: PhiSpec, limit: int | None = None, max_m: int = BRUTE_FORCE_MAX_M
) -> PhiEnumeration:
    if spec.m > max_m:
        raise ResourceError(f"exhaustive Phi enumeration limited to m <= {max_m}")
    members = []
    truncated = False
    for rep in iter_phi(spec):
        if limit is not None and len(members) >= limit:
            truncated = True
            break
        members.append(rep)
    return PhiEnumeration(members, truncated)


def count_nonisomorphic_in_phi(spec: PhiSpec, max_m: int = BRUTE_FORCE_MAX_M) -> int:
    if spec.m > max_m:
        raise ResourceError(f"exhaustive Phi enumeration limited to m <= {max_m}")
    return len({canonical_key(to_btu(rep)) for rep in iter_phi(spec)})


def partition_profile(rep: PermutationRep) -> dict[tuple[int, int], Partition]:
    """β between every pair of permutations, keyed by 1-based (i, j) with i < j."""
    return {
        (i + 1, j + 1): beta_of(rep[i], rep[j])
        for i, j in combinations(range(rep.r), 2)
    }


def is_phi_member(rep: PermutationRep, spec: PhiSpec) -> bool:
    if rep.m != spec.m or rep.r != spec.r:
        return False
    if rep[0] != Permutation.identity(spec.m):
        return False
    return all(beta_of(rep[i], rep[i + 1]) == b for i, b in enumerate(spec.betas))


def has_4cycle(rep: PermutationRep) -> bool:
    """True iff two positions share two labels, i.e. the BTU contains a 4-cycle."""
    columns = [frozenset(p.images[pos] for p in rep) for pos in range(rep.m)]
    return any(len(a & b) >= 2 for a, b in combinations(columns, 2))
