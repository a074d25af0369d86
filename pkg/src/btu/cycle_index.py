"""Exact cycle-index polynomials and Redfield's cap/cup superposition.

All arithmetic uses ``fractions.Fraction``; nothing here touches floats.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Iterator, Mapping, Sequence

from .core import CANONICAL_MAX_M, psi
from .errors import DomainError, ResourceError
from .partitions import Partition
from .permutations import cycle_type_partition

__all__ = [
    "CycleType",
    "CycleIndexPoly",
    "h_count",
    "z_symmetric",
    "z_cyclic",
    "z_dihedral",
    "group_cycle_index",
    "cap",
    "cup",
    "automorphism_column_actions",
    "z_automorphism_of_psi",
    "upper_bound_phi",
    "named_poly",
]


@dataclass(frozen=True, order=True)
class CycleType:
    """``counts[k-1]`` is the number of k-cycles; the degree is ``len(counts)``."""

    counts: tuple[int, ...]

    def __init__(self, counts: Iterable[int]):
        counts = tuple(int(c) for c in counts)
        if any(c < 0 for c in counts):
            raise DomainError("cycle counts must be non-negative")
        if sum(k * c for k, c in enumerate(counts, start=1)) != len(counts):
            raise DomainError(f"sum k*j_k must equal the degree {len(counts)}: {counts}")
        object.__setattr__(self, "counts", counts)

    @property
    def n(self) -> int:
        return len(self.counts)

    @classmethod
    def from_lengths(cls, lengths: Iterable[int], n: int) -> "CycleType":
        counts = [0] * n
        for length in lengths:
            counts[length - 1] += 1
        return cls(counts)

    @classmethod
    def of_permutation(cls, images: Sequence[int]) -> "CycleType":
        """Cycle type of a 1-based image list."""
        return cls.from_lengths(cycle_type_partition(images), len(images))

    def stabilizer_order(self) -> int:
        """prod k^{j_k} j_k!: the centralizer size, and the cap weight of a matching monomial."""
        return math.prod(k**c * math.factorial(c) for k, c in enumerate(self.counts, start=1))

    def monomial(self) -> str:
        factors = []
        for k, c in enumerate(self.counts, start=1):
            if c == 1:
                factors.append(f"s{k}")
            elif c > 1:
                factors.append(f"s{k}^{c}")
        return " ".join(factors)


def h_count(j: CycleType) -> int:
    """Number of permutations in S_n with cycle type ``j``."""
    return math.factorial(j.n) // j.stabilizer_order()


class CycleIndexPoly:
    """A polynomial in s_1..s_n with positive rational coefficients, keyed by cycle type."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[CycleType, Fraction | int]):
        clean = {}
        for ctype, coeff in terms.items():
            if ctype.n != n:
                raise DomainError(f"term of degree {ctype.n} in a degree-{n} polynomial")
            coeff = Fraction(coeff)
            if coeff < 0:
                raise DomainError("cycle-index coefficients are positive")
            if coeff:
                clean[ctype] = coeff
        self.n = n
        self.terms = clean

    def coefficient(self, ctype: CycleType) -> Fraction:
        return self.terms.get(ctype, Fraction(0))

    def evaluate_at_ones(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def sorted_terms(self) -> list[tuple[CycleType, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].counts, reverse=True)

    def __eq__(self, other) -> bool:
        return isinstance(other, CycleIndexPoly) and self.n == other.n and self.terms == other.terms

    def __repr__(self) -> str:
        return f"CycleIndexPoly(n={self.n}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{coeff} {ctype.monomial()}" for ctype, coeff in self.sorted_terms())

    def to_json(self) -> list[dict]:
        return [
            {"type": list(ctype.counts), "num": coeff.numerator, "den": coeff.denominator}
            for ctype, coeff in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, items: list[dict]) -> "CycleIndexPoly":
        terms = {CycleType(it["type"]): Fraction(it["num"], it["den"]) for it in items}
        n = len(items[0]["type"]) if items else 0
        return cls(n, terms)


def _all_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _all_partitions(n - first, first):
            yield (first,) + rest


def z_symmetric(n: int) -> CycleIndexPoly:
    if n < 1:
        raise DomainError("degree must be >= 1")
    total = math.factorial(n)
    terms = {}
    for parts in _all_partitions(n):
        ctype = CycleType.from_lengths(parts, n)
        terms[ctype] = Fraction(h_count(ctype), total)
    return CycleIndexPoly(n, terms)


def z_cyclic(n: int) -> CycleIndexPoly:
    if n < 1:
        raise DomainError("degree must be >= 1")
    tally: Counter = Counter()
    for shift in range(n):
        d = math.gcd(shift, n)
        tally[CycleType.from_lengths([n // d] * d, n)] += 1
    return CycleIndexPoly(n, {ct: Fraction(c, n) for ct, c in tally.items()})


def z_dihedral(n: int) -> CycleIndexPoly:
    """Cycle index of the symmetry group of a regular n-gon (order 2n)."""
    if n < 3:
        raise DomainError("dihedral groups need n >= 3")
    tally: Counter = Counter()
    for shift in range(n):
        d = math.gcd(shift, n)
        tally[CycleType.from_lengths([n // d] * d, n)] += 1
    if n % 2:
        tally[CycleType.from_lengths([1] + [2] * ((n - 1) // 2), n)] += n
    else:
        # axes through two opposite vertices, and through two edge midpoints
        tally[CycleType.from_lengths([1, 1] + [2] * ((n - 2) // 2), n)] += n // 2
        tally[CycleType.from_lengths([2] * (n // 2), n)] += n // 2
    return CycleIndexPoly(n, {ct: Fraction(c, 2 * n) for ct, c in tally.items()})


def group_cycle_index(group: Iterable[Sequence[int]], n: int) -> CycleIndexPoly:
    """Average the cycle types of an explicit list of 1-based permutations."""
    tally: Counter = Counter()
    size = 0
    for images in group:
        tally[CycleType.of_permutation(images)] += 1
        size += 1
    if size == 0:
        raise DomainError("empty group")
    return CycleIndexPoly(n, {ct: Fraction(c, size) for ct, c in tally.items()})


def _check_degrees(polys: Sequence[CycleIndexPoly]) -> None:
    if len(polys) < 2:
        raise DomainError("superposition needs at least two cycle indices")
    if len({p.n for p in polys}) != 1:
        raise DomainError(f"degree mismatch: {[p.n for p in polys]}")


def cup(polys: Sequence[CycleIndexPoly]) -> CycleIndexPoly:
    """Termwise superposition keeping the monomial of each shared cycle type."""
    _check_degrees(polys)
    count = len(polys)
    shared = set(polys[0].terms)
    for p in polys[1:]:
        shared &= set(p.terms)
    terms = {}
    for ctype in shared:
        coeff = math.prod((p.terms[ctype] for p in polys), start=Fraction(1))
        terms[ctype] = coeff * ctype.stabilizer_order() ** (count - 1)
    return CycleIndexPoly(polys[0].n, terms)


def cap(polys: Sequence[CycleIndexPoly]) -> Fraction:
    """Redfield's cap: the number of superpositions, as an exact rational."""
    return cup(polys).evaluate_at_ones()


def named_poly(name: str) -> CycleIndexPoly:
    """``symmetric:n``, ``cyclic:n`` or ``dihedral:n``."""
    kind, _, degree = name.partition(":")
    builders = {"symmetric": z_symmetric, "cyclic": z_cyclic, "dihedral": z_dihedral}
    if kind not in builders or not degree.isdigit():
        raise DomainError(f"unknown polynomial {name!r}; use symmetric:n, cyclic:n or dihedral:n")
    return builders[kind](int(degree))


# --------------------------------------------------------------------------
# automorphisms of Psi(beta)


def automorphism_column_actions(beta: Partition, max_m: int = CANONICAL_MAX_M) -> list[tuple[int, ...]]:
    """Column (VN) permutations that extend to an automorphism of Psi(beta).

    A column permutation extends iff permuting the columns leaves the
    multiset of rows unchanged, because any row permutation may then
    restore the original order.  Returned as 1-based image lists.
    """
    m = beta.m
    if m > max_m:
        raise ResourceError(f"automorphism search limited to m <= {max_m}")
    g = psi(beta)
    target = sorted(g.rows)
    actions = []
    for perm in permutations(range(m)):
        rows = sorted(
            sum(((x >> (m - 1 - perm[j])) & 1) << (m - 1 - j) for j in range(m)) for x in g.rows
        )
        if rows == target:
            actions.append(tuple(p + 1 for p in perm))
    return actions


def z_automorphism_of_psi(beta: Partition, max_m: int = CANONICAL_MAX_M) -> CycleIndexPoly:
    """Cycle index of the automorphism group of Psi(beta), acting on VN labels."""
    return group_cycle_index(automorphism_column_actions(beta, max_m), beta.m)


def upper_bound_phi(spec) -> Fraction:
    """Cap of the Psi automorphism cycle indices over the family's partitions.

    Bounds the number of isomorphism classes in the family.  With a single
    partition (r == 2) the family is one class and the bound is exactly 1.
    """
    if len(spec.betas) == 0:
        return Fraction(1)
    if len(spec.betas) == 1:
        return Fraction(1)
    return cap([z_automorphism_of_psi(b) for b in spec.betas])
