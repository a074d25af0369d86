"""Balanced Tanner Units: the (m, r) regular bipartite graph as a square bit matrix.

Rows are CN nodes, columns are VN nodes.  Each row is held as an ``int`` in
which column 0 is the most significant of ``m`` bits, so comparing the row
integers compares the rows' bit strings lexicographically.  Labels shown to
users are 1-based; everything internal is 0-based.
"""

from __future__ import annotations

import json
import math
import random
from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, ResourceError
from .partitions import Partition, enumerate_p2

__all__ = [
    "INFINITE_GIRTH",
    "Btu",
    "CanonicalKey",
    "psi",
    "girth",
    "known_cycle_lengths",
    "gf2_rank",
    "complement",
    "is_isomorphic",
    "canonical_key",
    "canonical_form",
    "enumerate_nonisomorphic",
    "count_nonisomorphic",
    "enumerate_cycles",
    "cage",
    "random_btu",
    "CANONICAL_MAX_M",
    "BRUTE_FORCE_MAX_M",
    "CLOSED_FORM_MAX_M",
]

INFINITE_GIRTH = math.inf
CANONICAL_MAX_M = 8
BRUTE_FORCE_MAX_M = 7
CLOSED_FORM_MAX_M = 30


def _popcount(x: int) -> int:
    return bin(x).count("1")


class Btu:
    """An immutable (m, r) Balanced Tanner Unit."""

    __slots__ = ("m", "r", "rows")

    def __init__(self, rows: Sequence[int], m: int):
        rows = tuple(int(x) for x in rows)
        if m < 1 or len(rows) != m:
            raise DomainError(f"expected {m} rows, got {len(rows)}")
        full = (1 << m) - 1
        if any(x < 0 or x & ~full for x in rows):
            raise DomainError("row has bits outside the m columns")
        weights = {_popcount(x) for x in rows}
        if len(weights) != 1:
            raise DomainError(f"row sums differ: {sorted(weights)}")
        r = weights.pop()
        if r < 1:
            raise DomainError("row/column weight must be at least 1")
        for j in range(m):
            bit = 1 << (m - 1 - j)
            if sum(1 for x in rows if x & bit) != r:
                raise DomainError(f"column {j + 1} does not sum to {r}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Btu is immutable")

    # construction -------------------------------------------------------

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "Btu":
        m = len(matrix)
        rows = []
        for line in matrix:
            if len(line) != m:
                raise DomainError("matrix is not square")
            value = 0
            for bit in line:
                if bit not in (0, 1):
                    raise DomainError(f"entries must be 0/1, got {bit!r}")
                value = (value << 1) | bit
            rows.append(value)
        return cls(rows, m)

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[tuple[int, int]]) -> "Btu":
        """Build from 0-based (cn, vn) pairs; duplicate edges are an error."""
        rows = [0] * m
        for cn, vn in edges:
            bit = 1 << (m - 1 - vn)
            if rows[cn] & bit:
                raise DomainError(f"duplicate edge CN{cn + 1}-VN{vn + 1}")
            rows[cn] |= bit
        return cls(rows, m)

    @classmethod
    def identity(cls, m: int) -> "Btu":
        return cls([1 << (m - 1 - i) for i in range(m)], m)

    @classmethod
    def parse(cls, text: str) -> "Btu":
        """Parse the text format ("m r" header, then m lines of 0/1) or JSON."""
        text = text.strip()
        if text.startswith("{"):
            return cls.from_json(json.loads(text))
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise DomainError("empty matrix text")
        header = lines[0]
        if len(header) != 2:
            raise DomainError("first line must be the header 'm r'")
        m, r = int(header[0]), int(header[1])
        body = lines[1:]
        if len(body) != m:
            raise DomainError(f"header says m={m} but {len(body)} rows follow")
        g = cls.from_matrix([[int(t) for t in row] for row in body])
        if g.r != r:
            raise DomainError(f"header says r={r} but rows have weight {g.r}")
        return g

    @classmethod
    def from_json(cls, obj: dict) -> "Btu":
        g = cls.from_matrix(obj["rows"])
        if g.m != obj.get("m", g.m) or g.r != obj.get("r", g.r):
            raise DomainError("JSON m/r fields disagree with the rows")
        return g

    # views --------------------------------------------------------------

    def matrix(self) -> list[list[int]]:
        m = self.m
        return [[(x >> (m - 1 - j)) & 1 for j in range(m)] for x in self.rows]

    def bit(self, i: int, j: int) -> int:
        return (self.rows[i] >> (self.m - 1 - j)) & 1

    def row_neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.m) if self.bit(i, j)]

    def col_neighbors(self, j: int) -> list[int]:
        return [i for i in range(self.m) if self.bit(i, j)]

    def to_text(self) -> str:
        lines = [f"{self.m} {self.r}"]
        lines += [" ".join(str(b) for b in row) for row in self.matrix()]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"m": self.m, "r": self.r, "rows": self.matrix()}

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "Btu":
        """New row i is old row ``row_perm[i]``; new column j is old column ``col_perm[j]``."""
        m = self.m
        out = []
        for i in range(m):
            old = self.rows[row_perm[i]]
            value = 0
            for j in range(m):
                value = (value << 1) | ((old >> (m - 1 - col_perm[j])) & 1)
            out.append(value)
        return Btu(out, m)

    def __eq__(self, other) -> bool:
        return isinstance(other, Btu) and self.m == other.m and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.m, self.rows))

    def __repr__(self) -> str:
        return f"Btu(m={self.m}, r={self.r}, rows={[format(x, f'0{self.m}b') for x in self.rows]})"

    def __str__(self) -> str:
        return self.to_text()


# --------------------------------------------------------------------------
# canonical (m, 2) forms


def psi(beta: Partition | Sequence[int]) -> Btu:
    """The canonical (m,2) BTU for ``beta``: one 2q-cycle per part q, laid out block-diagonally."""
    if not isinstance(beta, Partition):
        parts = [int(p) for p in beta]
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"parts must be non-increasing, got {parts}")
        beta = Partition(parts)
    m = beta.m
    edges = [(i, i) for i in range(m)]
    offset = 0
    for q in beta.parts:
        for z in range(q):
            edges.append((offset + z, offset + (z + 1) % q))
        offset += q
    return Btu.from_edges(m, edges)


def known_cycle_lengths(beta: Partition) -> list[int]:
    return sorted((2 * q for q in beta.parts), reverse=True)


def cage(girth_target: int) -> Btu:
    """Minimum-order degree-2 bipartite graph with the given girth: Psi((g/2,))."""
    if girth_target < 4 or girth_target % 2:
        raise DomainError(f"girth must be even and >= 4, got {girth_target}")
    return psi(Partition([girth_target // 2]))


# --------------------------------------------------------------------------
# graph measurements


def _adjacency(g: Btu) -> list[list[int]]:
    # vertices 0..m-1 are CN, m..2m-1 are VN
    m = g.m
    adj: list[list[int]] = [[] for _ in range(2 * m)]
    for i in range(m):
        for j in g.row_neighbors(i):
            adj[i].append(m + j)
            adj[m + j].append(i)
    return adj


def girth(g: Btu) -> int | float:
    """Shortest cycle length, or ``INFINITE_GIRTH`` for a forest (r == 1)."""
    adj = _adjacency(g)
    n = len(adj)
    best = INFINITE_GIRTH
    for root in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif v != parent[u]:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


def enumerate_cycles(g: Btu, max_len: int) -> list[tuple[int, ...]]:
    """All simple cycles of length <= ``max_len``.

    Each cycle is reported once as 1-based labels ``(cn, vn, cn, vn, ...)``,
    rotated to start at its smallest CN label and oriented so the VN after
    that CN is smaller than the VN before it.  Output is sorted by length,
    then lexicographically.
    """
    m = g.m
    adj = _adjacency(g)
    found: list[tuple[int, ...]] = []
    path: list[int] = []
    on_path = [False] * (2 * m)

    def extend(start: int, u: int) -> None:
        for v in adj[u]:
            if v == start and len(path) >= 4:
                # each cycle is seen in both directions; keep one
                if path[1] < path[-1]:
                    found.append(tuple(path))
            elif v > start and not on_path[v] and len(path) < max_len:
                path.append(v)
                on_path[v] = True
                extend(start, v)
                on_path[v] = False
                path.pop()

    # the smallest vertex on any cycle is a CN node since CN ids < VN ids
    for start in range(m):
        path.append(start)
        on_path[start] = True
        extend(start, start)
        on_path[start] = False
        path.pop()

    cycles = [tuple(v + 1 if v < m else v - m + 1 for v in c) for c in found]
    cycles.sort(key=lambda c: (len(c), c))
    return cycles


def gf2_rank(g: Btu) -> int:
    """Rank of the matrix over GF(2)."""
    work = list(g.rows)
    rank = 0
    for bit in reversed(range(g.m)):
        mask = 1 << bit
        pivot = next((k for k in range(rank, len(work)) if work[k] & mask), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for k in range(len(work)):
            if k != rank and work[k] & mask:
                work[k] ^= work[rank]
        rank += 1
    return rank


def complement(g: Btu) -> Btu:
    """Flip every bit, turning an (m, r) BTU into an (m, m-r) BTU."""
    if g.r == g.m:
        raise DomainError("the complement of an (m, m) BTU has weight 0")
    full = (1 << g.m) - 1
    return Btu([x ^ full for x in g.rows], g.m)


# --------------------------------------------------------------------------
# canonical labelling


@dataclass(frozen=True, order=True)
class CanonicalKey:
    """Lexicographically smallest row-major bit string over all row/column relabelings."""

    m: int
    rows: tuple[int, ...]

    def hex(self) -> str:
        value = 0
        for x in self.rows:
            value = (value << self.m) | x
        width = -(-self.m * self.m // 4)
        return format(value, f"0{width}x")

    def __str__(self) -> str:
        return self.hex()


def _canonical_rows(g: Btu) -> tuple[int, ...]:
    m = g.m
    # column masks use the MSB-first convention of Btu.rows
    col_bit = [1 << (m - 1 - j) for j in range(m)]

    # Rows are chosen one at a time.  Columns live in an ordered list of
    # cells whose internal order is still free; placing a row's zero
    # columns before its one columns inside every cell minimises that row
    # without disturbing the rows already placed.  Only rows that tie for
    # the minimum value need to be branched on.
    best: list[int] | None = None

    def place(row: int, cells: list[list[int]]) -> tuple[int, list[list[int]]]:
        value = 0
        refined = []
        for cell in cells:
            zeros = [c for c in cell if not row & col_bit[c]]
            ones = [c for c in cell if row & col_bit[c]]
            value = (value << len(cell)) | ((1 << len(ones)) - 1)
            if zeros:
                refined.append(zeros)
            if ones:
                refined.append(ones)
        return value, refined

    def search(prefix: list[int], remaining: Counter, cells: list[list[int]]) -> None:
        nonlocal best
        depth = len(prefix)
        if depth == m:
            if best is None or prefix < best:
                best = list(prefix)
            return
        if len(cells) == m:
            # column order is fully fixed: the remaining rows simply sort
            tail = sorted(
                _reorder(row, cells) for row, count in remaining.items() for _ in range(count)
            )
            candidate = prefix + tail
            if best is None or candidate < best:
                best = candidate
            return
        options = [(*place(row, cells), row) for row in remaining]
        low = min(opt[0] for opt in options)
        options = [opt for opt in options if opt[0] == low]
        if len(options) > 2:
            options = _distinct_up_to_swaps(options, remaining, cells)
        for value, refined, row in options:
            prefix.append(value)
            if best is not None and prefix > best[: depth + 1]:
                prefix.pop()
                return
            remaining[row] -= 1
            if not remaining[row]:
                del remaining[row]
            search(prefix, remaining, refined)
            remaining[row] += 1
            prefix.pop()

    def _distinct_up_to_swaps(options, remaining: Counter, cells: list[list[int]]):
        # A swap of two columns in one cell that fixes the remaining rows is a
        # symmetry of the whole search state, so rows it exchanges lead to
        # identical subtrees.  Such swaps generate a product of symmetric
        # groups on blocks; a row's orbit is its weight in each block.
        parent = list(range(m))

        def find(c: int) -> int:
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        for cell in cells:
            for a, b in combinations(cell, 2):
                ra, rb = find(a), find(b)
                if ra == rb:
                    continue
                both = col_bit[a] | col_bit[b]
                swapped = Counter()
                for row, count in remaining.items():
                    bits = row & both
                    swapped[row ^ both if bits and bits != both else row] += count
                if swapped == remaining:
                    parent[rb] = ra
        kept = {}
        for opt in options:
            row = opt[2]
            signature = Counter(find(c) for c in range(m) if row & col_bit[c])
            kept.setdefault(frozenset(signature.items()), opt)
        return list(kept.values())

    def _reorder(row: int, cells: list[list[int]]) -> int:
        value = 0
        for cell in cells:
            value = (value << 1) | (1 if row & col_bit[cell[0]] else 0)
        return value

    search([], Counter(g.rows), [list(range(m))])
    assert best is not None
    return tuple(best)


def canonical_key(g: Btu, max_m: int = CANONICAL_MAX_M) -> CanonicalKey:
    if g.m > max_m:
        raise ResourceError(f"canonical search limited to m <= {max_m}, got m={g.m}")
    return CanonicalKey(g.m, _canonical_rows(g))


def canonical_form(g: Btu, max_m: int = CANONICAL_MAX_M) -> Btu:
    """The isomorphic BTU whose rows are the canonical key."""
    return Btu(canonical_key(g, max_m).rows, g.m)


def is_isomorphic(a: Btu, b: Btu, max_m: int = CANONICAL_MAX_M) -> bool:
    """True iff some row and column permutation turns ``a`` into ``b``."""
    if a.m != b.m or a.r != b.r:
        return False
    if a == b:
        return True
    if sorted(_popcount(x) for x in a.rows) != sorted(_popcount(x) for x in b.rows):
        return False
    return canonical_key(a, max_m) == canonical_key(b, max_m)


# --------------------------------------------------------------------------
# non-isomorphic enumeration


def _sorted_labeled(m: int, r: int) -> Iterator[tuple[int, ...]]:
    """Labeled (m, r) BTUs with non-decreasing rows whose first row is 0..01..1.

    Every isomorphism class has at least one such member: relabel columns
    so some row becomes the smallest weight-r pattern, then sort the rows.
    """
    patterns = sorted(
        sum(1 << (m - 1 - j) for j in cols) for cols in combinations(range(m), r)
    )
    first = patterns[0]
    col_bit = [1 << (m - 1 - j) for j in range(m)]
    capacity = [r - (1 if first & col_bit[j] else 0) for j in range(m)]
    rows = [first]

    def extend(start: int) -> Iterator[tuple[int, ...]]:
        left = m - len(rows)
        if left == 0:
            yield tuple(rows)
            return
        # every column must still be fillable by the rows that remain
        if any(c > left for c in capacity):
            return
        for k in range(start, len(patterns)):
            pat = patterns[k]
            if any(pat & col_bit[j] and capacity[j] == 0 for j in range(m)):
                continue
            for j in range(m):
                if pat & col_bit[j]:
                    capacity[j] -= 1
            rows.append(pat)
            yield from extend(k)
            rows.pop()
            for j in range(m):
                if pat & col_bit[j]:
                    capacity[j] += 1

    yield from extend(0)


def enumerate_nonisomorphic(m: int, r: int, max_m: int = BRUTE_FORCE_MAX_M) -> list[Btu]:
    """One representative per isomorphism class of (m, r) BTUs.

    r == 1 and r == 2 use closed forms (identity, Psi over P2(m)); r == m is
    the all-ones matrix.  Other weights are enumerated by brute force and
    returned as canonical forms sorted by canonical key.
    """
    if m < 1 or not 1 <= r <= m:
        raise DomainError(f"need 1 <= r <= m, got m={m}, r={r}")
    if r == 1:
        if m > CLOSED_FORM_MAX_M:
            raise ResourceError(f"closed form supported for m <= {CLOSED_FORM_MAX_M}")
        return [Btu.identity(m)]
    if r == m:
        return [Btu([(1 << m) - 1] * m, m)]
    if r == 2:
        if m > CLOSED_FORM_MAX_M:
            raise ResourceError(f"closed form supported for m <= {CLOSED_FORM_MAX_M}")
        return [psi(beta) for beta in enumerate_p2(m)]
    if m > max_m:
        raise ResourceError(f"brute-force enumeration limited to m <= {max_m}, got m={m}")
    keys = {canonical_key(Btu(rows, m), max(max_m, m)) for rows in _sorted_labeled(m, r)}
    return [Btu(k.rows, m) for k in sorted(keys)]


def count_nonisomorphic(m: int, r: int, max_m: int = BRUTE_FORCE_MAX_M, check_symmetry: bool = True) -> int:
    """E(m, r).  When the mirror E(m, m-r) is also computable it is checked to match."""
    count = len(enumerate_nonisomorphic(m, r, max_m))
    mirror = m - r
    if check_symmetry and 1 <= mirror < m and mirror != r:
        try:
            other = len(enumerate_nonisomorphic(m, mirror, max_m))
        except ResourceError:
            return count
        if other != count:
            raise AssertionError(f"E({m},{r})={count} but E({m},{mirror})={other}")
    return count


# --------------------------------------------------------------------------
# sampling


def random_btu(m: int, r: int, rng: random.Random | None = None) -> Btu:
    """A random labeled (m, r) BTU (not uniformly distributed).

    Stacks ``r`` permutation matrices, each drawn by randomized depth-first
    search over the columns still free in every row, then shuffles labels.
    """
    if not 1 <= r <= m:
        raise DomainError(f"need 1 <= r <= m, got m={m}, r={r}")
    rng = rng or random.Random()
    used = [set() for _ in range(m)]  # columns already taken in each row
    for _ in range(r):
        perm = [-1] * m
        taken = [False] * m

        def fill(i: int) -> bool:
            if i == m:
                return True
            choices = [j for j in range(m) if not taken[j] and j not in used[i]]
            rng.shuffle(choices)
            for j in choices:
                taken[j] = True
                perm[i] = j
                if fill(i + 1):
                    return True
                taken[j] = False
            return False

        # Hall's condition holds for the free cells of a regular remainder
        if not fill(0):
            raise AssertionError("no perfect matching in a regular bipartite graph")
        for i, j in enumerate(perm):
            used[i].add(j)
    g = Btu.from_edges(m, ((i, j) for i in range(m) for j in used[i]))
    rows = list(range(m))
    cols = list(range(m))
    rng.shuffle(rows)
    rng.shuffle(cols)
    return g.permuted(rows, cols)
