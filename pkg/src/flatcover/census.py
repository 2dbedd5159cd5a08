"""Exhaustive enumeration of labelled matroids and sparse paving matroids.

These are the ground-truth oracles for everything else: every matroid of a
given rank on ``{0..n-1}``, the stable-set driven enumeration of sparse
paving matroids, and isomorphism-class counts.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Sequence

from .bits import elements, subsets_of_size
from .errors import TooLarge
from .graphs import iter_stable_sets
from .johnson import johnson
from .matroid import Matroid, find_exchange_violation, matroid_from_bases

PLAIN_MAX_VERTICES = 20
PRUNED_MAX_VERTICES = 35
SPARSE_PAVING_MAX_VERTICES = 70
MAX_CENSUS_N = 7


@dataclass(frozen=True)
class CensusResult:
    n: int
    matroid_counts: tuple[int, ...]  # m_{n,r}, r = 0..n
    sparse_paving_counts: tuple[int, ...]  # s_{n,r}
    isomorphism_class_counts: tuple[int, ...] | None = None

    @property
    def total_matroids(self) -> int:
        return sum(self.matroid_counts)

    @property
    def total_sparse_paving(self) -> int:
        return sum(self.sparse_paving_counts)

    @property
    def total_isomorphism_classes(self) -> int | None:
        if self.isomorphism_class_counts is None:
            return None
        return sum(self.isomorphism_class_counts)


# Plain enumeration: every subfamily of the r-sets.


def _enumerate_plain(n: int, r: int) -> Iterator[tuple[int, ...]]:
    verts = list(subsets_of_size(n, r))
    for chosen in range(1, 1 << len(verts)):
        fam = tuple(verts[i] for i in elements(chosen))
        if find_exchange_violation(n, fam) is None:
            yield fam


# Pruned enumeration.
#
# r-sets are decided in ascending order (include or exclude).  A pair of
# included sets B, B2 and an element e of B - B2 leave a witness set W of
# r-sets B - e + f, f in B2 - B; the branch dies once every member of W has
# been excluded.  Pairs with |B - B2| = 1 always satisfy exchange (B2 itself
# is the witness) and carry no constraint.


@dataclass(frozen=True)
class _Constraints:
    verts: tuple[int, ...]
    pair: tuple[tuple[tuple[int, ...], ...], ...]  # pair[i][j], j < i: witness masks
    hits: tuple[tuple[tuple[int, int, int], ...], ...]  # hits[v]: (a, b, W) with a, b < v and v in W


@lru_cache(maxsize=None)
def _constraints(n: int, r: int) -> _Constraints:
    verts = tuple(subsets_of_size(n, r))
    index = {v: i for i, v in enumerate(verts)}
    count = len(verts)
    pair: list[list[list[int]]] = [[[] for _ in range(i)] for i in range(count)]
    hits: list[list[tuple[int, int, int]]] = [[] for _ in range(count)]
    for a, b in itertools.permutations(range(count), 2):
        ba, bb = verts[a], verts[b]
        if (ba & ~bb).bit_count() < 2:
            continue
        gained = elements(bb & ~ba)
        for e in elements(ba & ~bb):
            w = 0
            for f in gained:
                w |= 1 << index[ba ^ (1 << e) ^ (1 << f)]
            hi, lo = max(a, b), min(a, b)
            pair[hi][lo].append(w)
            for v in elements(w):
                if a < v and b < v:
                    hits[v].append((a, b, w))
    return _Constraints(
        verts,
        tuple(tuple(tuple(ws) for ws in row) for row in pair),
        tuple(tuple(h) for h in hits),
    )


def _enumerate_pruned(n: int, r: int, prefix: Sequence[bool] = ()) -> Iterator[tuple[int, ...]]:
    """Families passing the pruned search whose first decisions equal ``prefix``."""
    cons = _constraints(n, r)
    count = len(cons.verts)
    pair, hits = cons.pair, cons.hits

    def include_ok(i: int, included: list[int], allowed: int) -> bool:
        row = pair[i]
        for j in included:
            for w in row[j]:
                if not w & allowed:
                    return False
        return True

    def exclude_ok(i: int, inc: int, allowed: int) -> bool:
        for a, b, w in hits[i]:
            if (inc >> a) & 1 and (inc >> b) & 1 and not w & allowed:
                return False
        return True

    def walk(i: int, inc: int, included: list[int], allowed: int) -> Iterator[int]:
        if i == count:
            if inc:
                yield inc
            return
        forced = prefix[i] if i < len(prefix) else None
        bit = 1 << i
        if forced is not False and include_ok(i, included, allowed):
            included.append(i)
            yield from walk(i + 1, inc | bit, included, allowed)
            included.pop()
        if forced is not True:
            narrowed = allowed & ~bit
            if exclude_ok(i, inc, narrowed):
                yield from walk(i + 1, inc, included, narrowed)

    verts = cons.verts
    for inc in walk(0, 0, [], (1 << count) - 1):
        yield tuple(verts[i] for i in elements(inc))


def _pruned_partition(args: tuple[int, int, tuple[bool, ...]]) -> list[tuple[int, ...]]:
    n, r, prefix = args
    return list(_enumerate_pruned(n, r, prefix))


def enumerate_matroids(n: int, r: int, method: str = "pruned", jobs: int = 1) -> list[Matroid]:
    """Every matroid of rank ``r`` on ``n`` labelled elements, in ascending order of base tuples.

    Each family found by the search is re-validated by :func:`matroid_from_bases`.
    """
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")
    count = comb(n, r)
    if method == "plain":
        if count > PLAIN_MAX_VERTICES:
            raise TooLarge(f"plain enumeration capped at C(n,r) <= {PLAIN_MAX_VERTICES}")
        families = list(_enumerate_plain(n, r))
    elif method == "pruned":
        if count > PRUNED_MAX_VERTICES:
            raise TooLarge(f"pruned enumeration capped at C(n,r) <= {PRUNED_MAX_VERTICES}")
        if jobs > 1 and count >= 4:
            depth = min(count, 4)
            prefixes = [(n, r, p) for p in itertools.product((True, False), repeat=depth)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                families = [fam for part in pool.map(_pruned_partition, prefixes) for fam in part]
        else:
            families = list(_enumerate_pruned(n, r))
    else:
        raise ValueError(f"unknown method {method!r}")
    families.sort()
    return [matroid_from_bases(n, r, fam) for fam in families]


def enumerate_sparse_paving(n: int, r: int) -> list[Matroid]:
    """One matroid per stable set I of J(n, r): bases = all r-sets minus I."""
    if not 0 < r < n:
        raise ValueError(f"need 0 < r < n, got n={n}, r={r}")
    g = johnson(n, r)
    if g.N > SPARSE_PAVING_MAX_VERTICES:
        raise TooLarge(f"sparse paving enumeration capped at C(n,r) <= {SPARSE_PAVING_MAX_VERTICES}")
    verts = list(g.vertices())
    out = []
    for stable in iter_stable_sets(g.adjacency_masks):
        out.append(matroid_from_bases(n, r, [v for i, v in enumerate(verts) if not (stable >> i) & 1]))
    out.sort(key=lambda m: m.bases)
    return out


# Isomorphism classes.


def _mask_permutation(n: int, perm: Sequence[int]) -> list[int]:
    """Table sending each subset mask to its image under ``e -> perm[e]``."""
    table = [0] * (1 << n)
    for e in range(n):
        bit, image = 1 << e, 1 << perm[e]
        for s in range(1 << n):
            if s & bit:
                table[s] |= image
    return table


def _cycle_type_representatives(n: int) -> list[tuple[list[int], int]]:
    """One permutation per cycle type with the size of its conjugacy class."""
    out = []

    def partitions(rest: int, largest: int) -> Iterator[list[int]]:
        if rest == 0:
            yield []
            return
        for k in range(min(rest, largest), 0, -1):
            for tail in partitions(rest - k, k):
                yield [k] + tail

    for shape in partitions(n, n):
        perm = list(range(n))
        start = 0
        for k in shape:
            for t in range(k):
                perm[start + t] = start + (t + 1) % k
            start += k
        denom = 1
        for k, mult in Counter(shape).items():
            denom *= k**mult * factorial(mult)
        out.append((perm, factorial(n) // denom))
    return out


def count_isomorphism_classes(matroids: Sequence[Matroid], n: int) -> int:
    """Number of orbits of the symmetric group, by Burnside over conjugacy classes."""
    total = 0
    for perm, size in _cycle_type_representatives(n):
        table = _mask_permutation(n, perm)
        fixed = 0
        for m in matroids:
            bs = m._base_set
            if all(table[b] in bs for b in m.bases):
                fixed += 1
        total += size * fixed
    assert total % factorial(n) == 0
    return total // factorial(n)


def isomorphism_orbits(matroids: Sequence[Matroid], n: int) -> int:
    """Number of orbits, by union-find under the adjacent transpositions."""
    index = {m.bases: i for i, m in enumerate(matroids)}
    parent = list(range(len(matroids)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for t in range(n - 1):
        perm = list(range(n))
        perm[t], perm[t + 1] = t + 1, t
        table = _mask_permutation(n, perm)
        for i, m in enumerate(matroids):
            j = index[tuple(sorted(table[b] for b in m.bases))]
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
    return len({find(i) for i in range(len(matroids))})


# Counting.


def count_matroids(n: int, jobs: int = 1, isomorphism: bool | None = None) -> CensusResult:
    """Exact labelled counts ``m_{n,r}`` and ``s_{n,r}`` for every rank.

    Isomorphism-class counts are included by default for n <= 6.
    """
    if n > MAX_CENSUS_N:
        raise TooLarge(f"census capped at n <= {MAX_CENSUS_N}")
    if isomorphism is None:
        isomorphism = n <= 6
    m_counts, s_counts, iso_counts = [], [], []
    for r in range(n + 1):
        ms = enumerate_matroids(n, r, jobs=jobs)
        m_counts.append(len(ms))
        s_counts.append(sum(1 for m in ms if m.is_sparse_paving()))
        if isomorphism:
            iso_counts.append(count_isomorphism_classes(ms, n))
    return CensusResult(n, tuple(m_counts), tuple(s_counts), tuple(iso_counts) if isomorphism else None)


def bell(k: int) -> int:
    """Bell numbers via the triangle."""
    row = [1]
    for _ in range(k):
        new = [row[-1]]
        for x in row:
            new.append(new[-1] + x)
        row = new
    return row[0]


def rank_two_count(n: int) -> int:
    """Closed form for labelled rank-2 matroids: choose loops, split the rest into >= 2 parallel classes."""
    return sum(comb(n, k) * (bell(n - k) - 1) for k in range(n - 1))
