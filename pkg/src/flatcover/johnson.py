"""The Johnson graph J(n, r) on r-subsets of ``{0..n-1}``.

Vertices are bitmasks; vertex index = position in ascending numeric order,
which is the fixed linear order used everywhere in the package.  Adjacency
is computed on demand from the masks.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import graphs
from .bits import colex_rank, colex_unrank, elements, full, popcount, subsets_of_size
from .errors import EmptyInput, RankOutOfRange
from .numeric import ceil_sigma_n, sigma_float

# Neighbour lists are cached per graph below this many vertices.
_CACHE_MAX_N = 20000


@dataclass(frozen=True)
class JohnsonParams:
    N: int
    d: int
    lam: int
    alpha: Fraction
    sigma: float

    @property
    def alpha_n(self) -> Fraction:
        return self.alpha * self.N

    @property
    def floor_alpha_n(self) -> int:
        return int(self.alpha * self.N)

    @property
    def ceil_sigma_n(self) -> int:
        return ceil_sigma_n(self.N, self.d, Fraction(self.lam))


def params(n: int, r: int) -> JohnsonParams:
    """``N = C(n,r)``, ``d = r(n-r)``, ``lam = r``, ``alpha = 1/(n-r+1)``, ``sigma = ln(d+1)/(r(n-r+1))``."""
    if not (0 < r and 2 * r <= n):
        raise RankOutOfRange(f"need 0 < r <= n/2, got n={n}, r={r}")
    d = r * (n - r)
    return JohnsonParams(
        N=comb(n, r),
        d=d,
        lam=r,
        alpha=Fraction(r, d + r),
        sigma=sigma_float(d, Fraction(r)),
    )


class JohnsonGraph(graphs.RegularGraph):
    def __init__(self, n: int, r: int) -> None:
        if not 0 <= r <= n <= 63:
            raise ValueError(f"need 0 <= r <= n <= 63, got n={n}, r={r}")
        self.n = n
        self.r = r
        self.N = comb(n, r)
        self.d = r * (n - r)
        self.lam = Fraction(min(r, n - r))
        self._cache: dict[int, tuple[int, ...]] | None = {} if self.N <= _CACHE_MAX_N else None

    def __repr__(self) -> str:
        return f"J({self.n},{self.r})"

    def label(self, i: int) -> int:
        return colex_unrank(i, self.r)

    def index_of(self, mask: int) -> int:
        return colex_rank(mask)

    def vertices(self) -> Iterator[int]:
        return subsets_of_size(self.n, self.r)

    def neighbors(self, x: int) -> list[int]:
        """The r(n-r) sets ``x - e + f``, ascending."""
        outside = elements(full(self.n) & ~x)
        return sorted(x ^ (1 << e) ^ (1 << f) for e in elements(x) for f in outside)

    def neighbor_indices(self, i: int) -> Sequence[int]:
        if self._cache is not None:
            hit = self._cache.get(i)
            if hit is not None:
                return hit
        out = tuple(colex_rank(y) for y in self.neighbors(colex_unrank(i, self.r)))
        if self._cache is not None:
            self._cache[i] = out
        return out

    def adjacent(self, x: int, y: int) -> bool:
        return popcount(x & y) == self.r - 1 and popcount(x) == popcount(y) == self.r

    def params(self) -> JohnsonParams:
        if 2 * self.r <= self.n:
            return params(self.n, self.r)
        return params(self.n, self.n - self.r)


@lru_cache(maxsize=None)
def johnson(n: int, r: int) -> JohnsonGraph:
    return JohnsonGraph(n, r)


def vertices(n: int, r: int) -> list[int]:
    return list(subsets_of_size(n, r))


def neighbors(n: int, r: int, x: int) -> list[int]:
    return johnson(n, r).neighbors(x)


# Graham-Sloane colouring.


def graham_sloane_color(n: int, x: int) -> int:
    """Sum of the (0-based) elements of ``x`` modulo ``n``."""
    return sum(elements(x)) % n


def graham_sloane_classes(n: int, r: int) -> list[list[int]]:
    classes: list[list[int]] = [[] for _ in range(n)]
    for x in subsets_of_size(n, r):
        classes[graham_sloane_color(n, x)].append(x)
    return classes


def graham_sloane_stable_set(n: int, r: int) -> list[int]:
    """Largest colour class (smallest colour on ties); a stable set of size >= C(n,r)/n."""
    if not 0 < r < n:
        raise RankOutOfRange(f"need 0 < r < n, got n={n}, r={r}")
    classes = graham_sloane_classes(n, r)
    return max(classes, key=len)


# Domination.


def greedy_dominating_set(g: graphs.RegularGraph) -> list[int]:
    """Greedy cover by closed neighbourhoods; returns vertex labels in selection order.

    Each step takes the vertex whose closed neighbourhood contains the most
    undominated vertices (smallest index on ties).  Gains only shrink, so a
    lazily refreshed heap is exact.
    """
    undominated = bytearray([1]) * g.N
    remaining = g.N
    heap = [(-(g.d + 1), i) for i in range(g.N)]
    heapq.heapify(heap)
    chosen = []
    while remaining:
        neg_gain, i = heapq.heappop(heap)
        closed = (i, *g.neighbor_indices(i))
        gain = sum(undominated[j] for j in closed)
        if gain != -neg_gain:
            heapq.heappush(heap, (-gain, i))
            continue
        chosen.append(i)
        for j in closed:
            if undominated[j]:
                undominated[j] = 0
                remaining -= 1
    return [g.label(i) for i in chosen]


def dominating_set_bound(n_vertices: int, d: int) -> float:
    """``N (ln(d+1) + 1) / (d+1)``."""
    return n_vertices * (math.log(d + 1) + 1) / (d + 1)


# Canonical ordering.


def first_in_canonical_ordering(g: JohnsonGraph, a: Iterable[int]) -> int:
    """Vertex of largest degree inside ``a``; smallest mask on ties."""
    chosen = set(a)
    if not chosen:
        raise EmptyInput("canonical ordering of an empty set")
    best, best_deg = None, -1
    for x in sorted(chosen):
        deg = sum(1 for y in g.neighbors(x) if y in chosen)
        if deg > best_deg:
            best, best_deg = x, deg
    return best  # type: ignore[return-value]


# Brute-force oracles.


def brute_count_stable_sets(g: graphs.RegularGraph) -> int:
    return graphs.brute_count_stable_sets(g)


def brute_max_stable_set(g: graphs.RegularGraph) -> int:
    return graphs.brute_max_stable_set(g)


def adjacency_matrix(g: graphs.RegularGraph) -> np.ndarray:
    a = np.zeros((g.N, g.N))
    for i in range(g.N):
        a[i, list(g.neighbor_indices(i))] = 1.0
    return a


def smallest_eigenvalue_power(g: graphs.RegularGraph, iterations: int = 2000, seed: int = 0, tol: float = 1e-13) -> float:
    """Smallest adjacency eigenvalue by power iteration on ``d*I - A``.

    The shift maps the smallest eigenvalue of ``A`` to the largest of the
    shifted operator, which power iteration then isolates.
    """
    a = adjacency_matrix(g)
    shifted = g.d * np.eye(g.N) - a
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(g.N)
    v /= np.linalg.norm(v)
    estimate = 0.0
    for _ in range(iterations):
        w = shifted @ v
        new = float(v @ w)
        v = w / np.linalg.norm(w)
        if abs(new - estimate) < tol:
            estimate = new
            break
        estimate = new
    return g.d - float(v @ shifted @ v)
