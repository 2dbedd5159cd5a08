"""Kleitman-Winston style encoding of vertex sets in a regular graph.

Given a d-regular graph with smallest eigenvalue at least ``-lam`` and a
vertex set K, :func:`kw_encode` returns a selected list S and an available
set A with ``S <= K <= S + N(S) + A`` and ``|A| <= alpha N``; A can be rebuilt
from S alone.  Graphs are :class:`~flatcover.graphs.RegularGraph` objects and
vertices are passed around as graph labels (bitmasks for Johnson graphs).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Callable, Hashable, Iterable

from .errors import ResidualOutsideA, ZeroDegree
from .graphs import RegularGraph
from .numeric import binomial_prefix_sum, ceil_sigma_n, ival, log2


@dataclass(frozen=True)
class KWEncoding:
    selected: tuple  # labels, in selection order
    available: frozenset
    # (|A| just before the pick, number of vertices removed from A), one per selection
    trace: tuple[tuple[int, int], ...] = field(default=(), compare=False, repr=False)


def _above_threshold(size: int, g: RegularGraph) -> bool:
    # |A| > alpha N, cross-multiplied: |A| (d + lam) > lam N
    return size * (g.d + g.lam) > g.lam * g.N


def _run(g: RegularGraph, take: Callable[[int], bool]) -> tuple[list[int], list[int], list[tuple[int, int]]]:
    """The selection loop on vertex indices.

    The first vertex of the canonical ordering is the live vertex of largest
    induced degree, smallest index on ties.  Induced degrees only decrease,
    so a per-degree bucket of min-heaps with lazy deletion finds it.
    """
    if g.d <= 0:
        raise ZeroDegree("the encoding procedure needs d > 0")
    n = g.N
    alive = bytearray([1]) * n
    deg = [g.d] * n
    buckets: list[list[int]] = [[] for _ in range(g.d + 1)]
    buckets[g.d] = list(range(n))
    top = g.d
    size = n
    selected: list[int] = []
    trace: list[tuple[int, int]] = []

    def remove(u: int) -> None:
        nonlocal size
        alive[u] = 0
        size -= 1
        for w in g.neighbor_indices(u):
            if alive[w]:
                deg[w] -= 1
                heapq.heappush(buckets[deg[w]], w)

    while _above_threshold(size, g):
        while True:
            while not buckets[top]:
                top -= 1
            v = heapq.heappop(buckets[top])
            if alive[v] and deg[v] == top:
                break
        if take(v):
            before = size
            selected.append(v)
            doomed = [w for w in g.neighbor_indices(v) if alive[w]]
            remove(v)
            for w in doomed:
                remove(w)
            trace.append((before, before - size))
        else:
            remove(v)
    return selected, [i for i in range(n) if alive[i]], trace


def kw_encode(g: RegularGraph, k: Iterable[Hashable]) -> KWEncoding:
    members = {g.index_of(x) for x in k}
    sel, avail, trace = _run(g, members.__contains__)
    return KWEncoding(
        tuple(g.label(i) for i in sel),
        frozenset(g.label(i) for i in avail),
        tuple(trace),
    )


def reconstruct_available(g: RegularGraph, s: Iterable[Hashable]) -> frozenset:
    """Replay the loop with membership in S as the selection rule; returns A."""
    pending = {g.index_of(x) for x in s}

    def take(v: int) -> bool:
        if v in pending:
            pending.discard(v)
            return True
        return False

    _, avail, _ = _run(g, take)
    return frozenset(g.label(i) for i in avail)


def decode_stable_set(g: RegularGraph, s: Iterable[Hashable], residual: Iterable[Hashable]) -> frozenset:
    """``S | residual``, after checking that ``residual`` lies inside the rebuilt A."""
    s = list(s)
    residual = frozenset(residual)
    avail = reconstruct_available(g, s)
    if not residual <= avail:
        raise ResidualOutsideA(f"{len(residual - avail)} residual vertices lie outside A")
    return frozenset(s) | residual


# Spectral edge bound and the stable-set count bound.


def edge_count(g: RegularGraph, a: Iterable[Hashable]) -> int:
    idx = {g.index_of(x) for x in a}
    return sum(1 for i in idx for j in g.neighbor_indices(i) if j in idx) // 2


def alon_chung_bound(g: RegularGraph, size: int) -> Fraction:
    """Lower bound on ``2 e(A)`` for ``|A| = size``: ``size (d size/N - lam (N-size)/N)``."""
    return size * (Fraction(g.d * size, g.N) - g.lam * Fraction(g.N - size, g.N))


def ceil_sigma(g: RegularGraph) -> int:
    return ceil_sigma_n(g.N, g.d, g.lam)


def floor_alpha(g: RegularGraph) -> int:
    return int(g.alpha * g.N)


def count_bound_terms(g: RegularGraph) -> tuple[int, Fraction]:
    """``(sum_{i <= ceil(sigma N)} C(N, i), alpha N)``: the count bound is ``first * 2**second``."""
    if g.d <= 0:
        raise ZeroDegree("count bound needs d > 0")
    return binomial_prefix_sum(g.N, ceil_sigma(g)), g.alpha * g.N


def count_bound_indsets(g: RegularGraph):
    """log2 of ``sum_{i <= ceil(sigma N)} C(N, i) * 2**(alpha N)``, as an interval."""
    prefix, alpha_n = count_bound_terms(g)
    return log2(prefix) + ival(alpha_n)


# Invariant audit.


def audit(g: RegularGraph, k: Iterable[Hashable], enc: KWEncoding) -> list[str]:
    """Every violated invariant of ``enc`` as a message; empty when all hold."""
    problems = []
    k_idx = {g.index_of(x) for x in k}
    s_idx = [g.index_of(x) for x in enc.selected]
    a_idx = {g.index_of(x) for x in enc.available}
    if not set(s_idx) <= k_idx:
        problems.append("S is not contained in K")
    reach = set(s_idx) | a_idx
    for i in s_idx:
        reach.update(g.neighbor_indices(i))
    if not k_idx <= reach:
        problems.append("K is not contained in S + N(S) + A")
    if reconstruct_available(g, enc.selected) != enc.available:
        problems.append("A is not reconstructible from S")
    if len(enc.selected) > ceil_sigma(g):
        problems.append(f"|S| = {len(enc.selected)} > ceil(sigma N) = {ceil_sigma(g)}")
    if len(enc.available) > floor_alpha(g):
        problems.append(f"|A| = {len(enc.available)} > floor(alpha N) = {floor_alpha(g)}")
    for before, removed in enc.trace:
        excess = before * (g.d + g.lam) - g.lam * g.N
        j = ceil(excess / g.N) - 1
        if removed < j + 2:
            problems.append(f"selection at |A|={before} removed {removed} < {j + 2} vertices")
    return problems
