"""Regular graphs with a fixed vertex order, and exact stable-set oracles.

Vertices are the integers ``0..N-1``; their natural order is the linear
order used by the encoding procedure.  ``lam`` is the magnitude of the
smallest adjacency eigenvalue (or any valid lower-bound magnitude).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterator, Sequence

from .errors import TooLarge

MAX_COUNT_N = 80
MAX_STABLE_N = 70
MAX_ENUM_N = 70


class RegularGraph:
    """Base class: subclasses set ``N``, ``d``, ``lam`` and implement ``neighbor_indices``."""

    N: int
    d: int
    lam: Fraction

    def neighbor_indices(self, i: int) -> Sequence[int]:
        raise NotImplementedError

    def label(self, i: int) -> Hashable:
        return i

    def index_of(self, label: Hashable) -> int:
        return int(label)  # type: ignore[arg-type]

    def vertices(self) -> Iterator[Hashable]:
        return (self.label(i) for i in range(self.N))

    @cached_property
    def adjacency_masks(self) -> list[int]:
        """``adjacency_masks[i]`` has bit ``j`` set iff ``i ~ j``."""
        out = []
        for i in range(self.N):
            m = 0
            for j in self.neighbor_indices(i):
                m |= 1 << j
            out.append(m)
        return out

    @property
    def alpha(self) -> Fraction:
        return self.lam / (self.d + self.lam)


class AdjacencyGraph(RegularGraph):
    """A regular graph given by explicit neighbour lists."""

    def __init__(self, adjacency: Sequence[Sequence[int]], lam: Fraction | int, name: str = "graph") -> None:
        adj = [sorted(set(nb)) for nb in adjacency]
        degrees = {len(nb) for nb in adj}
        if len(degrees) != 1:
            raise ValueError(f"{name} is not regular: degrees {sorted(degrees)}")
        for i, nb in enumerate(adj):
            for j in nb:
                if i == j or i not in adj[j]:
                    raise ValueError(f"{name}: adjacency is not symmetric/loopless at {i}-{j}")
        self._adj = [tuple(nb) for nb in adj]
        self.N = len(adj)
        self.d = degrees.pop()
        self.lam = Fraction(lam)
        self.name = name

    def neighbor_indices(self, i: int) -> Sequence[int]:
        return self._adj[i]

    def __repr__(self) -> str:
        return f"{self.name}(N={self.N}, d={self.d}, lam={self.lam})"


def cycle(n: int) -> AdjacencyGraph:
    """C_n.  For odd n the exact smallest eigenvalue is irrational; 2 is used as a valid bound."""
    return AdjacencyGraph([[(i - 1) % n, (i + 1) % n] for i in range(n)], 2, f"C{n}")


def complete(n: int) -> AdjacencyGraph:
    return AdjacencyGraph([[j for j in range(n) if j != i] for i in range(n)], 1, f"K{n}")


def complete_bipartite(t: int) -> AdjacencyGraph:
    adj = [[j for j in range(t, 2 * t)] for _ in range(t)] + [[j for j in range(t)] for _ in range(t)]
    return AdjacencyGraph(adj, t, f"K{t},{t}")


def hypercube(k: int) -> AdjacencyGraph:
    return AdjacencyGraph([[v ^ (1 << b) for b in range(k)] for v in range(1 << k)], k, f"Q{k}")


def petersen() -> AdjacencyGraph:
    outer = [[(i + 1) % 5, (i - 1) % 5, i + 5] for i in range(5)]
    inner = [[5 + (i + 2) % 5, 5 + (i - 2) % 5, i] for i in range(5)]
    return AdjacencyGraph(outer + inner, 2, "Petersen")


# Exact stable-set oracles on index bitmasks.


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _component(adj: Sequence[int], mask: int) -> int:
    """Connected component of the lowest vertex of ``mask`` inside ``mask``."""
    seen = mask & -mask
    frontier = seen
    while frontier:
        v = _lowest(frontier)
        frontier &= frontier - 1
        new = adj[v] & mask & ~seen
        seen |= new
        frontier |= new
    return seen


def count_stable_sets(adj: Sequence[int], mask: int | None = None) -> int:
    """Number of stable sets (including the empty set) of the graph induced on ``mask``."""
    if mask is None:
        mask = (1 << len(adj)) - 1
    memo: dict[int, int] = {}

    def count(p: int) -> int:
        if p == 0:
            return 1
        hit = memo.get(p)
        if hit is not None:
            return hit
        comp = _component(adj, p)
        if comp != p:
            result = count(comp) * count(p & ~comp)
        else:
            best, best_deg = -1, -1
            q = p
            while q:
                v = _lowest(q)
                q &= q - 1
                deg = (adj[v] & p).bit_count()
                if deg > best_deg:
                    best, best_deg = v, deg
            if best_deg == 0:
                result = 1 << p.bit_count()
            else:
                v = best
                result = count(p & ~(1 << v)) + count(p & ~(1 << v) & ~adj[v])
        memo[p] = result
        return result

    return count(mask)


def max_stable_set(adj: Sequence[int]) -> int:
    """Stability number by branch and bound with a greedy clique-cover bound."""
    n = len(adj)
    best = 0

    def clique_cover_bound(p: int) -> int:
        cliques = 0
        while p:
            v = _lowest(p)
            clique = 1 << v
            cand = p & adj[v]
            while cand:
                u = _lowest(cand)
                clique |= 1 << u
                cand &= adj[u]
                cand &= ~(1 << u)
            p &= ~clique
            cliques += 1
        return cliques

    def search(p: int, size: int) -> None:
        nonlocal best
        if p == 0:
            best = max(best, size)
            return
        if size + p.bit_count() <= best or size + clique_cover_bound(p) <= best:
            return
        v, v_deg = -1, -1
        q = p
        while q:
            u = _lowest(q)
            q &= q - 1
            deg = (adj[u] & p).bit_count()
            if deg > v_deg:
                v, v_deg = u, deg
        if v_deg == 0:
            best = max(best, size + p.bit_count())
            return
        search(p & ~(1 << v) & ~adj[v], size + 1)
        search(p & ~(1 << v), size)

    search((1 << n) - 1, 0)
    return best


def iter_stable_sets(adj: Sequence[int]) -> Iterator[int]:
    """Every stable set once, as an index bitmask."""

    def walk(p: int, chosen: int) -> Iterator[int]:
        if p == 0:
            yield chosen
            return
        v = _lowest(p)
        rest = p & ~(1 << v)
        yield from walk(rest, chosen)
        yield from walk(rest & ~adj[v], chosen | (1 << v))

    yield from walk((1 << len(adj)) - 1, 0)


def brute_count_stable_sets(g: RegularGraph) -> int:
    if g.N > MAX_COUNT_N:
        raise TooLarge(f"stable-set counting capped at N <= {MAX_COUNT_N}, got {g.N}")
    return count_stable_sets(g.adjacency_masks)


def brute_max_stable_set(g: RegularGraph) -> int:
    if g.N > MAX_STABLE_N:
        raise TooLarge(f"maximum stable set capped at N <= {MAX_STABLE_N}, got {g.N}")
    return max_stable_set(g.adjacency_masks)


def is_stable(g: RegularGraph, indices: Sequence[int]) -> bool:
    chosen = 0
    for i in indices:
        chosen |= 1 << i
    return all(not (g.adjacency_masks[i] & chosen) for i in indices)


def edge_count(g: RegularGraph, indices: Sequence[int]) -> int:
    """Number of edges of ``g`` with both ends in ``indices``."""
    chosen = 0
    for i in indices:
        chosen |= 1 << i
    return sum((g.adjacency_masks[i] & chosen).bit_count() for i in set(indices)) // 2
