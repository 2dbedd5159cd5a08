from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flatcover import graphs
from flatcover.errors import TooLarge


def brute_stable(adj):
    n = len(adj)
    count, best = 0, 0
    for mask in range(1 << n):
        if all(not (adj[i] & mask) for i in range(n) if (mask >> i) & 1):
            count += 1
            best = max(best, bin(mask).count("1"))
    return count, best


def test_factories_are_regular():
    for g, d, lam in [
        (graphs.cycle(4), 2, 2),
        (graphs.cycle(7), 2, 2),
        (graphs.complete(5), 4, 1),
        (graphs.complete_bipartite(3), 3, 3),
        (graphs.hypercube(3), 3, 3),
        (graphs.petersen(), 3, 2),
    ]:
        assert g.d == d and g.lam == Fraction(lam)
        for i in range(g.N):
            assert len(set(g.neighbor_indices(i))) == d


def test_irregular_rejected():
    with pytest.raises(ValueError):
        graphs.AdjacencyGraph([[1], [0, 2], [1]], 1)


def test_known_counts():
    # i(C_n) is a Lucas number, i(K_n) = n + 1, Petersen has 76 stable sets and alpha 4
    assert graphs.count_stable_sets(graphs.cycle(4).adjacency_masks) == 7
    assert graphs.count_stable_sets(graphs.cycle(10).adjacency_masks) == 123
    assert graphs.count_stable_sets(graphs.complete(6).adjacency_masks) == 7
    assert graphs.count_stable_sets(graphs.petersen().adjacency_masks) == 76
    assert graphs.max_stable_set(graphs.petersen().adjacency_masks) == 4
    assert graphs.max_stable_set(graphs.hypercube(4).adjacency_masks) == 8


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=30))))
def test_oracles_agree_with_enumeration(spec):
    n, edges = spec
    adj = [0] * n
    for a, b in edges:
        if a != b:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    count, best = brute_stable(adj)
    assert graphs.count_stable_sets(adj) == count
    assert graphs.max_stable_set(adj) == best
    listed = list(graphs.iter_stable_sets(adj))
    assert len(listed) == len(set(listed)) == count


def test_edge_count_and_is_stable():
    g = graphs.cycle(4)
    assert graphs.edge_count(g, [0, 1, 2, 3]) == 4
    assert graphs.edge_count(g, [0, 2]) == 0
    assert graphs.is_stable(g, [0, 2]) and not graphs.is_stable(g, [0, 1])
    for a, b in combinations(range(4), 2):
        assert graphs.edge_count(g, [a, b]) == (abs(a - b) in (1, 3))


def test_caps():
    big = graphs.cycle(graphs.MAX_COUNT_N + 1)
    with pytest.raises(TooLarge):
        graphs.brute_count_stable_sets(big)
    with pytest.raises(TooLarge):
        graphs.brute_max_stable_set(graphs.cycle(graphs.MAX_STABLE_N + 1))
